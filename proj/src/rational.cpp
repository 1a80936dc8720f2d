/*
 * Copyright (C) 2026 The a11yaudit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "a11y/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace a11y {

Rational Rational::parse(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  std::int64_t whole = 0;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    whole = whole * 10 + (text[i] - '0');
    ++i;
    ++digits;
  }
  std::int64_t frac = 0;
  std::int64_t scale = 1;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (scale > 100000000000000000LL)
        throw std::invalid_argument("Rational: too many decimal digits");
      frac = frac * 10 + (text[i] - '0');
      scale *= 10;
      ++i;
      ++digits;
    }
  }
  if (digits == 0 || i != text.size())
    throw std::invalid_argument("Rational: malformed number '" + text + "'");
  std::int64_t num = whole * scale + frac;
  if (neg) num = -num;
  return Rational(num, scale);
}

}  // namespace a11y
