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

#ifndef A11Y_XML_HPP_
#define A11Y_XML_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace a11y::xml {

// Minimal non-validating XML reader for view hierarchy dumps and Android
// manifests. Beyond the usual tree it records source byte offsets for every
// attribute value and start tag, which is what makes in-place manifest
// rewrites possible without disturbing any other byte of the file.
//
// Supported: prolog, comments, processing instructions, DOCTYPE (skipped),
// elements, attributes (single or double quoted), character data, CDATA,
// the five predefined entities and numeric character references.

struct ParseError : std::runtime_error {
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " at line " + std::to_string(line) +
                           ", column " + std::to_string(column)),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct Attribute {
  std::string name;
  std::string value;  // entity-decoded
  // Raw source span of the value, excluding the surrounding quotes.
  std::size_t value_begin = 0;
  std::size_t value_end = 0;
};

struct Element {
  std::string name;
  std::vector<Attribute> attributes;
  std::vector<Element> children;
  std::string text;  // concatenated character data, entity-decoded

  std::size_t start_offset = 0;   // byte offset of '<' in the start tag
  std::size_t insert_offset = 0;  // position where a new attribute may go
  bool self_closing = false;

  const Attribute* find_attribute(std::string_view attr_name) const;
  // Attribute value or fallback when absent.
  std::string attribute_or(std::string_view attr_name,
                           std::string_view fallback) const;
  bool has_attribute(std::string_view attr_name) const;
};

struct Document {
  Element root;
};

Document parse(std::string_view source);

// Line/column (1-based) for a byte offset; used for diagnostics raised by
// layers above the parser.
std::pair<std::size_t, std::size_t> line_column(std::string_view source,
                                                std::size_t offset);

std::string escape_attribute(std::string_view value);
std::string escape_text(std::string_view value);

}  // namespace a11y::xml

#endif  // A11Y_XML_HPP_
