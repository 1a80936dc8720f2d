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

#include "a11y/kernels.hpp"

namespace a11y::kernels {
namespace {

inline std::uint8_t blend_over_white(unsigned c, unsigned a) {
  // Round-half-up divide by 255; numerator stays below 2^16 + 127.
  return static_cast<std::uint8_t>((c * a + (255 - a) * 255 + 127) / 255);
}

void composite_scalar(const std::uint8_t* in, std::size_t count,
                      std::uint8_t* out) {
  for (std::size_t i = 0; i < count; ++i) {
    unsigned a = in[i * 4 + 3];
    out[i * 4 + 0] = blend_over_white(in[i * 4 + 0], a);
    out[i * 4 + 1] = blend_over_white(in[i * 4 + 1], a);
    out[i * 4 + 2] = blend_over_white(in[i * 4 + 2], a);
    out[i * 4 + 3] = 255;
  }
}

std::pair<std::uint64_t, std::uint64_t> minmax_scalar(const std::uint8_t* px,
                                                      std::size_t count) {
  std::uint64_t lo = ~std::uint64_t{0};
  std::uint64_t hi = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t key =
        pixel_sort_key(px[i * 4 + 0], px[i * 4 + 1], px[i * 4 + 2]);
    if (key < lo) lo = key;
    if (key > hi) hi = key;
  }
  return {lo, hi};
}

ClusterAccum assign_scalar(const std::uint8_t* px, std::size_t count,
                           const int c0[3], const int c1[3]) {
  ClusterAccum acc;
  for (std::size_t i = 0; i < count; ++i) {
    int r = px[i * 4 + 0];
    int g = px[i * 4 + 1];
    int b = px[i * 4 + 2];
    int dr0 = r - c0[0], dg0 = g - c0[1], db0 = b - c0[2];
    int dr1 = r - c1[0], dg1 = g - c1[1], db1 = b - c1[2];
    int d0 = dr0 * dr0 + dg0 * dg0 + db0 * db0;
    int d1 = dr1 * dr1 + dg1 * dg1 + db1 * db1;
    int which = d1 < d0 ? 1 : 0;  // tie keeps cluster 0
    acc.sum[which][0] += r;
    acc.sum[which][1] += g;
    acc.sum[which][2] += b;
    acc.count[which] += 1;
  }
  return acc;
}

}  // namespace

std::uint64_t pixel_sort_key(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  std::uint64_t luma = 299u * r + 587u * g + 114u * b;
  return (luma << 24) | (std::uint64_t{r} << 16) | (std::uint64_t{g} << 8) |
         std::uint64_t{b};
}

namespace detail {

const Ops scalar_ops = {
    composite_scalar,
    minmax_scalar,
    assign_scalar,
};

}  // namespace detail
}  // namespace a11y::kernels
