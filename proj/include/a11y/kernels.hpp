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

#ifndef A11Y_KERNELS_HPP_
#define A11Y_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <utility>

namespace a11y::kernels {

// Pixel loops behind region color sampling. Every kernel is defined in pure
// integer arithmetic with rounding fixed by contract, so the vector variants
// must produce bit-identical results to the scalar references; the test suite
// enforces that on random buffers. Backend selection happens once at runtime.

enum class Backend {
  kAuto,    // pick the widest lane the CPU supports
  kScalar,
  kAvx2,
};

// Overrides the backend. kAuto consults the CPU (and the A11Y_KERNELS
// environment variable: "scalar" or "avx2"). Throws std::runtime_error if a
// forced backend is unavailable on this machine.
void set_backend(Backend backend);
Backend active_backend();
const char* backend_name(Backend backend);
bool avx2_supported();

// Alpha-composites straight RGBA pixels over opaque white:
//   out_c = (c * a + (255 - a) * 255 + 127) / 255   (integer division)
// Output is RGBX, 4 bytes per pixel with the fourth byte forced to 255.
// in and out may not alias. count is in pixels.
void composite_over_white(const std::uint8_t* rgba_in, std::size_t count,
                          std::uint8_t* rgbx_out);

// 40-bit sort key for an RGBX pixel: (luma1000 << 24) | (r << 16) | (g << 8)
// | b with luma1000 = 299r + 587g + 114b. The RGB tail makes the ordering
// total, so min/max do not depend on pixel order.
std::uint64_t pixel_sort_key(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Returns {min_key, max_key} over an RGBX buffer. count must be >= 1.
std::pair<std::uint64_t, std::uint64_t> luma_key_minmax(
    const std::uint8_t* rgbx, std::size_t count);

struct ClusterAccum {
  std::int64_t sum[2][3] = {{0, 0, 0}, {0, 0, 0}};
  std::int64_t count[2] = {0, 0};
};

// One 2-means pass over an RGBX buffer: assigns each pixel to the centroid
// with the smaller squared RGB distance (ties go to centroid 0) and
// accumulates per-cluster channel sums and counts.
ClusterAccum assign_two_clusters(const std::uint8_t* rgbx, std::size_t count,
                                 const int centroid0[3],
                                 const int centroid1[3]);

namespace detail {

struct Ops {
  void (*composite_over_white)(const std::uint8_t*, std::size_t,
                               std::uint8_t*);
  std::pair<std::uint64_t, std::uint64_t> (*luma_key_minmax)(
      const std::uint8_t*, std::size_t);
  ClusterAccum (*assign_two_clusters)(const std::uint8_t*, std::size_t,
                                      const int[3], const int[3]);
};

extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const Ops avx2_ops;
#endif

}  // namespace detail

}  // namespace a11y::kernels

#endif  // A11Y_KERNELS_HPP_
