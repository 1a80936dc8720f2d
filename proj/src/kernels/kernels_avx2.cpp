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

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "a11y/kernels.hpp"

// Eight pixels per iteration throughout; scalar tails reuse the same
// arithmetic so results stay bit-identical to the reference kernels.

namespace a11y::kernels {
namespace {

inline std::uint8_t blend_over_white(unsigned c, unsigned a) {
  return static_cast<std::uint8_t>((c * a + (255 - a) * 255 + 127) / 255);
}

// Four RGBA pixels as sixteen u16 lanes -> blended, alpha lane forced to 255.
inline __m256i blend4(__m256i px) {
  const __m256i k255 = _mm256_set1_epi16(255);
  const __m256i k127 = _mm256_set1_epi16(127);
  const __m256i k1 = _mm256_set1_epi16(1);
  // Broadcast each pixel's alpha (word 3 of its quad) across the quad.
  __m256i a = _mm256_shufflelo_epi16(px, _MM_SHUFFLE(3, 3, 3, 3));
  a = _mm256_shufflehi_epi16(a, _MM_SHUFFLE(3, 3, 3, 3));
  __m256i t = _mm256_mullo_epi16(px, a);
  __m256i w = _mm256_mullo_epi16(_mm256_sub_epi16(k255, a), k255);
  __m256i x = _mm256_add_epi16(_mm256_add_epi16(t, w), k127);
  // Exact x/255 for x < 65790: (x + 1 + (x >> 8)) >> 8.
  __m256i q = _mm256_srli_epi16(
      _mm256_add_epi16(_mm256_add_epi16(x, k1), _mm256_srli_epi16(x, 8)), 8);
  // Word lanes 3 and 7 of each 128-bit half are alpha; pin them to 255.
  return _mm256_blend_epi16(q, k255, 0x88);
}

void composite_avx2(const std::uint8_t* in, std::size_t count,
                    std::uint8_t* out) {
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in + i * 4));
    __m256i lo = _mm256_cvtepu8_epi16(_mm256_castsi256_si128(v));
    __m256i hi = _mm256_cvtepu8_epi16(_mm256_extracti128_si256(v, 1));
    __m256i packed = _mm256_packus_epi16(blend4(lo), blend4(hi));
    packed = _mm256_permute4x64_epi64(packed, 0xD8);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i * 4), packed);
  }
  for (; i < count; ++i) {
    unsigned a = in[i * 4 + 3];
    out[i * 4 + 0] = blend_over_white(in[i * 4 + 0], a);
    out[i * 4 + 1] = blend_over_white(in[i * 4 + 1], a);
    out[i * 4 + 2] = blend_over_white(in[i * 4 + 2], a);
    out[i * 4 + 3] = 255;
  }
}

struct Channels {
  __m256i r, g, b;
};

inline Channels split_channels(__m256i v) {
  const __m256i mask = _mm256_set1_epi32(0xFF);
  Channels ch;
  ch.r = _mm256_and_si256(v, mask);
  ch.g = _mm256_and_si256(_mm256_srli_epi32(v, 8), mask);
  ch.b = _mm256_and_si256(_mm256_srli_epi32(v, 16), mask);
  return ch;
}

inline __m256i min_epi64x(__m256i a, __m256i b) {
  // Keys fit in 42 bits, so the signed compare is an unsigned compare too.
  return _mm256_blendv_epi8(a, b, _mm256_cmpgt_epi64(a, b));
}

inline __m256i max_epi64x(__m256i a, __m256i b) {
  return _mm256_blendv_epi8(b, a, _mm256_cmpgt_epi64(a, b));
}

std::pair<std::uint64_t, std::uint64_t> minmax_avx2(const std::uint8_t* px,
                                                    std::size_t count) {
  std::uint64_t lo = ~std::uint64_t{0};
  std::uint64_t hi = 0;
  std::size_t i = 0;
  if (count >= 8) {
    __m256i vmin = _mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL);
    __m256i vmax = _mm256_setzero_si256();
    const __m256i k299 = _mm256_set1_epi32(299);
    const __m256i k587 = _mm256_set1_epi32(587);
    const __m256i k114 = _mm256_set1_epi32(114);
    const __m256i kff = _mm256_set1_epi32(0xFF);
    for (; i + 8 <= count; i += 8) {
      __m256i v =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(px + i * 4));
      Channels ch = split_channels(v);
      __m256i luma = _mm256_add_epi32(
          _mm256_add_epi32(_mm256_mullo_epi32(ch.r, k299),
                           _mm256_mullo_epi32(ch.g, k587)),
          _mm256_mullo_epi32(ch.b, k114));
      __m256i rgb24 = _mm256_or_si256(
          _mm256_or_si256(_mm256_slli_epi32(ch.r, 16),
                          _mm256_slli_epi32(ch.g, 8)),
          ch.b);
      // 64-bit key = luma << 24 | rgb24, split as a low and high 32-bit part.
      __m256i key_lo = _mm256_or_si256(
          rgb24, _mm256_slli_epi32(_mm256_and_si256(luma, kff), 24));
      __m256i key_hi = _mm256_srli_epi32(luma, 8);
      __m256i ka = _mm256_unpacklo_epi32(key_lo, key_hi);
      __m256i kb = _mm256_unpackhi_epi32(key_lo, key_hi);
      vmin = min_epi64x(vmin, min_epi64x(ka, kb));
      vmax = max_epi64x(vmax, max_epi64x(ka, kb));
    }
    alignas(32) std::uint64_t mins[4];
    alignas(32) std::uint64_t maxs[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(mins), vmin);
    _mm256_store_si256(reinterpret_cast<__m256i*>(maxs), vmax);
    for (int k = 0; k < 4; ++k) {
      if (mins[k] < lo) lo = mins[k];
      if (maxs[k] > hi) hi = maxs[k];
    }
  }
  for (; i < count; ++i) {
    std::uint64_t key =
        pixel_sort_key(px[i * 4 + 0], px[i * 4 + 1], px[i * 4 + 2]);
    if (key < lo) lo = key;
    if (key > hi) hi = key;
  }
  return {lo, hi};
}

inline std::int64_t hsum_epi32(__m256i v) {
  alignas(32) std::int32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  std::int64_t total = 0;
  for (int k = 0; k < 8; ++k) total += lanes[k];
  return total;
}

ClusterAccum assign_avx2(const std::uint8_t* px, std::size_t count,
                         const int c0[3], const int c1[3]) {
  ClusterAccum acc;
  std::size_t i = 0;
  const __m256i c0r = _mm256_set1_epi32(c0[0]);
  const __m256i c0g = _mm256_set1_epi32(c0[1]);
  const __m256i c0b = _mm256_set1_epi32(c0[2]);
  const __m256i c1r = _mm256_set1_epi32(c1[0]);
  const __m256i c1g = _mm256_set1_epi32(c1[1]);
  const __m256i c1b = _mm256_set1_epi32(c1[2]);
  // 32-bit channel accumulators; each lane grows by at most 255 per
  // iteration, so flushing every 4096 iterations leaves ample headroom.
  __m256i s0r, s0g, s0b, s1r, s1g, s1b;
  s0r = s0g = s0b = s1r = s1g = s1b = _mm256_setzero_si256();
  std::size_t block = 0;
  auto flush = [&]() {
    acc.sum[0][0] += hsum_epi32(s0r);
    acc.sum[0][1] += hsum_epi32(s0g);
    acc.sum[0][2] += hsum_epi32(s0b);
    acc.sum[1][0] += hsum_epi32(s1r);
    acc.sum[1][1] += hsum_epi32(s1g);
    acc.sum[1][2] += hsum_epi32(s1b);
    s0r = s0g = s0b = s1r = s1g = s1b = _mm256_setzero_si256();
    block = 0;
  };
  for (; i + 8 <= count; i += 8) {
    __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(px + i * 4));
    Channels ch = split_channels(v);
    __m256i dr0 = _mm256_sub_epi32(ch.r, c0r);
    __m256i dg0 = _mm256_sub_epi32(ch.g, c0g);
    __m256i db0 = _mm256_sub_epi32(ch.b, c0b);
    __m256i dr1 = _mm256_sub_epi32(ch.r, c1r);
    __m256i dg1 = _mm256_sub_epi32(ch.g, c1g);
    __m256i db1 = _mm256_sub_epi32(ch.b, c1b);
    __m256i d0 = _mm256_add_epi32(
        _mm256_add_epi32(_mm256_mullo_epi32(dr0, dr0),
                         _mm256_mullo_epi32(dg0, dg0)),
        _mm256_mullo_epi32(db0, db0));
    __m256i d1 = _mm256_add_epi32(
        _mm256_add_epi32(_mm256_mullo_epi32(dr1, dr1),
                         _mm256_mullo_epi32(dg1, dg1)),
        _mm256_mullo_epi32(db1, db1));
    // Cluster 1 wins only on strictly smaller distance.
    __m256i take1 = _mm256_cmpgt_epi32(d0, d1);
    int mask = _mm256_movemask_ps(_mm256_castsi256_ps(take1));
    acc.count[1] += __builtin_popcount(static_cast<unsigned>(mask));
    acc.count[0] += 8 - __builtin_popcount(static_cast<unsigned>(mask));
    s1r = _mm256_add_epi32(s1r, _mm256_and_si256(ch.r, take1));
    s1g = _mm256_add_epi32(s1g, _mm256_and_si256(ch.g, take1));
    s1b = _mm256_add_epi32(s1b, _mm256_and_si256(ch.b, take1));
    s0r = _mm256_add_epi32(s0r, _mm256_andnot_si256(take1, ch.r));
    s0g = _mm256_add_epi32(s0g, _mm256_andnot_si256(take1, ch.g));
    s0b = _mm256_add_epi32(s0b, _mm256_andnot_si256(take1, ch.b));
    if (++block == 4096) flush();
  }
  flush();
  for (; i < count; ++i) {
    int r = px[i * 4 + 0];
    int g = px[i * 4 + 1];
    int b = px[i * 4 + 2];
    int dr0 = r - c0[0], dg0 = g - c0[1], db0 = b - c0[2];
    int dr1 = r - c1[0], dg1 = g - c1[1], db1 = b - c1[2];
    int d0 = dr0 * dr0 + dg0 * dg0 + db0 * db0;
    int d1 = dr1 * dr1 + dg1 * dg1 + db1 * db1;
    int which = d1 < d0 ? 1 : 0;
    acc.sum[which][0] += r;
    acc.sum[which][1] += g;
    acc.sum[which][2] += b;
    acc.count[which] += 1;
  }
  return acc;
}

}  // namespace

namespace detail {

const Ops avx2_ops = {
    composite_avx2,
    minmax_avx2,
    assign_avx2,
};

}  // namespace detail
}  // namespace a11y::kernels

#endif  // x86_64
