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

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace a11y::kernels {
namespace {

std::atomic<const detail::Ops*> g_ops{nullptr};
std::atomic<Backend> g_active{Backend::kScalar};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const detail::Ops* ops_for(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return &detail::scalar_ops;
    case Backend::kAvx2:
#if defined(__x86_64__) || defined(_M_X64)
      if (cpu_has_avx2()) return &detail::avx2_ops;
#endif
      throw std::runtime_error("kernels: AVX2 not available on this CPU");
    case Backend::kAuto:
      break;
  }
  const char* env = std::getenv("A11Y_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return ops_for(Backend::kScalar);
    if (std::strcmp(env, "avx2") == 0) return ops_for(Backend::kAvx2);
  }
  if (cpu_has_avx2()) return ops_for(Backend::kAvx2);
  return &detail::scalar_ops;
}

const detail::Ops* resolve() {
  const detail::Ops* current = g_ops.load(std::memory_order_acquire);
  if (current != nullptr) return current;
  const detail::Ops* chosen = ops_for(Backend::kAuto);
  g_active.store(chosen == &detail::scalar_ops ? Backend::kScalar
                                               : Backend::kAvx2,
                 std::memory_order_relaxed);
  g_ops.store(chosen, std::memory_order_release);
  return chosen;
}

}  // namespace

void set_backend(Backend backend) {
  const detail::Ops* chosen = ops_for(backend);
  g_active.store(chosen == &detail::scalar_ops ? Backend::kScalar
                                               : Backend::kAvx2,
                 std::memory_order_relaxed);
  g_ops.store(chosen, std::memory_order_release);
}

Backend active_backend() {
  resolve();
  return g_active.load(std::memory_order_relaxed);
}

const char* backend_name(Backend backend) {
  switch (backend) {
    case Backend::kAuto: return "auto";
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
  }
  return "unknown";
}

bool avx2_supported() { return cpu_has_avx2(); }

void composite_over_white(const std::uint8_t* rgba_in, std::size_t count,
                          std::uint8_t* rgbx_out) {
  resolve()->composite_over_white(rgba_in, count, rgbx_out);
}

std::pair<std::uint64_t, std::uint64_t> luma_key_minmax(
    const std::uint8_t* rgbx, std::size_t count) {
  return resolve()->luma_key_minmax(rgbx, count);
}

ClusterAccum assign_two_clusters(const std::uint8_t* rgbx, std::size_t count,
                                 const int centroid0[3],
                                 const int centroid1[3]) {
  return resolve()->assign_two_clusters(rgbx, count, centroid0, centroid1);
}

}  // namespace a11y::kernels
