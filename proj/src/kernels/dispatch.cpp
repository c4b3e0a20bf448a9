#include <atomic>
#include <cstdlib>
#include <string_view>

#include "sife/kernels.hpp"

namespace sife::kernels {

#if defined(SIFE_HAVE_AVX2)
const RowKernels* avx2_table();
#endif

namespace {

std::atomic<const RowKernels*> g_override{nullptr};

const RowKernels& detect() {
  if (const char* env = std::getenv("SIFE_SIMD"); env && std::string_view(env) == "scalar") {
    return scalar();
  }
  if (const RowKernels* k = avx2()) return *k;
  return scalar();
}

}  // namespace

const RowKernels* avx2() {
#if defined(SIFE_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const RowKernels& active() {
  if (const RowKernels* k = g_override.load(std::memory_order_acquire)) return *k;
  static const RowKernels& chosen = detect();
  return chosen;
}

void set_active(const RowKernels* kernels) { g_override.store(kernels, std::memory_order_release); }

}  // namespace sife::kernels
