#include <atomic>
#include <cstdlib>
#include <cstring>

#include "shiftforge/kernels.hpp"

namespace shiftforge::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("SHIFTFORGE_SIMD"); env && std::strcmp(env, "scalar") == 0)
    return Isa::Scalar;
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool avx2_available() {
#ifdef SHIFTFORGE_HAVE_AVX2_BUILD
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) return;
  current().store(isa, std::memory_order_relaxed);
}

#ifdef SHIFTFORGE_HAVE_AVX2_BUILD
#define SF_DISPATCH(fn, ...) \
  (active_isa() == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define SF_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void bits_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  SF_DISPATCH(bits_or, dst, src, n);
}

void bits_and(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  SF_DISPATCH(bits_and, dst, a, b, n);
}

bool bits_any(const std::uint64_t* a, std::size_t n) { return SF_DISPATCH(bits_any, a, n); }

void matvec(const double* a, const double* x, double* y, std::size_t n) {
  SF_DISPATCH(matvec, a, x, y, n);
}

#undef SF_DISPATCH

}  // namespace shiftforge::kernels
