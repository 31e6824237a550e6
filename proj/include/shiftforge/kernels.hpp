#pragma once

// Data-parallel inner loops: word-bitset operations and dense mat-vec.
// Each kernel has a scalar reference and an AVX2 variant; the variant is
// chosen once at startup from CPUID. SHIFTFORGE_SIMD=scalar forces the
// reference path.

#include <cstddef>
#include <cstdint>

namespace shiftforge::kernels {

enum class Isa { Scalar, Avx2 };

Isa active_isa();
const char* isa_name(Isa isa);
/// Overrides the dispatch choice. Requesting Avx2 on a CPU without it is
/// ignored. Intended for tests and benchmarks.
void force_isa(Isa isa);
bool avx2_available();

/// dst[i] |= src[i]
void bits_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
/// dst[i] = a[i] & b[i]
void bits_and(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
/// any bit set in a[0..n)
bool bits_any(const std::uint64_t* a, std::size_t n);
/// y = A x, A row-major n by n.
void matvec(const double* a, const double* x, double* y, std::size_t n);

namespace scalar {
void bits_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
void bits_and(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
bool bits_any(const std::uint64_t* a, std::size_t n);
void matvec(const double* a, const double* x, double* y, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SHIFTFORGE_HAVE_AVX2_BUILD 1
namespace avx2 {
void bits_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
void bits_and(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
bool bits_any(const std::uint64_t* a, std::size_t n);
void matvec(const double* a, const double* x, double* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace shiftforge::kernels
