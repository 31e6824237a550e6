// Compiled with -mavx2; only called after a runtime CPU check.
#include "shiftforge/kernels.hpp"

#include <immintrin.h>

namespace shiftforge::kernels::avx2 {

void bits_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(d, s));
  }
  for (; i < n; ++i) dst[i] |= src[i];
}

void bits_and(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(x, y));
  }
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

bool bits_any(const std::uint64_t* a, std::size_t n) {
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; i + 4 <= n; i += 4)
    acc = _mm256_or_si256(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)));
  std::uint64_t tail = 0;
  for (; i < n; ++i) tail |= a[i];
  return tail != 0 || !_mm256_testz_si256(acc, acc);
}

void matvec(const double* a, const double* x, double* y, std::size_t n) {
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = a + r * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= n; c += 4) {
      __m256d m = _mm256_loadu_pd(row + c);
      __m256d v = _mm256_loadu_pd(x + c);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(m, v));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; c < n; ++c) s += row[c] * x[c];
    y[r] = s;
  }
}

}  // namespace shiftforge::kernels::avx2
