#include "shiftforge/kernels.hpp"

namespace shiftforge::kernels::scalar {

void bits_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

void bits_and(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

bool bits_any(const std::uint64_t* a, std::size_t n) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc |= a[i];
  return acc != 0;
}

void matvec(const double* a, const double* x, double* y, std::size_t n) {
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = a + r * n;
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) s += row[c] * x[c];
    y[r] = s;
  }
}

}  // namespace shiftforge::kernels::scalar
