#pragma once

// Reference computations for tests. Nothing here calls the engine.

#include <cmath>
#include <random>
#include <vector>

#include "shiftforge/shift.hpp"

namespace oracle {

using shiftforge::BigInt;
using shiftforge::Word;

inline BigInt fib(int n) {
  BigInt a = 0, b = 1;
  for (int i = 0; i < n; ++i) {
    BigInt t = a + b;
    a = b;
    b = t;
  }
  return a;
}

/// Words of length n over q symbols, in lexicographic order.
inline std::vector<Word> all_words(std::size_t q, std::size_t n) {
  std::vector<Word> out;
  Word w(n, 0);
  while (true) {
    out.push_back(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] + 1u == q) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

/// Every length-k window of w is in allowed (1D, window [0, k)).
inline bool locally_ok(const Word& w, const std::vector<Word>& allowed, std::size_t k) {
  if (w.size() < k) return true;
  for (std::size_t i = 0; i + k <= w.size(); ++i) {
    Word sub(w.begin() + i, w.begin() + i + k);
    bool hit = false;
    for (const auto& a : allowed) hit = hit || a == sub;
    if (!hit) return false;
  }
  return true;
}

inline bool golden_ok(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == 1 && w[i + 1] == 1) return false;
  return true;
}

/// Perron root of a nonnegative square matrix by power iteration on M + I
/// (the shift removes oscillation on periodic components).
inline double power_iteration(const std::vector<std::vector<double>>& m0, int iters = 20000) {
  std::size_t n = m0.size();
  auto m = m0;
  for (std::size_t i = 0; i < n; ++i) m[i][i] += 1.0;
  std::vector<double> v(n, 1.0), w(n);
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.0;
      for (std::size_t j = 0; j < n; ++j) w[i] += m[i][j] * v[j];
      norm = std::max(norm, std::abs(w[i]));
    }
    if (norm == 0.0) return 0.0;  // unreachable with the shift
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    lambda = norm;
  }
  return lambda - 1.0;
}

}  // namespace oracle
