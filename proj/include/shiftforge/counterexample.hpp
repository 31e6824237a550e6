#pragma once

// The recursive words w^n (w^1 = 010, w^{n+1} = (w^n)^{T_n} 0^n 1 0^n),
// the symmetric point x*_i = w_{|i|} of their limit, its column lift to
// Z^2 over {0, 1, 1'}, and the periodization argument refuting nonzero
// SFT subsystems of the lift.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shiftforge/shift.hpp"

namespace shiftforge {

class WordSystem {
 public:
  /// T_n = 2n 2^n inv_delta + 1; the default inv_delta is 10.
  explicit WordSystem(std::uint32_t inv_delta = 10, int materialize_cap = 4);

  std::uint32_t inv_delta() const { return inv_delta_; }
  int materialize_cap() const { return cap_; }
  const BigInt& T(int n);
  const BigInt& L(int n);
  /// Number of ones in w^n.
  const BigInt& ones(int n);
  /// Exact frequency of ones in w^n.
  Rational frequency(int n);
  /// The explicit word w^n; refuses above the materialization cap.
  Word word(int n);
  /// The i-th symbol of the limit word, by index descent.
  int omega_at(const BigInt& i);
  int omega_at(std::uint64_t i) { return omega_at(BigInt(i)); }
  /// x*_i = w_{|i|}.
  int x_star(std::int64_t i) { return omega_at(static_cast<std::uint64_t>(i < 0 ? -i : i)); }
  /// Calls emit(bit) for w_0, w_1, ... until it returns false or `limit` bits.
  void scan(std::uint64_t limit, const std::function<bool(int)>& emit);

 private:
  void extend(int n);

  std::uint32_t inv_delta_;
  int cap_;
  std::vector<BigInt> t_, l_, ones_;  // index 0 unused
};

struct P3Occurrence {
  int n = 0;
  std::uint64_t start = 0;   // index of the first symbol of 0^n 1 0^n in w
  std::uint64_t center = 0;  // index of its 1
};

/// First occurrence of 0^n 1 0^n inside x*([-radius, radius]), read in the
/// nonnegative half. Refuses radius < L_{n+1}.
P3Occurrence check_P3_window(WordSystem& ws, int n, const BigInt& radius);

/// Every length-N subword of x*, by a terminating level recursion.
std::set<Word> x_star_subwords(WordSystem& ws, std::size_t n);

/// Lift alphabet: 0, 1, 1' as symbols 0, 1, 2.
Alphabet lift_alphabet();

/// Lift of x* on a box F in Z^2: column i carries x*_i; each one-cell, in
/// canonical order of F, takes 1' where primes[j] is set.
Pattern lift_window(WordSystem& ws, const FiniteSet& f, const std::vector<bool>& primes);
/// Number of one-cells of x* in F.
std::size_t lift_ones(WordSystem& ws, const FiniteSet& f);
/// Distinct lifts of x* on F, by enumeration of all prime choices.
std::uint64_t count_lifts(WordSystem& ws, const FiniteSet& f, std::size_t max_ones = 24);
/// Lift of x* on columns [center - half, center + half] (relabelled to
/// [-half, half]) and rows [0, height), primes drawn from a seeded generator
/// (or all unprimed when seed is empty).
Pattern lifted_column_window(WordSystem& ws, std::int64_t center, std::int64_t half, std::int64_t height,
                             std::optional<std::uint64_t> seed);

struct LiftEntropy {
  std::int64_t radius = 0;
  std::uint64_t ones = 0;        // ones of x* in [-radius, radius]
  std::uint64_t cells = 0;       // |F|
  BigInt log2_count;             // log2 |P(F, lift of x*)| = ones * (2 radius + 1)
  double density = 0.0;          // ones / (2 radius + 1)
  bool above = false;            // log2 count >= 0.1 |F|
};

LiftEntropy lift_entropy(WordSystem& ws, std::int64_t radius);

struct Refutation {
  int n = 0;
  int k = 0;
  Coord column = 0;              // column of ones used
  Coord l1 = 0, l2 = 0;          // rows where the vertical word repeats
  Word repeated;                 // the vertical word, length n
  Pattern rectangle;             // z([c-n, c+n] x [l1, l2))
  Coord row_period = 0;          // 2n + 1
  Coord column_period = 0;       // l2 - l1
  std::size_t blocks_checked = 0;
  bool blocks_occur = false;     // every k x k block of z' occurs in z
  std::optional<Site> missing_block;
  bool rows_periodic = false;
  std::size_t longest_zero_run = 0;  // in rows of pi(z')
  bool forbidden_absent = false;     // 0^{3n} 1 0^{3n} absent from rows of pi(z')
};

/// z is a box pattern over the lift alphabet. Refuses n <= k, windows
/// without a column of ones flanked by n zero columns, and windows too
/// short for the pigeonhole step.
Refutation periodize_and_refute(const Pattern& z, int n, int k);

}  // namespace shiftforge
