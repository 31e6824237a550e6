#pragma once

// Random splice instances for the excision property: x and y admissible
// on D = [0, n), agreeing on the KK^-1 boundary of F.

#include <algorithm>
#include <optional>
#include <random>

#include "shiftforge/engine.hpp"
#include "shiftforge/shift_ops.hpp"

namespace splice {

using namespace shiftforge;

// Fills the positions listed in `free` of w (in order) so that every
// window fully inside w is allowed; random symbol order, backtracking.
inline bool fill(Word& w, const std::vector<std::size_t>& free, const SftSpec& x, std::mt19937_64& g,
                 std::size_t at = 0) {
  if (at == free.size()) return true;
  const std::size_t k = x.window().size();
  const std::size_t q = x.alphabet().size();
  std::vector<Symbol> order(q);
  for (std::size_t i = 0; i < q; ++i) order[i] = static_cast<Symbol>(i);
  std::shuffle(order.begin(), order.end(), g);
  const std::size_t pos = free[at];
  for (Symbol s : order) {
    w[pos] = s;
    bool ok = true;
    // windows [i, i + k) containing pos whose sites are all fixed already
    for (std::size_t i = pos + 1 >= k ? pos + 1 - k : 0; i <= pos && ok; ++i) {
      if (i + k > w.size()) break;
      bool fixed = true;
      for (std::size_t j = i; j < i + k && fixed; ++j)
        fixed = std::find(free.begin() + static_cast<std::ptrdiff_t>(at) + 1, free.end(), j) == free.end();
      if (!fixed) continue;
      ok = x.allows(Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + k)));
    }
    if (ok && fill(w, free, x, g, at + 1)) return true;
  }
  return false;
}

struct Instance {
  Pattern x, y;
  FiniteSet f;
};

/// Window must be [0, k). Returns nullopt when sampling fails.
inline std::optional<Instance> sample(const SftSpec& x, std::size_t n, std::mt19937_64& g) {
  const SubshiftHandle h(x);
  const FiniteSet dom = FiniteSet::interval(0, static_cast<Coord>(n));
  const FiniteSet kk = difference_set(x.window());
  const Coord r = static_cast<Coord>(x.window().size()) - 1;
  std::uniform_int_distribution<Coord> pick(r, static_cast<Coord>(n) - 1 - r);
  Coord a = pick(g), b = pick(g);
  if (a > b) std::swap(a, b);
  const FiniteSet f = FiniteSet::interval(a, b + 1);
  for (int attempt = 0; attempt < 50; ++attempt) {
    Word wx(n, 0);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    if (!fill(wx, all, x, g)) return std::nullopt;
    Pattern px(dom, wx);
    if (!admissible_1d(h, px)) continue;
    Word wy = wx;
    std::vector<std::size_t> inner;
    for (const auto& s : interior(kk, f)) inner.push_back(static_cast<std::size_t>(s[0]));
    if (!fill(wy, inner, x, g)) continue;
    Pattern py(dom, wy);
    if (!admissible_1d(h, py)) continue;
    return Instance{px, py, f};
  }
  return std::nullopt;
}

/// A random SFT on window [0, 2) over q symbols with a nonempty essential graph.
inline SftSpec random_sft(std::mt19937_64& g, std::size_t q = 3) {
  while (true) {
    std::vector<Word> allowed;
    for (Symbol a = 0; a < q; ++a)
      for (Symbol b = 0; b < q; ++b)
        if (g() % 100 < 60) allowed.push_back({a, b});
    if (allowed.empty()) continue;
    SftSpec x(Alphabet::numeric(q), FiniteSet::interval(0, 2), allowed);
    if (!TransferGraph(SubshiftHandle(x)).empty()) return x;
  }
}

}  // namespace splice
