#pragma once

// Pattern enumeration and entropy.
//
// In dimension one every count is exact: the subshift is turned into its
// essential transfer graph on words of length M (M covers the window and
// every extra forbidden shape) and patterns on an arbitrary finite F are
// counted by a subset walk along the hull of F. In dimension two the
// count is of m-locally admissible patterns, an upper bound.

#include <cstdint>
#include <vector>

#include "shiftforge/shift.hpp"

namespace shiftforge {

struct EnumerateOptions {
  /// Padding for the local engine; negative selects 2 * diameter(window).
  int margin = -1;
  bool want_list = false;
  std::size_t list_cap = 10'000'000;
  std::uint64_t node_budget = 2'000'000'000ULL;
  /// Optional per-site symbol filter, indexed like F; for images it
  /// applies to the target symbols.
  const std::vector<std::vector<bool>>* site_symbols = nullptr;
};

using SiteSymbols = std::vector<std::vector<bool>>;

struct Enumeration {
  CountResult result;
  /// Labels in the canonical order of F, sorted lexicographically.
  std::vector<Word> patterns;
};

int default_margin(const SubshiftHandle& x);

class TransferGraph {
 public:
  explicit TransferGraph(const SubshiftHandle& x, std::size_t vertex_cap = 4'000'000);

  std::size_t span() const { return span_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const std::vector<Word>& vertices() const { return vertices_; }
  const std::vector<std::vector<std::uint32_t>>& successors() const { return succ_; }

  /// |P(F, X)|, or the number of images under a one-block table.
  BigInt count(const FiniteSet& f, const std::vector<Symbol>* code = nullptr,
               const SiteSymbols* site_symbols = nullptr) const;
  /// The patterns themselves, in lexicographic order; CapExceeded past cap.
  std::vector<Word> list(const FiniteSet& f, const std::vector<Symbol>* code, std::size_t cap,
                         const SiteSymbols* site_symbols = nullptr) const;
  /// Whether p occurs in some point of the subshift.
  bool admissible(const Pattern& p) const;
  /// Natural log of the spectral radius; 0 for the empty subshift.
  double entropy() const;
  /// Entropy of the one-block image, via the subset automaton.
  double image_entropy(const std::vector<Symbol>& code, std::size_t state_cap = 400'000) const;

 private:
  using Bits = std::vector<std::uint64_t>;
  struct BitsHash {
    std::size_t operator()(const Bits& b) const;
  };

  Bits all_bits() const;
  Bits successor_set(const Bits& s) const;
  std::vector<Bits> symbol_masks(const std::vector<Symbol>* code, std::size_t& symbols) const;
  Coord hull_min(const FiniteSet& f) const;

  std::size_t alphabet_size_ = 0;
  std::size_t span_ = 1;
  std::size_t words_ = 0;
  std::vector<Word> vertices_;
  std::vector<std::vector<std::uint32_t>> succ_;
  std::vector<Bits> succ_masks_;
};

/// Spectral radius of a nonnegative weighted digraph given as adjacency
/// lists, maximised over strongly connected components.
double spectral_radius(const std::vector<std::vector<std::pair<std::uint32_t, double>>>& adj);

Enumeration enumerate_patterns(const SubshiftHandle& x, const FiniteSet& f, const EnumerateOptions& opt = {});
/// Window patterns of the one-block image of x.
Enumeration enumerate_image(const SubshiftHandle& x, const BlockCode& code, const FiniteSet& f,
                            const EnumerateOptions& opt = {});
CountResult count_patterns(const SubshiftHandle& x, const FiniteSet& f, const EnumerateOptions& opt = {});
/// (1/|F|) log |P(F, X)|; an upper-bound estimate in dimension two.
double entropy_estimate(const SubshiftHandle& x, const FiniteSet& f, const EnumerateOptions& opt = {});

double entropy_exact_1d(const SubshiftHandle& x);
double entropy_exact_1d_image(const SubshiftHandle& x, const BlockCode& code);

/// Every window translate inside the domain is allowed and no extra
/// forbidden pattern occurs inside it.
bool locally_admissible(const SubshiftHandle& x, const Pattern& p);
/// Exact global admissibility in dimension one.
bool admissible_1d(const SubshiftHandle& x, const Pattern& p);

}  // namespace shiftforge
