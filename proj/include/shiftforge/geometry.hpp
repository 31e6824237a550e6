#pragma once

// Geometry of the groups Z and Z^2: sites, finite sets in canonical order,
// boundaries, interiors and invariance defects.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shiftforge/bigint.hpp"

namespace shiftforge {

using Coord = std::int64_t;

/// An element of Z^d, d in {1, 2}. Unused coordinates are zero.
struct Site {
  int dim = 1;
  std::array<Coord, 2> c{0, 0};

  static Site of(Coord x) { return Site{1, {x, 0}}; }
  static Site of(Coord x, Coord y) { return Site{2, {x, y}}; }
  static Site origin(int dim) { return Site{dim, {0, 0}}; }

  bool is_origin() const { return c[0] == 0 && c[1] == 0; }
  Coord operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  auto operator<=>(const Site&) const = default;
};

Site operator+(const Site& a, const Site& b);
Site operator-(const Site& a, const Site& b);
Site operator-(const Site& a);

std::string to_string(const Site& s);

/// A finite subset of Z^d stored sorted lexicographically without duplicates.
class FiniteSet {
 public:
  FiniteSet() = default;
  /// Empty set of the given dimension.
  explicit FiniteSet(int dim);
  /// Sorts and deduplicates; throws DimensionMismatch on mixed dimensions.
  explicit FiniteSet(std::vector<Site> sites, int dim = 0);

  /// Half-open interval [lo, hi) in Z.
  static FiniteSet interval(Coord lo, Coord hi);
  /// Half-open box [lo, hi) coordinate-wise.
  static FiniteSet box(const Site& lo, const Site& hi);
  /// The cube [lo, hi)^d.
  static FiniteSet cube(int dim, Coord lo, Coord hi);

  int dim() const { return dim_; }
  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  const std::vector<Site>& sites() const { return sites_; }
  const Site& operator[](std::size_t i) const { return sites_[i]; }
  auto begin() const { return sites_.begin(); }
  auto end() const { return sites_.end(); }

  bool contains(const Site& s) const;
  std::optional<std::size_t> index_of(const Site& s) const;

  /// Coordinate-wise minimum and maximum; the set must be nonempty.
  Site min_corner() const;
  Site max_corner() const;

  bool operator==(const FiniteSet& other) const = default;

 private:
  int dim_ = 0;
  std::vector<Site> sites_;
};

std::string to_string(const FiniteSet& s);

// Set algebra. All binary operations require equal dimensions.
FiniteSet translate(const FiniteSet& k, const Site& g);
FiniteSet product_set(const FiniteSet& k, const FiniteSet& f);
FiniteSet inverse(const FiniteSet& k);
/// K K^{-1}, the difference set used for borders throughout.
FiniteSet difference_set(const FiniteSet& k);
FiniteSet set_union(const FiniteSet& a, const FiniteSet& b);
FiniteSet set_intersection(const FiniteSet& a, const FiniteSet& b);
FiniteSet set_difference(const FiniteSet& a, const FiniteSet& b);
FiniteSet symmetric_difference(const FiniteSet& a, const FiniteSet& b);
bool is_subset(const FiniteSet& a, const FiniteSet& b);

/// {f in F : K + f is not contained in F}.
FiniteSet boundary(const FiniteSet& k, const FiniteSet& f);
/// {f in F : K + f is contained in F}.
FiniteSet interior(const FiniteSet& k, const FiniteSet& f);

/// |KF symdiff F| / |F| as an exact rational. Throws on empty F.
Rational invariance_defect(const FiniteSet& k, const FiniteSet& f);

/// Smallest box [lo, hi] containing the set (inclusive hull), as a set.
FiniteSet bounding_box(const FiniteSet& s);

/// Largest coordinate extent minus one; zero for singletons.
Coord diameter(const FiniteSet& s);

struct FolnerWindow {
  FiniteSet box;
  Coord n = 0;
};

/// The box [0, n)^d. Throws PreconditionError for n == 0.
FolnerWindow folner_window(Coord n, int dim);

void require_same_dim(const FiniteSet& a, const FiniteSet& b, const char* what);

}  // namespace shiftforge
