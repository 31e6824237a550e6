#pragma once

// Shape systems, the encoding alphabet of (shape, offset) pairs, periodic
// exact tilings of Z^d, the local consistency rule, tile approximations
// and frames.

#include <string>
#include <vector>

#include "shiftforge/shift.hpp"

namespace shiftforge {

class ShapeSystem {
 public:
  ShapeSystem() = default;
  /// Throws InputError listing the first violation.
  explicit ShapeSystem(std::vector<FiniteSet> shapes);

  /// Every problem with a candidate shape list, in plain words.
  static std::vector<std::string> violations(const std::vector<FiniteSet>& shapes);

  const std::vector<FiniteSet>& shapes() const { return shapes_; }
  std::size_t size() const { return shapes_.size(); }
  const FiniteSet& operator[](std::size_t i) const { return shapes_[i]; }
  int dim() const { return shapes_.empty() ? 0 : shapes_[0].dim(); }
  /// Union of all shapes.
  FiniteSet union_shape() const;
  /// Number of encoding symbols, the sum of the shape sizes.
  std::size_t symbol_count() const { return offsets_.back(); }
  /// Symbol index of (shape, offset).
  Symbol symbol(std::size_t shape, const Site& offset) const;

 private:
  std::vector<FiniteSet> shapes_;
  std::vector<std::size_t> offsets_{0};
};

struct TilingSymbol {
  std::size_t shape = 0;
  Site offset;
  bool operator==(const TilingSymbol&) const = default;
};

/// All (shape, offset) pairs, shapes in order, offsets canonical.
std::vector<TilingSymbol> encoding_alphabet(const ShapeSystem& s);
/// Tokens "i:offset" for the encoding alphabet.
Alphabet encoding_tokens(const ShapeSystem& s);

struct Tile {
  std::size_t shape = 0;
  Site center;
  auto operator<=>(const Tile&) const = default;
};

FiniteSet tile_cells(const ShapeSystem& s, const Tile& t);

/// An exact tiling of Z^d invariant under a full-rank lattice.
class PeriodicTiling {
 public:
  PeriodicTiling() = default;
  /// Tiles cover one fundamental domain of the lattice exactly once
  /// modulo the lattice; throws InputError otherwise.
  PeriodicTiling(ShapeSystem shapes, std::vector<Site> lattice, std::vector<Tile> tiles);

  /// The box [0,L)^d tiled along (L Z)^d.
  static PeriodicTiling box(int dim, Coord side);

  const ShapeSystem& shapes() const { return shapes_; }
  const std::vector<Site>& lattice() const { return lattice_; }
  const std::vector<Tile>& tiles() const { return tiles_; }
  int dim() const { return shapes_.dim(); }
  /// Index of the lattice, |Z^d / lattice|.
  std::size_t covolume() const { return residue_tile_.size(); }

  Tile tile_at(const Site& g) const;
  Symbol symbol_at(const Site& g) const;
  /// The same tiling moved by g.
  PeriodicTiling shifted(const Site& g) const;
  /// The residue classes as sites of the fundamental domain, in index order.
  std::vector<Site> residues() const;

 private:
  std::size_t residue_index(const Site& g) const;

  ShapeSystem shapes_;
  std::vector<Site> lattice_;
  std::vector<Tile> tiles_;
  // Reduced basis: 1D (p); 2D (p, q), (0, c) with 0 <= q < c.
  Coord p_ = 1, q_ = 0, c_ = 1;
  std::vector<std::pair<std::size_t, Site>> residue_tile_;  // tile index and offset
};

Pattern encode_tiling(const PeriodicTiling& t, const FiniteSet& f);

struct R1Violation {
  Site at;        // site whose label is inconsistent
  Site source;    // site whose label predicts it
  Symbol expected = 0;
  Symbol found = 0;
};

std::vector<R1Violation> check_rule_R1(const Pattern& t, const ShapeSystem& s);
/// Tiles with their center inside the domain. Throws on violations.
std::vector<Tile> decode_tiling(const Pattern& t, const ShapeSystem& s);

struct TileApproximation {
  std::vector<Tile> outer;
  std::vector<Tile> inner;
  FiniteSet outer_cells;
  FiniteSet inner_cells;
};

TileApproximation tile_approximations(const PeriodicTiling& t, const FiniteSet& f);
/// Union of the k-boundaries of the tiles inside F.
FiniteSet frame(const PeriodicTiling& t, const FiniteSet& k, const FiniteSet& f);

/// Alphabet {0, S0, S1, ...} of the center encoding.
Alphabet center_tokens(const ShapeSystem& s);
/// (S, offset) encoding to center encoding.
Pattern to_center_encoding(const Pattern& t, const ShapeSystem& s);
/// Center encoding back to (S, offset) on the sites covered by tiles
/// whose centers lie in the domain.
Pattern from_center_encoding(const Pattern& c, const ShapeSystem& s);

/// All labellings of the nx by ny torus (nx only in 1D) satisfying the
/// local rule everywhere, in lexicographic order of the cell labels.
std::vector<Word> torus_r1_solutions(const ShapeSystem& s, Coord nx, Coord ny);

/// The orbit of the tiling as an SFT over the encoding alphabet: the
/// window is the smallest box [0,r)^d (r >= 2) on which distinct phases
/// have distinct encodings.
SftSpec orbit_sft(const PeriodicTiling& t);

}  // namespace shiftforge
