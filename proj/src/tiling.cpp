#include "shiftforge/tiling.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "shiftforge/errors.hpp"

namespace shiftforge {

namespace {

Coord floor_div(Coord a, Coord b) {
  Coord q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Coord floor_mod(Coord a, Coord b) { return a - floor_div(a, b) * b; }

FiniteSet normalized(const FiniteSet& s) { return translate(s, -s.min_corner()); }

}  // namespace

std::vector<std::string> ShapeSystem::violations(const std::vector<FiniteSet>& shapes) {
  std::vector<std::string> out;
  if (shapes.empty()) out.push_back("the shape list is empty");
  int dim = 0;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto& s = shapes[i];
    const std::string name = "shape " + std::to_string(i);
    if (s.empty()) {
      out.push_back(name + " is empty");
      continue;
    }
    if (dim == 0) dim = s.dim();
    if (s.dim() != dim) out.push_back(name + " has dimension " + std::to_string(s.dim()) + ", expected " + std::to_string(dim));
    if (!s.contains(Site::origin(s.dim()))) out.push_back(name + " does not contain the origin");
    for (std::size_t j = 0; j < i; ++j) {
      if (shapes[j].empty() || shapes[j].dim() != s.dim()) continue;
      if (normalized(shapes[j]) == normalized(s))
        out.push_back(name + " is a translate of shape " + std::to_string(j));
    }
  }
  return out;
}

ShapeSystem::ShapeSystem(std::vector<FiniteSet> shapes) : shapes_(std::move(shapes)) {
  const auto v = violations(shapes_);
  if (!v.empty()) throw InputError("invalid shape system: " + v.front());
  for (const auto& s : shapes_) offsets_.push_back(offsets_.back() + s.size());
  if (offsets_.back() > 65535) throw InputError("encoding alphabet too large");
}

FiniteSet ShapeSystem::union_shape() const {
  FiniteSet u(dim());
  for (const auto& s : shapes_) u = set_union(u, s);
  return u;
}

Symbol ShapeSystem::symbol(std::size_t shape, const Site& offset) const {
  if (shape >= shapes_.size()) throw PreconditionError("shape index out of range");
  auto i = shapes_[shape].index_of(offset);
  if (!i) throw PreconditionError("offset " + to_string(offset) + " is not in shape " + std::to_string(shape));
  return static_cast<Symbol>(offsets_[shape] + *i);
}

std::vector<TilingSymbol> encoding_alphabet(const ShapeSystem& s) {
  std::vector<TilingSymbol> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (const auto& o : s[i]) out.push_back({i, o});
  return out;
}

Alphabet encoding_tokens(const ShapeSystem& s) {
  std::vector<std::string> t;
  for (const auto& sym : encoding_alphabet(s)) t.push_back(std::to_string(sym.shape) + ":" + to_string(sym.offset));
  return Alphabet(std::move(t));
}

FiniteSet tile_cells(const ShapeSystem& s, const Tile& t) { return translate(s[t.shape], t.center); }

PeriodicTiling::PeriodicTiling(ShapeSystem shapes, std::vector<Site> lattice, std::vector<Tile> tiles)
    : shapes_(std::move(shapes)), lattice_(std::move(lattice)), tiles_(std::move(tiles)) {
  const int d = shapes_.dim();
  if (static_cast<int>(lattice_.size()) != d) throw InputError("lattice needs exactly one vector per dimension");
  for (const auto& v : lattice_)
    if (v.dim != d) throw DimensionMismatch("lattice vector dimension differs from the shapes");
  if (d == 1) {
    p_ = lattice_[0].c[0] < 0 ? -lattice_[0].c[0] : lattice_[0].c[0];
    if (p_ == 0) throw InputError("lattice is degenerate");
  } else {
    std::array<Coord, 2> r1{lattice_[0].c[0], lattice_[0].c[1]}, r2{lattice_[1].c[0], lattice_[1].c[1]};
    while (r2[0] != 0) {
      const Coord t = r1[0] / r2[0];
      r1[0] -= t * r2[0];
      r1[1] -= t * r2[1];
      std::swap(r1, r2);
    }
    if (r1[0] < 0) r1 = {-r1[0], -r1[1]};
    p_ = r1[0];
    c_ = r2[1] < 0 ? -r2[1] : r2[1];
    if (p_ == 0 || c_ == 0) throw InputError("lattice is degenerate");
    q_ = floor_mod(r1[1], c_);
  }
  const std::size_t vol = static_cast<std::size_t>(p_ * c_);
  if (vol > 10'000'000) throw CapExceeded("lattice covolume too large");
  residue_tile_.assign(vol, {SIZE_MAX, Site::origin(d)});
  for (std::size_t ti = 0; ti < tiles_.size(); ++ti) {
    const auto& t = tiles_[ti];
    if (t.shape >= shapes_.size()) throw InputError("tile refers to a missing shape");
    if (t.center.dim != d) throw DimensionMismatch("tile center dimension differs from the shapes");
    for (const auto& s : shapes_[t.shape]) {
      auto& slot = residue_tile_[residue_index(s + t.center)];
      if (slot.first != SIZE_MAX) throw InputError("tiles overlap modulo the lattice at " + to_string(s + t.center));
      slot = {ti, s};
    }
  }
  for (const auto& slot : residue_tile_)
    if (slot.first == SIZE_MAX) throw InputError("tiles do not cover a fundamental domain of the lattice");
}

PeriodicTiling PeriodicTiling::box(int dim, Coord side) {
  if (side <= 0) throw PreconditionError("box side must be positive");
  ShapeSystem s({FiniteSet::cube(dim, 0, side)});
  std::vector<Site> lattice;
  if (dim == 1) {
    lattice.push_back(Site::of(side));
  } else {
    lattice = {Site::of(side, 0), Site::of(0, side)};
  }
  return PeriodicTiling(std::move(s), std::move(lattice), {Tile{0, Site::origin(dim)}});
}

std::size_t PeriodicTiling::residue_index(const Site& g) const {
  if (g.dim == 1) return static_cast<std::size_t>(floor_mod(g.c[0], p_));
  const Coord k = floor_div(g.c[0], p_);
  const Coord x = g.c[0] - k * p_;
  const Coord y = floor_mod(g.c[1] - k * q_, c_);
  return static_cast<std::size_t>(x * c_ + y);
}

std::vector<Site> PeriodicTiling::residues() const {
  std::vector<Site> out;
  if (dim() == 1) {
    for (Coord x = 0; x < p_; ++x) out.push_back(Site::of(x));
  } else {
    for (Coord x = 0; x < p_; ++x)
      for (Coord y = 0; y < c_; ++y) out.push_back(Site::of(x, y));
  }
  return out;
}

Tile PeriodicTiling::tile_at(const Site& g) const {
  const auto& [ti, s] = residue_tile_[residue_index(g)];
  return Tile{tiles_[ti].shape, g - s};
}

Symbol PeriodicTiling::symbol_at(const Site& g) const {
  const auto& [ti, s] = residue_tile_[residue_index(g)];
  return shapes_.symbol(tiles_[ti].shape, s);
}

PeriodicTiling PeriodicTiling::shifted(const Site& g) const {
  auto tiles = tiles_;
  for (auto& t : tiles) t.center = t.center + g;
  return PeriodicTiling(shapes_, lattice_, std::move(tiles));
}

Pattern encode_tiling(const PeriodicTiling& t, const FiniteSet& f) {
  Word labels;
  labels.reserve(f.size());
  for (const auto& g : f) labels.push_back(t.symbol_at(g));
  return Pattern(f, std::move(labels));
}

std::vector<R1Violation> check_rule_R1(const Pattern& t, const ShapeSystem& s) {
  const auto alpha = encoding_alphabet(s);
  std::vector<R1Violation> out;
  for (std::size_t i = 0; i < t.domain.size(); ++i) {
    const Symbol lab = t.labels[i];
    if (lab >= alpha.size()) throw PreconditionError("label is not an encoding symbol");
    const auto& sym = alpha[lab];
    const Site c = t.domain[i] - sym.offset;
    for (const auto& o : s[sym.shape]) {
      const Site h = c + o;
      auto found = t.find(h);
      if (!found) continue;
      const Symbol expected = s.symbol(sym.shape, o);
      if (*found != expected) out.push_back({h, t.domain[i], expected, *found});
    }
  }
  return out;
}

std::vector<Tile> decode_tiling(const Pattern& t, const ShapeSystem& s) {
  const auto v = check_rule_R1(t, s);
  if (!v.empty())
    throw PreconditionError("pattern violates the tiling rule at " + std::to_string(v.size()) + " place(s), first at " +
                            to_string(v.front().at));
  const auto alpha = encoding_alphabet(s);
  std::vector<Tile> out;
  for (std::size_t i = 0; i < t.domain.size(); ++i) {
    const auto& sym = alpha[t.labels[i]];
    if (sym.offset.is_origin()) out.push_back(Tile{sym.shape, t.domain[i]});
  }
  return out;
}

TileApproximation tile_approximations(const PeriodicTiling& t, const FiniteSet& f) {
  std::set<Tile> seen;
  for (const auto& g : f) seen.insert(t.tile_at(g));
  TileApproximation out;
  std::vector<Site> outer_cells, inner_cells;
  for (const auto& tile : seen) {
    const auto cells = tile_cells(t.shapes(), tile);
    out.outer.push_back(tile);
    outer_cells.insert(outer_cells.end(), cells.begin(), cells.end());
    if (is_subset(cells, f)) {
      out.inner.push_back(tile);
      inner_cells.insert(inner_cells.end(), cells.begin(), cells.end());
    }
  }
  out.outer_cells = FiniteSet(std::move(outer_cells), f.dim());
  out.inner_cells = FiniteSet(std::move(inner_cells), f.dim());
  return out;
}

FiniteSet frame(const PeriodicTiling& t, const FiniteSet& k, const FiniteSet& f) {
  std::vector<Site> cells;
  for (const auto& tile : tile_approximations(t, f).inner) {
    const auto b = boundary(k, tile_cells(t.shapes(), tile));
    cells.insert(cells.end(), b.begin(), b.end());
  }
  return FiniteSet(std::move(cells), f.dim());
}

Alphabet center_tokens(const ShapeSystem& s) {
  std::vector<std::string> t{"0"};
  for (std::size_t i = 0; i < s.size(); ++i) t.push_back("S" + std::to_string(i));
  return Alphabet(std::move(t));
}

Pattern to_center_encoding(const Pattern& t, const ShapeSystem& s) {
  const auto alpha = encoding_alphabet(s);
  Word out;
  for (Symbol lab : t.labels) {
    if (lab >= alpha.size()) throw PreconditionError("label is not an encoding symbol");
    out.push_back(alpha[lab].offset.is_origin() ? static_cast<Symbol>(alpha[lab].shape + 1) : Symbol{0});
  }
  return Pattern(t.domain, std::move(out));
}

Pattern from_center_encoding(const Pattern& c, const ShapeSystem& s) {
  std::map<Site, Symbol> cells;
  for (std::size_t i = 0; i < c.domain.size(); ++i) {
    const Symbol lab = c.labels[i];
    if (lab == 0) continue;
    if (lab > s.size()) throw PreconditionError("label is not a center symbol");
    const std::size_t shape = lab - 1u;
    for (const auto& o : s[shape]) {
      const Site h = c.domain[i] + o;
      if (!c.domain.contains(h)) continue;
      if (!cells.emplace(h, s.symbol(shape, o)).second)
        throw PreconditionError("tiles overlap at " + to_string(h));
    }
  }
  std::vector<Site> dom;
  Word labels;
  for (const auto& [g, sym] : cells) {
    dom.push_back(g);
    labels.push_back(sym);
  }
  return Pattern(FiniteSet(std::move(dom), c.domain.dim()), std::move(labels));
}

std::vector<Word> torus_r1_solutions(const ShapeSystem& s, Coord nx, Coord ny) {
  const int d = s.dim();
  if (d == 1) ny = 1;
  if (nx <= 0 || ny <= 0) throw PreconditionError("torus sides must be positive");
  const std::size_t n = static_cast<std::size_t>(nx * ny);
  const auto alpha = encoding_alphabet(s);
  const std::size_t q = alpha.size();
  auto cell = [&](Coord x, Coord y) { return static_cast<std::size_t>(floor_mod(x, nx) * ny + floor_mod(y, ny)); };
  // For each cell and symbol: the (cell, expected symbol) pairs it predicts.
  std::vector<std::vector<std::vector<std::pair<std::size_t, Symbol>>>> pred(n, std::vector<std::vector<std::pair<std::size_t, Symbol>>>(q));
  for (Coord x = 0; x < nx; ++x)
    for (Coord y = 0; y < ny; ++y)
      for (std::size_t a = 0; a < q; ++a) {
        const auto& sym = alpha[a];
        for (const auto& o : s[sym.shape]) {
          const Site dlt = o - sym.offset;
          pred[cell(x, y)][a].push_back({cell(x + dlt.c[0], y + dlt.c[1]), s.symbol(sym.shape, o)});
        }
      }
  Word lab(n, 0);
  std::vector<Word> out;
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (i == n) {
      out.push_back(lab);
      return;
    }
    for (std::size_t a = 0; a < q; ++a) {
      lab[i] = static_cast<Symbol>(a);
      bool ok = true;
      for (auto [h, e] : pred[i][a])
        if (h <= i && lab[h] != e) {
          ok = false;
          break;
        }
      for (std::size_t h = 0; ok && h < i; ++h)
        for (auto [g, e] : pred[h][lab[h]])
          if (g == i && lab[i] != e) {
            ok = false;
            break;
          }
      if (ok) dfs(i + 1);
    }
  };
  dfs(0);
  return out;
}

SftSpec orbit_sft(const PeriodicTiling& t) {
  const int d = t.dim();
  const auto phases = t.residues();
  auto encodings_on = [&](Coord r) {
    const FiniteSet box = FiniteSet::cube(d, 0, r);
    std::set<Word> enc;
    for (const auto& ph : phases) enc.insert(encode_tiling(t, translate(box, ph)).labels);
    return enc;
  };
  const Coord big = static_cast<Coord>(t.covolume()) + 2;
  const std::size_t distinct = encodings_on(big).size();
  Coord r0 = 1;
  while (encodings_on(r0).size() < distinct) ++r0;
  const Coord r = r0 + 1;
  const auto enc = encodings_on(r);
  return SftSpec(encoding_tokens(t.shapes()), FiniteSet::cube(d, 0, r), std::vector<Word>(enc.begin(), enc.end()));
}

}  // namespace shiftforge
