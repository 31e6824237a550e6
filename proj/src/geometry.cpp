#include "shiftforge/geometry.hpp"

#include <algorithm>

#include "shiftforge/errors.hpp"

namespace shiftforge {

Site operator+(const Site& a, const Site& b) {
  if (a.dim != b.dim) throw DimensionMismatch("site dimensions differ");
  return Site{a.dim, {a.c[0] + b.c[0], a.c[1] + b.c[1]}};
}

Site operator-(const Site& a, const Site& b) {
  if (a.dim != b.dim) throw DimensionMismatch("site dimensions differ");
  return Site{a.dim, {a.c[0] - b.c[0], a.c[1] - b.c[1]}};
}

Site operator-(const Site& a) { return Site{a.dim, {-a.c[0], -a.c[1]}}; }

std::string to_string(const Site& s) {
  if (s.dim == 1) return std::to_string(s.c[0]);
  return "(" + std::to_string(s.c[0]) + "," + std::to_string(s.c[1]) + ")";
}

FiniteSet::FiniteSet(int dim) : dim_(dim) {}

FiniteSet::FiniteSet(std::vector<Site> sites, int dim) : dim_(dim), sites_(std::move(sites)) {
  for (const auto& s : sites_) {
    if (s.dim != 1 && s.dim != 2) throw InputError("sites must have dimension 1 or 2");
    if (dim_ == 0) dim_ = s.dim;
    if (s.dim != dim_) throw DimensionMismatch("finite set mixes site dimensions");
  }
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
}

FiniteSet FiniteSet::interval(Coord lo, Coord hi) {
  std::vector<Site> out;
  for (Coord x = lo; x < hi; ++x) out.push_back(Site::of(x));
  return FiniteSet(std::move(out), 1);
}

FiniteSet FiniteSet::box(const Site& lo, const Site& hi) {
  if (lo.dim != hi.dim) throw DimensionMismatch("box corners differ in dimension");
  std::vector<Site> out;
  if (lo.dim == 1) return interval(lo.c[0], hi.c[0]);
  for (Coord x = lo.c[0]; x < hi.c[0]; ++x)
    for (Coord y = lo.c[1]; y < hi.c[1]; ++y) out.push_back(Site::of(x, y));
  return FiniteSet(std::move(out), 2);
}

FiniteSet FiniteSet::cube(int dim, Coord lo, Coord hi) {
  if (dim == 1) return interval(lo, hi);
  return box(Site::of(lo, lo), Site::of(hi, hi));
}

bool FiniteSet::contains(const Site& s) const {
  return std::binary_search(sites_.begin(), sites_.end(), s);
}

std::optional<std::size_t> FiniteSet::index_of(const Site& s) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), s);
  if (it == sites_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - sites_.begin());
}

Site FiniteSet::min_corner() const {
  if (sites_.empty()) throw PreconditionError("min_corner of an empty set");
  Site m = sites_.front();
  for (const auto& s : sites_) {
    m.c[0] = std::min(m.c[0], s.c[0]);
    m.c[1] = std::min(m.c[1], s.c[1]);
  }
  return m;
}

Site FiniteSet::max_corner() const {
  if (sites_.empty()) throw PreconditionError("max_corner of an empty set");
  Site m = sites_.front();
  for (const auto& s : sites_) {
    m.c[0] = std::max(m.c[0], s.c[0]);
    m.c[1] = std::max(m.c[1], s.c[1]);
  }
  return m;
}

std::string to_string(const FiniteSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += to_string(s[i]);
  }
  return out + "}";
}

void require_same_dim(const FiniteSet& a, const FiniteSet& b, const char* what) {
  if (a.dim() != 0 && b.dim() != 0 && a.dim() != b.dim())
    throw DimensionMismatch(std::string(what) + ": dimension mismatch");
}

namespace {
int common_dim(const FiniteSet& a, const FiniteSet& b) { return a.dim() ? a.dim() : b.dim(); }
}  // namespace

FiniteSet translate(const FiniteSet& k, const Site& g) {
  if (k.dim() != 0 && k.dim() != g.dim) throw DimensionMismatch("translate: dimension mismatch");
  std::vector<Site> out;
  out.reserve(k.size());
  for (const auto& s : k) out.push_back(s + g);
  return FiniteSet(std::move(out), g.dim);
}

FiniteSet product_set(const FiniteSet& k, const FiniteSet& f) {
  require_same_dim(k, f, "product_set");
  std::vector<Site> out;
  out.reserve(k.size() * f.size());
  for (const auto& a : k)
    for (const auto& b : f) out.push_back(a + b);
  return FiniteSet(std::move(out), common_dim(k, f));
}

FiniteSet inverse(const FiniteSet& k) {
  std::vector<Site> out;
  for (const auto& s : k) out.push_back(-s);
  return FiniteSet(std::move(out), k.dim());
}

FiniteSet difference_set(const FiniteSet& k) { return product_set(k, inverse(k)); }

FiniteSet set_union(const FiniteSet& a, const FiniteSet& b) {
  require_same_dim(a, b, "union");
  std::vector<Site> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSet(std::move(out), common_dim(a, b));
}

FiniteSet set_intersection(const FiniteSet& a, const FiniteSet& b) {
  require_same_dim(a, b, "intersection");
  std::vector<Site> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSet(std::move(out), common_dim(a, b));
}

FiniteSet set_difference(const FiniteSet& a, const FiniteSet& b) {
  require_same_dim(a, b, "difference");
  std::vector<Site> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSet(std::move(out), common_dim(a, b));
}

FiniteSet symmetric_difference(const FiniteSet& a, const FiniteSet& b) {
  require_same_dim(a, b, "symmetric difference");
  std::vector<Site> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSet(std::move(out), common_dim(a, b));
}

bool is_subset(const FiniteSet& a, const FiniteSet& b) {
  require_same_dim(a, b, "subset");
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

namespace {
bool translate_inside(const FiniteSet& k, const Site& f, const FiniteSet& set) {
  for (const auto& s : k)
    if (!set.contains(s + f)) return false;
  return true;
}
}  // namespace

FiniteSet boundary(const FiniteSet& k, const FiniteSet& f) {
  require_same_dim(k, f, "boundary");
  std::vector<Site> out;
  for (const auto& s : f)
    if (!translate_inside(k, s, f)) out.push_back(s);
  return FiniteSet(std::move(out), common_dim(k, f));
}

FiniteSet interior(const FiniteSet& k, const FiniteSet& f) {
  require_same_dim(k, f, "interior");
  std::vector<Site> out;
  for (const auto& s : f)
    if (translate_inside(k, s, f)) out.push_back(s);
  return FiniteSet(std::move(out), common_dim(k, f));
}

Rational invariance_defect(const FiniteSet& k, const FiniteSet& f) {
  if (f.empty()) throw PreconditionError("invariance defect of an empty set");
  const auto kf = product_set(k, f);
  const auto diff = symmetric_difference(kf, f);
  return Rational(BigInt(diff.size()), BigInt(f.size()));
}

FiniteSet bounding_box(const FiniteSet& s) {
  if (s.empty()) return s;
  Site lo = s.min_corner();
  Site hi = s.max_corner();
  hi.c[0] += 1;
  if (s.dim() == 2) hi.c[1] += 1;
  return FiniteSet::box(lo, hi);
}

Coord diameter(const FiniteSet& s) {
  if (s.empty()) return 0;
  const Site lo = s.min_corner();
  const Site hi = s.max_corner();
  return std::max(hi.c[0] - lo.c[0], hi.c[1] - lo.c[1]);
}

FolnerWindow folner_window(Coord n, int dim) {
  if (n <= 0) throw PreconditionError("Folner window size must be positive");
  if (dim != 1 && dim != 2) throw PreconditionError("dimension must be 1 or 2");
  return FolnerWindow{FiniteSet::cube(dim, 0, n), n};
}

}  // namespace shiftforge
