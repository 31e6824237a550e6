#include <doctest.h>

#include <random>

#include "shiftforge/errors.hpp"
#include "shiftforge/geometry.hpp"

using namespace shiftforge;

namespace {

FiniteSet ints(std::initializer_list<Coord> xs) {
  std::vector<Site> v;
  for (auto x : xs) v.push_back(Site::of(x));
  return FiniteSet(v, 1);
}

FiniteSet plus2() {
  return FiniteSet({Site::of(-1, 0), Site::of(0, 0), Site::of(1, 0), Site::of(0, -1), Site::of(0, 1)}, 2);
}

// Random K containing the origin, inside [-r, r]^d.
FiniteSet random_k(std::mt19937_64& g, int d, Coord r) {
  std::vector<Site> v{Site::origin(d)};
  std::uniform_int_distribution<Coord> c(-r, r);
  int n = 1 + static_cast<int>(g() % 4);
  for (int i = 0; i < n; ++i) v.push_back(d == 1 ? Site::of(c(g)) : Site::of(c(g), c(g)));
  return FiniteSet(v, d);
}

FiniteSet random_f(std::mt19937_64& g, int d) {
  std::uniform_int_distribution<Coord> c(-6, 6);
  std::vector<Site> v;
  int n = 1 + static_cast<int>(g() % 30);
  for (int i = 0; i < n; ++i) v.push_back(d == 1 ? Site::of(c(g)) : Site::of(c(g), c(g)));
  return FiniteSet(v, d);
}

}  // namespace

TEST_CASE("translate examples") {
  CHECK(translate(ints({0, 1}), Site::of(3)) == ints({3, 4}));
  FiniteSet k({Site::of(0, 0), Site::of(1, 0)}, 2);
  CHECK(translate(k, Site::of(0, 0)) == k);
  CHECK(translate(ints({-1, 0, 1}), Site::of(9)) == ints({8, 9, 10}));
}

TEST_CASE("product_set examples") {
  CHECK(product_set(ints({0, 1}), FiniteSet::interval(0, 10)) == FiniteSet::interval(0, 11));
  CHECK(product_set(ints({0}), FiniteSet::interval(3, 7)) == FiniteSet::interval(3, 7));
  CHECK(product_set(ints({-1, 0, 1}), ints({5})) == ints({4, 5, 6}));
}

TEST_CASE("boundary and interior examples") {
  CHECK(boundary(ints({-1, 0, 1}), FiniteSet::interval(0, 10)) == ints({0, 9}));
  CHECK(boundary(ints({0}), FiniteSet::interval(0, 10)).empty());
  auto box = FiniteSet::cube(2, 0, 3);
  CHECK(boundary(plus2(), box).size() == 8);
  CHECK_FALSE(boundary(plus2(), box).contains(Site::of(1, 1)));
  CHECK(interior(ints({-1, 0, 1}), FiniteSet::interval(0, 10)) == FiniteSet::interval(1, 9));
  CHECK(interior(ints({0}), FiniteSet::interval(0, 10)) == FiniteSet::interval(0, 10));
  CHECK(interior(plus2(), box) == FiniteSet({Site::of(1, 1)}, 2));
}

TEST_CASE("invariance defect examples") {
  CHECK(invariance_defect(ints({0, 1}), FiniteSet::interval(0, 100)) == Rational(1, 100));
  CHECK(invariance_defect(ints({0}), FiniteSet::interval(0, 7)) == 0);
  CHECK(invariance_defect(ints({-1, 0, 1}), FiniteSet::interval(0, 10)) == Rational(2, 10));
  CHECK_THROWS_AS(invariance_defect(ints({0}), FiniteSet(1)), PreconditionError);
}

TEST_CASE("folner windows") {
  CHECK(folner_window(3, 1).box == ints({0, 1, 2}));
  CHECK(folner_window(2, 2).box ==
        FiniteSet({Site::of(0, 0), Site::of(0, 1), Site::of(1, 0), Site::of(1, 1)}, 2));
  auto w = folner_window(10, 1);
  CHECK(w.box.size() == 10);
  CHECK(invariance_defect(ints({0, 1}), w.box) == Rational(1, 10));
  CHECK_THROWS_AS(folner_window(0, 1), PreconditionError);
}

TEST_CASE("canonical order and dimension checks") {
  FiniteSet a({Site::of(2, 0), Site::of(0, 1), Site::of(0, 1), Site::of(0, 0)}, 2);
  CHECK(a.size() == 3);
  CHECK(a[0] == Site::of(0, 0));
  CHECK(a[1] == Site::of(0, 1));
  CHECK(a[2] == Site::of(2, 0));
  CHECK_THROWS_AS(FiniteSet({Site::of(0), Site::of(0, 0)}), DimensionMismatch);
  CHECK_THROWS_AS(product_set(ints({0}), FiniteSet::cube(2, 0, 2)), DimensionMismatch);
}

TEST_CASE("property: boundary and interior partition F") {
  std::mt19937_64 g(11);
  for (int it = 0; it < 300; ++it) {
    int d = 1 + static_cast<int>(it % 2);
    auto k = random_k(g, d, 2);
    auto f = random_f(g, d);
    auto b = boundary(k, f), i = interior(k, f);
    CHECK(set_intersection(b, i).empty());
    CHECK(set_union(b, i) == f);
  }
}

TEST_CASE("property: boundary sandwich by the invariance defect") {
  // |KF \triangle F| / |K| <= |boundary| <= |K| |KF \triangle F|
  std::mt19937_64 g(12);
  for (int it = 0; it < 300; ++it) {
    int d = 1 + static_cast<int>(it % 2);
    auto k = random_k(g, d, 2);
    auto f = random_f(g, d);
    auto diff = symmetric_difference(product_set(k, f), f).size();
    auto b = boundary(k, f).size();
    CHECK(Rational(diff, k.size()) <= b);
    CHECK(b <= k.size() * diff);
  }
}

TEST_CASE("property: a translate of K meets F or avoids the KK^-1 interior") {
  std::mt19937_64 g(13);
  std::uniform_int_distribution<Coord> c(-8, 8);
  for (int it = 0; it < 400; ++it) {
    int d = 1 + static_cast<int>(it % 2);
    auto k = random_k(g, d, 2);
    auto f = random_f(g, d);
    Site s = d == 1 ? Site::of(c(g)) : Site::of(c(g), c(g));
    auto kg = translate(k, s);
    auto in = interior(difference_set(k), f);
    bool inside = is_subset(kg, f);
    bool avoids = set_intersection(kg, in).empty();
    CHECK((inside || avoids));
  }
}

TEST_CASE("property: translate invariance of the defect") {
  std::mt19937_64 g(14);
  std::uniform_int_distribution<Coord> c(-50, 50);
  for (int it = 0; it < 200; ++it) {
    int d = 1 + static_cast<int>(it % 2);
    auto k = random_k(g, d, 3);
    auto f = random_f(g, d);
    Site s = d == 1 ? Site::of(c(g)) : Site::of(c(g), c(g));
    CHECK(invariance_defect(k, translate(f, s)) == invariance_defect(k, f));
  }
}

TEST_CASE("property: boxes are Folner") {
  for (int d = 1; d <= 2; ++d) {
    FiniteSet k = FiniteSet::cube(d, -1, 2);
    Rational prev = invariance_defect(k, FiniteSet::cube(d, 0, 3));
    for (Coord n = 4; n <= 30; ++n) {
      Rational cur = invariance_defect(k, FiniteSet::cube(d, 0, n));
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK(prev < Rational(1, 3));
  }
}
