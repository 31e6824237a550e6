#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "shiftforge/engine.hpp"
#include "shiftforge/errors.hpp"
#include "shiftforge/tiling.hpp"
#include "tile_approx.hpp"

using namespace shiftforge;

namespace {

FiniteSet ints(Coord lo, Coord hi) { return FiniteSet::interval(lo, hi); }

// Period-5 tiling of Z by [0,2] then [0,1].
PeriodicTiling two_shape() {
  ShapeSystem s({ints(0, 3), ints(0, 2)});
  return PeriodicTiling(s, {Site::of(5)}, {Tile{0, Site::of(0)}, Tile{1, Site::of(3)}});
}

}  // namespace

TEST_CASE("shape systems") {
  ShapeSystem s({ints(0, 3), ints(0, 2)});
  CHECK(s.symbol_count() == 5);
  CHECK(encoding_alphabet(s).size() == 5);
  CHECK(encoding_tokens(s).size() == 5);
  CHECK(center_tokens(s).size() == 3);
  CHECK(s.union_shape() == ints(0, 3));
  CHECK_THROWS_AS(ShapeSystem({ints(1, 3)}), InputError);
  CHECK_FALSE(ShapeSystem::violations({ints(1, 3)}).empty());
  CHECK(PeriodicTiling::box(2, 2).shapes().symbol_count() == 4);
}

TEST_CASE("encoding examples") {
  auto t = PeriodicTiling::box(1, 3);
  CHECK(t.symbol_at(Site::of(4)) == t.shapes().symbol(0, Site::of(1)));
  CHECK(t.symbol_at(Site::of(9)) == t.shapes().symbol(0, Site::of(0)));
  CHECK(t.symbol_at(Site::of(-1)) == t.shapes().symbol(0, Site::of(2)));
  auto b = PeriodicTiling::box(2, 2);
  CHECK(b.symbol_at(Site::of(1, 0)) == b.shapes().symbol(0, Site::of(1, 0)));
  CHECK(b.covolume() == 4);
  CHECK(two_shape().covolume() == 5);
  // overlapping tiles are refused
  CHECK_THROWS_AS(PeriodicTiling(ShapeSystem({ints(0, 3)}), {Site::of(2)}, {Tile{0, Site::of(0)}}), InputError);
}

TEST_CASE("encodings satisfy the local rule; corruption is detected") {
  std::mt19937_64 g(41);
  for (auto t : {PeriodicTiling::box(1, 3), PeriodicTiling::box(2, 2), PeriodicTiling::box(2, 3), two_shape()}) {
    FiniteSet f = t.dim() == 1 ? ints(-7, 13) : FiniteSet::cube(2, -3, 6);
    Pattern p = encode_tiling(t, f);
    CHECK(check_rule_R1(p, t.shapes()).empty());
    for (int it = 0; it < 20; ++it) {
      Pattern q = p;
      std::size_t i = g() % q.labels.size();
      Symbol old = q.labels[i];
      q.labels[i] = static_cast<Symbol>((old + 1 + g() % (t.shapes().symbol_count() - 1)) % t.shapes().symbol_count());
      CHECK_FALSE(check_rule_R1(q, t.shapes()).empty());
    }
  }
}

TEST_CASE("decode inverts encode") {
  for (auto t : {PeriodicTiling::box(1, 3), PeriodicTiling::box(2, 2), two_shape(), two_shape().shifted(Site::of(2))}) {
    FiniteSet f = t.dim() == 1 ? ints(0, 23) : FiniteSet::cube(2, 0, 7);
    auto tiles = decode_tiling(encode_tiling(t, f), t.shapes());
    std::set<Tile> expect;
    for (const auto& site : f) {
      Tile tile = t.tile_at(site);
      if (is_subset(tile_cells(t.shapes(), tile), f)) expect.insert(tile);
    }
    std::set<Tile> got;
    for (const auto& tile : tiles)
      if (is_subset(tile_cells(t.shapes(), tile), f)) got.insert(tile);
    CHECK(got == expect);
  }
  // all (S, origin) with |S| > 1 is inconsistent
  ShapeSystem s({ints(0, 3)});
  Pattern bad(ints(0, 9), Word(9, s.symbol(0, Site::of(0))));
  CHECK_FALSE(check_rule_R1(bad, s).empty());
  CHECK_THROWS(decode_tiling(bad, s));
}

// Every exact tiling of the n by n torus by 2x2 squares, encoded cell by
// cell (x major); brute force over anchor sets.
static std::set<Word> torus_box_tilings(const ShapeSystem& s, int n) {
  std::set<Word> out;
  const int cells = n * n, need = cells / 4;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == need) {
      Word w(cells, 0);
      std::vector<int> cover(cells, 0);
      for (int a : pick)
        for (int dx = 0; dx < 2; ++dx)
          for (int dy = 0; dy < 2; ++dy) {
            int x = (a / n + dx) % n, y = (a % n + dy) % n;
            ++cover[x * n + y];
            w[x * n + y] = s.symbol(0, Site::of(dx, dy));
          }
      if (std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; })) out.insert(w);
      return;
    }
    for (int a = from; a < cells; ++a) {
      pick.push_back(a);
      rec(a + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

TEST_CASE("torus solutions of the local rule are the exact torus tilings") {
  auto t = PeriodicTiling::box(2, 2);
  auto sols = torus_r1_solutions(t.shapes(), 4, 4);
  std::set<Word> got(sols.begin(), sols.end());
  CHECK(got.size() == sols.size());
  CHECK(got == torus_box_tilings(t.shapes(), 4));
  // the 4 lattice phases plus 8 tilings whose 2-wide strips slide independently
  CHECK(sols.size() == 12);
  for (Coord a = 0; a < 2; ++a)
    for (Coord b = 0; b < 2; ++b)
      CHECK(got.count(encode_tiling(t.shifted(Site::of(a, b)), FiniteSet::cube(2, 0, 4)).labels) == 1);
  CHECK(torus_r1_solutions(PeriodicTiling::box(1, 3).shapes(), 9, 0).size() == 3);
  CHECK(torus_r1_solutions(PeriodicTiling::box(1, 3).shapes(), 10, 0).empty());
}

TEST_CASE("tile approximations") {
  auto t = PeriodicTiling::box(1, 3);
  auto a = tile_approximations(t, ints(0, 10));
  CHECK(a.inner.size() == 3);
  CHECK(a.inner_cells == ints(0, 9));
  CHECK(a.outer_cells == ints(0, 12));
  auto one = tile_approximations(t, ints(3, 6));
  CHECK(one.inner_cells == ints(3, 6));
  CHECK(one.outer_cells == ints(3, 6));
  auto b = tile_approximations(PeriodicTiling::box(2, 3), FiniteSet::cube(2, 0, 10));
  CHECK(b.inner_cells.size() == 81);
  CHECK(b.outer_cells.size() == 144);
}

TEST_CASE("frames") {
  auto t = PeriodicTiling::box(1, 3);
  FiniteSet k({Site::of(-1), Site::of(0), Site::of(1)}, 1);
  FiniteSet expect({Site::of(0), Site::of(2), Site::of(3), Site::of(5), Site::of(6), Site::of(8)}, 1);
  CHECK(frame(t, k, ints(0, 10)) == expect);
  CHECK(frame(t, FiniteSet({Site::of(0)}, 1), ints(0, 10)).empty());
  // |frame| <= max_S |boundary S| / |S| * |inner|
  for (auto tl : {PeriodicTiling::box(2, 3), two_shape()}) {
    FiniteSet kk = difference_set(tl.dim() == 1 ? ints(0, 2) : FiniteSet::cube(2, 0, 2));
    Rational worst = 0;
    for (const auto& s : tl.shapes().shapes())
      worst = std::max(worst, Rational(static_cast<long>(boundary(kk, s).size()), static_cast<long>(s.size())));
    FiniteSet f = tl.dim() == 1 ? ints(0, 41) : FiniteSet::cube(2, 0, 14);
    auto inner = tile_approximations(tl, f).inner_cells.size();
    CHECK(Rational(static_cast<long>(frame(tl, kk, f).size())) <= worst * static_cast<long>(inner));
  }
}

TEST_CASE("center encoding round trip") {
  for (auto t : {PeriodicTiling::box(1, 3), PeriodicTiling::box(2, 2), two_shape()}) {
    FiniteSet f = t.dim() == 1 ? ints(0, 20) : FiniteSet::cube(2, 0, 6);
    Pattern p = encode_tiling(t, f);
    Pattern c = to_center_encoding(p, t.shapes());
    CHECK(c.domain == f);
    std::size_t centers = std::count_if(c.labels.begin(), c.labels.end(), [](Symbol s) { return s != 0; });
    CHECK(centers > 0);
    Pattern back = from_center_encoding(c, t.shapes());
    for (const auto& s : back.domain)
      if (f.contains(s)) CHECK(back.at(s) == p.at(s));
  }
}

TEST_CASE("orbit SFT of a periodic tiling") {
  auto t = PeriodicTiling::box(1, 3);
  SubshiftHandle x(orbit_sft(t));
  for (Coord n = 1; n <= 12; ++n) CHECK(count_patterns(x, ints(0, n)).count == 3);
  CHECK(count_patterns(SubshiftHandle(orbit_sft(two_shape())), ints(0, 15)).count == 5);
  EnumerateOptions opt;
  opt.margin = 1;
  CHECK(count_patterns(SubshiftHandle(orbit_sft(PeriodicTiling::box(2, 2))), FiniteSet::cube(2, 0, 4), opt).count == 4);
}

TEST_CASE("property: tile approximation bounds, exact rationals") {
  std::mt19937_64 g(42);
  int bad = 0, tight = 0;
  for (int it = 0; it < 200; ++it) {
    auto o = tile_approx::check_instance(g);
    if (!o.ok) {
      ++bad;
      MESSAGE(o.detail);
    }
    tight += o.eps < 1;
  }
  CHECK(bad == 0);
  CHECK(tight > 20);
}
