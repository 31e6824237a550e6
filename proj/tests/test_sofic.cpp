#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shiftforge/errors.hpp"
#include "shiftforge/sofic.hpp"

using namespace shiftforge;

namespace {

// Even shift: 1, 0a, 0b with 0-runs alternating a, b.
SoficPresentation even_shift() {
  Alphabet up({"1", "0a", "0b"});
  SftSpec cover(up, FiniteSet::interval(0, 2), {{0, 0}, {0, 1}, {1, 2}, {2, 1}, {2, 0}});
  return make_presentation(cover, BlockCode::one_block(up, Alphabet({"0", "1"}), {1, 0, 0}));
}

// A word occurs in the even shift iff each 0-run between two 1s is even.
bool even_ok(const Word& w) {
  std::ptrdiff_t last = -1;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == 1) {
      if (last >= 0 && (static_cast<std::ptrdiff_t>(i) - last - 1) % 2) return false;
      last = static_cast<std::ptrdiff_t>(i);
    }
  return true;
}

CombingConfig cfg(Coord side, double eps = 0.3) {
  CombingConfig c;
  c.tile_side = side;
  c.eps = eps;
  return c;
}

// The chain settings used for the pipelines: small enough for the suite.
CombingConfig chain_cfg() {
  CombingConfig c = cfg(7);
  c.window = 28;
  c.projection_window = 7;
  c.decompose = false;
  return c;
}

}  // namespace

TEST_CASE("even shift presentation against brute force") {
  auto w = even_shift();
  CHECK(presentation_violations(w.cover, w.code).empty());
  for (std::size_t n = 1; n <= 14; ++n) {
    std::size_t bf = 0;
    for (const auto& x : oracle::all_words(2, n)) bf += even_ok(x);
    CHECK(enumerate_image(SubshiftHandle(w.cover), w.code, FiniteSet::interval(0, static_cast<Coord>(n))).result.count ==
          bf);
  }
  // trivial image
  auto g = SftSpec::golden_mean();
  auto zero = BlockCode::one_block(g.alphabet(), Alphabet({"0"}), {0, 0});
  CHECK(enumerate_image(SubshiftHandle(g), zero, FiniteSet::interval(0, 9)).result.count == 1);
  CHECK_FALSE(presentation_violations(g, BlockCode::one_block(Alphabet::numeric(3), Alphabet({"0"}), {0, 0, 0})).empty());
}

TEST_CASE("cover of the even shift") {
  auto c = build_cover(even_shift(), cfg(3));
  CHECK(c.qx == 3);
  CHECK(c.qw == 2);
  CHECK(c.merged.size() == 5);
  CHECK(c.delta > 0);
  CHECK(4 * c.delta + c.delta * (1 + c.delta) * std::log(3.0) < 0.15);
  for (Coord n : {9, 10, 12}) {
    FiniteSet f = FiniteSet::interval(0, n);
    CHECK(cover_projects_onto(c, f));
    CHECK(cover_matches_rules(c, f));
    CHECK(typing_violations(c, f) == 0);
  }
}

TEST_CASE("sampled entropy gaps of the cover") {
  auto c = build_cover(even_shift(), cfg(3));
  auto g = estimate_max_gap(c, 8, FiniteSet::interval(0, 9), 5);
  CHECK(g.samples.size() >= 3);
  CHECK(g.samples.front().label == "full");
  CHECK(g.all_within);
  CHECK(g.analytic_ok);
  CHECK(g.max_gap <= g.window_bound + 1e-12);
  for (const auto& s : g.samples) {
    CHECK(s.gap >= -1e-12);
    CHECK(s.gap == doctest::Approx(s.h_up - s.h_down));
  }
  // deterministic in the seed
  auto again = estimate_max_gap(c, 8, FiniteSet::interval(0, 9), 5);
  REQUIRE(again.samples.size() == g.samples.size());
  for (std::size_t i = 0; i < g.samples.size(); ++i) CHECK(again.samples[i].count_up == g.samples[i].count_up);
}

TEST_CASE("product projection gap control") {
  auto g = product_gap_control(SftSpec::golden_mean(), SftSpec::full_shift(2, 1), 12, FiniteSet::interval(0, 12), 3);
  REQUIRE(!g.samples.empty());
  CHECK(g.h_tiling == doctest::Approx(std::log(2.0)));
  for (const auto& s : g.samples) CHECK(s.gap <= std::log(2.0) + 1e-12);
  CHECK(std::abs(g.samples.front().gap - std::log(2.0)) < 1e-9);
  CHECK(g.all_within);
  // a single point maps to a single point
  SftSpec point(Alphabet::numeric(2), FiniteSet::interval(0, 2), {{0, 0}});
  auto p = product_gap_control(point, point, 2, FiniteSet::interval(0, 8), 3);
  CHECK(p.samples.front().gap == doctest::Approx(0.0));
}

TEST_CASE("preimage of a subshift under the cover code") {
  auto c = build_cover(even_shift(), cfg(3));
  SubshiftHandle empty(SftSpec(Alphabet({"0", "1"}), FiniteSet({Site::of(0)}, 1), {}));
  auto pre = cover_preimage(c, empty);
  CHECK(count_patterns(pre, FiniteSet::interval(0, 6)).empty);
}

TEST_CASE("dense family through the cover") {
  auto w = even_shift();
  SubshiftHandle v(SftSpec(Alphabet({"0", "1"}), FiniteSet({Site::of(0)}, 1), {}));
  auto res = sofic_dense_family(w, v, 0.0, 0.5, cfg(3), chain_cfg());
  CHECK(res.h_down >= 0.0);
  CHECK(res.h_down <= 0.5);
  CHECK(res.monotone);
  CHECK(res.h_up >= res.h_down - 1e-12);
  for (std::size_t i = 1; i < res.tried.size(); ++i)
    if (res.tried[i].first > res.tried[i - 1].first) CHECK(res.tried[i].second <= res.tried[i - 1].second + 1e-12);
  // the result is a presentation whose image has the reported entropy
  FiniteSet f = FiniteSet::interval(0, 28);
  CHECK(entropy_estimate(SubshiftHandle(res.presentation.cover), f) >= res.h_down - 1e-12);
  CHECK_THROWS_AS(sofic_dense_family(w, v, -1.0, -0.5, cfg(3), chain_cfg()), PreconditionError);
}

TEST_CASE("nested entropy targets") {
  auto w = even_shift();
  auto nr = entropy_target_nest(w, 0.49, {0.03, 0.015, 0.01}, cfg(3), chain_cfg());
  CHECK(nr.complete);
  CHECK(nr.monotone);
  // level 0 is W, then one level per tolerance
  REQUIRE(nr.levels.size() == 4);
  CHECK(nr.levels[0].step == 0);
  for (std::size_t i = 1; i < nr.levels.size(); ++i) {
    CHECK(nr.levels[i].h >= 0.49);
    CHECK(nr.levels[i].h < 0.49 + nr.levels[i].eps);
    CHECK(nr.levels[i].step >= nr.levels[i - 1].step);
    CHECK(nr.levels[i].h <= nr.levels[i - 1].h + 1e-12);
  }
  CHECK(nr.levels.back().step > 0);
  // r = h(F, W): W itself is every level
  FiniteSet f = FiniteSet::interval(0, 28);
  double h = enumerate_image(SubshiftHandle(w.cover), w.code, f).result.entropy;
  auto top = entropy_target_nest(w, h, {0.1, 0.05}, cfg(3), chain_cfg());
  CHECK(top.complete);
  for (const auto& l : top.levels) CHECK(l.step == 0);
}
