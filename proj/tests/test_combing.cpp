#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "shiftforge/combing.hpp"
#include "shiftforge/errors.hpp"

using namespace shiftforge;

namespace {

CombingConfig config(Coord side, Coord window, double eps = 0.3) {
  CombingConfig c;
  c.tile_side = side;
  c.window = window;
  c.eps = eps;
  return c;
}

// Words of X (given as an allowed 2-window) of length n.
std::vector<Word> words(const SftSpec& x, std::size_t n) {
  std::vector<Word> out;
  for (const auto& w : oracle::all_words(x.alphabet().size(), n))
    if (oracle::locally_ok(w, x.allowed(), 2)) out.push_back(w);
  return out;
}

// |P([0,n), Z)| for Z = full shift x Sigma0 with the given aligned blocks
// forbidden: sum over alignments of the words whose every aligned block
// (cut off at the edges) has an allowed completion.
std::size_t full_shift_chain_count(std::size_t q, Coord side, std::size_t n, const std::set<Word>& forbidden) {
  auto blocks = oracle::all_words(q, static_cast<std::size_t>(side));
  std::vector<Word> allowed;
  for (const auto& b : blocks)
    if (!forbidden.count(b)) allowed.push_back(b);
  std::size_t total = 0;
  for (Coord o = 0; o < side; ++o)
    for (const auto& w : oracle::all_words(q, n)) {
      bool ok = true;
      for (Coord start = o - side; start < static_cast<Coord>(n) && ok; start += side) {
        bool some = false;
        for (const auto& b : allowed) {
          bool match = true;
          for (Coord i = 0; i < side && match; ++i) {
            Coord p = start + i;
            if (p >= 0 && p < static_cast<Coord>(n)) match = w[p] == b[i];
          }
          some = some || match;
        }
        ok = some;
      }
      total += ok;
    }
  return total;
}

}  // namespace

TEST_CASE("delta solves the combing inequality") {
  for (double eps : {0.1, 0.3, 0.9})
    for (std::size_t q : {2u, 3u}) {
      double d = combing_delta(eps, q);
      CHECK(d > 0);
      CHECK(2 * d + d * std::log(2.0) + 2 * d * std::log(double(q)) < eps);
      double d2 = d * 1.01;
      CHECK(2 * d2 + d2 * std::log(2.0) + 2 * d2 * std::log(double(q)) >= eps * 0.999);
    }
}

TEST_CASE("aligned census of Z0") {
  auto g = build_Z0(SftSpec::golden_mean(), config(6, 60));
  CHECK(aligned_blocks(g, g.z0).size() == 21);
  auto f = build_Z0(SftSpec::full_shift(2, 1), config(4, 40));
  CHECK(aligned_blocks(f, f.z0).size() == 16);
  // Sigma0 alone has L phases
  CHECK(count_patterns(SubshiftHandle(g.sigma0), FiniteSet::interval(0, 30)).count == 6);
  SftSpec empty(Alphabet::numeric(2), FiniteSet::interval(0, 2), {});
  CHECK(aligned_blocks(build_Z0(empty, config(4, 40)), build_Z0(empty, config(4, 40)).z0).empty());
}

TEST_CASE("blocks and interiors against brute force") {
  auto x = SftSpec::golden_mean();
  auto s = build_Z0(x, config(4, 40));
  auto blocks = aligned_blocks(s, s.z0);
  auto expect = words(x, 4);
  CHECK(blocks.size() == expect.size());
  CHECK(blocks.size() == 8);
  for (const auto& b : blocks) {
    std::size_t same = 0;
    for (const auto& w : expect) same += w.front() == b.x_layer.front() && w.back() == b.x_layer.back();
    auto ints = interiors(s, s.z0, b);
    CHECK(ints.size() == same);
    for (const auto& i : ints) CHECK(border_word(s, i) == border_word(s, b));
  }
  auto step = comb_step(s, s.z0);
  REQUIRE(step);
  auto after = aligned_blocks(s, step->next);
  CHECK(after.size() == 7);
  CHECK(std::find(after.begin(), after.end(), step->beta) == after.end());
  CHECK(interiors(s, s.z0, step->beta).size() >= 2);
}

TEST_CASE("chain on the golden mean") {
  auto r = run_chain(SftSpec::golden_mean(), config(6, 60));
  REQUIRE(!r.steps.empty());
  CHECK(r.terminal);
  CHECK_FALSE(r.truncated);
  CHECK(r.census_strict);
  CHECK(r.entropy_monotone);
  CHECK(r.ratio_all);
  CHECK(r.lost_all);
  CHECK(r.u2_eps);
  CHECK(r.steps.front().census == 21);
  // terminal census: one block per border word
  std::set<std::pair<Symbol, Symbol>> borders;
  for (const auto& w : words(SftSpec::golden_mean(), 6)) borders.insert({w.front(), w.back()});
  CHECK(r.steps.back().census == borders.size());
  for (std::size_t i = 1; i < r.steps.size(); ++i) {
    CHECK(r.steps[i].census + 1 == r.steps[i - 1].census);
    CHECK(r.steps[i].drop < r.config.eps);
    CHECK(r.steps[i].u1_eps);
    CHECK(r.steps[i].max_interiors >= 1);
  }
  CHECK(r.steps.back().h < r.config.eps);
  CHECK(r.decompositions.size() == 3);
  for (const auto& d : r.decompositions) {
    CHECK_FALSE(d.declined);
    CHECK(d.e1);
    CHECK(d.e2);
    CHECK(d.lower <= d.count);
    CHECK(d.count <= d.upper);
  }
}

TEST_CASE("chain counts against brute force on the full shift") {
  auto s = build_Z0(SftSpec::full_shift(2, 1), config(3, 9));
  auto r = run_chain(s);
  CHECK(r.terminal);
  CHECK(r.steps.front().census == 8);
  CHECK(r.steps.back().census == 1);  // window {0}: empty border, one class
  std::set<Word> forbidden;
  for (const auto& st : r.steps) {
    CHECK(st.count == full_shift_chain_count(2, 3, 9, forbidden));
    if (st.beta) forbidden.insert(st.beta->x_layer);
  }
  // Z_n rebuilt from the report has the recorded counts
  for (std::size_t n = 0; n < r.steps.size(); ++n)
    CHECK(count_patterns(chain_shift(s, r, n), s.window).count == r.steps[n].count);
  for (const auto& d : r.decompositions) {
    CHECK(d.e1);
    CHECK(d.e2);
  }
}

TEST_CASE("single point subshift") {
  SftSpec point(Alphabet::numeric(2), FiniteSet::interval(0, 2), {{0, 0}});
  auto r = run_chain(point, config(3, 12));
  CHECK(r.terminal);
  CHECK(r.steps.size() == 1);
  CHECK(r.steps[0].census == 1);
}

TEST_CASE("hypotheses are reported, strict mode refuses") {
  auto g = build_Z0(SftSpec::golden_mean(), config(6, 60));
  CHECK(g.hyp.delta == doctest::Approx(combing_delta(0.3, 2)));
  CHECK(g.hyp.kk_inside);
  CHECK(g.hyp.h_sigma0 == doctest::Approx(std::log(6.0) / 60));
  CHECK_FALSE(g.hyp.warnings.empty());
  auto c = config(6, 60);
  c.strict = true;
  CHECK_THROWS_AS(build_Z0(SftSpec::golden_mean(), c), PreconditionError);
}

TEST_CASE("projected chain") {
  auto s = build_Z0(SftSpec::golden_mean(), config(4, 24));
  auto r = run_chain(s);
  auto proj = project_chain(s, r);
  CHECK(proj.size() == r.steps.size());
  CHECK(proj.front().count_image == count_patterns(SubshiftHandle(SftSpec::golden_mean()), s.window).count);
  for (const auto& p : proj) {
    CHECK(p.gap_ok);
    CHECK(p.count_sigma0 == 4);
    CHECK(p.h_z - p.h_image <= p.h_sigma0 + 1e-12);
    CHECK(p.h_wrapped >= p.h_image - 1e-12);
  }
  for (std::size_t i = 1; i < proj.size(); ++i) CHECK(proj[i].count_image <= proj[i - 1].count_image);
}

TEST_CASE("relative dense family") {
  auto x = SftSpec::golden_mean();
  SubshiftHandle y(SftSpec(Alphabet::numeric(2), FiniteSet::interval(0, 2), {{0, 0}}));
  auto cfg = config(4, 24);
  cfg.projection_window = 8;
  auto wide = relative_dense_family(x, y, 0.0, 1.0, cfg);
  CHECK(wide.step == 0);
  REQUIRE(wide.tried.size() >= 1);
  // the value at the last chain step can be requested back
  auto s = build_Z0(x, cfg);
  auto r = run_chain(s);
  const std::size_t last = r.steps.size() - 1;
  EnumerateOptions opt;
  opt.margin = s.margin;
  double target = entropy_estimate(SubshiftHandle(union_step(s, r, y, last)), s.window, opt);
  CHECK(target < wide.h);
  auto hit = relative_dense_family(x, y, target - 1e-12, target + 1e-12, cfg);
  CHECK(std::abs(hit.h - target) < 1e-12);
  CHECK(hit.step <= last);
  CHECK(hit.tried.size() == hit.step + 1);
  CHECK_THROWS_AS(relative_dense_family(x, y, -1.0, -0.5, cfg), PreconditionError);
  SubshiftHandle outside(SftSpec::full_shift(2, 1));
  CHECK_THROWS_AS(relative_dense_family(x, outside, 0.0, 1.0, cfg), PreconditionError);
  // contains Y on the projection window
  auto pw = projection_window(s);
  CHECK(count_patterns(SubshiftHandle(hit.spec), pw).count >= count_patterns(y, pw).count);
}
