// Acceptance suite: one PASS/FAIL line per criterion.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "shiftforge/cli.hpp"
#include "shiftforge/combing.hpp"
#include "shiftforge/counterexample.hpp"
#include "shiftforge/engine.hpp"
#include "shiftforge/json_io.hpp"
#include "shiftforge/sofic.hpp"
#include "shiftforge/tiling.hpp"
#include "splice.hpp"
#include "tile_approx.hpp"

using namespace shiftforge;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string data_dir;

std::string data(const char* name) { return data_dir + "/" + name; }

Verdict ac1() {
  std::ostringstream d;
  auto t = Clock::now();
  SubshiftHandle g(SftSpec::golden_mean());
  bool ok = true;
  for (int n = 1; n <= 30; ++n)
    ok = ok && count_patterns(g, FiniteSet::interval(0, n)).count == oracle::fib(n + 2);
  double secs = since(t);
  // brute force: bitmasks with no two adjacent ones
  for (int n = 1; n <= 20 && ok; ++n) {
    std::uint64_t bf = 0;
    for (std::uint64_t m = 0; m < (1ull << n); ++m) bf += (m & (m >> 1)) == 0;
    ok = count_patterns(g, FiniteSet::interval(0, n)).count == bf;
  }
  d << "n=1..30 exact, brute force n<=20, " << secs << " s";
  return {ok && secs < 1.0, d.str()};
}

Verdict ac2() {
  SubshiftHandle g(SftSpec::golden_mean());
  double h = entropy_exact_1d(g);
  double phi = std::log((1 + std::sqrt(5.0)) / 2);
  double pi = std::log(oracle::power_iteration({{1, 1}, {1, 0}}));
  double h30 = entropy_estimate(g, FiniteSet::interval(0, 30));
  std::ostringstream d;
  d.precision(12);
  d << "exact " << h << ", log phi " << phi << ", power iteration " << pi << ", h(30) " << h30 << " gap "
    << h30 - h;
  return {std::abs(h - phi) < 1e-9 && std::abs(pi - phi) < 1e-9 && std::abs(h30 - h) < 0.01, d.str()};
}

Verdict ac3() {
  auto t = Clock::now();
  auto box = PeriodicTiling::box(2, 2);
  auto sols = torus_r1_solutions(box.shapes(), 4, 4);
  double secs = since(t);
  std::set<Word> phases;
  for (Coord a = 0; a < 2; ++a)
    for (Coord b = 0; b < 2; ++b)
      phases.insert(encode_tiling(box.shifted(Site::of(a, b)), FiniteSet::cube(2, 0, 4)).labels);
  std::set<Word> got(sols.begin(), sols.end());
  std::size_t hit = 0;
  for (const auto& p : phases) hit += got.count(p);
  std::ostringstream d;
  d << sols.size() << " R1 solutions, " << hit << " of 4 phases among them, " << secs << " s";
  if (got != phases)
    d << "; the other " << sols.size() - hit
      << " are exact torus tilings whose 2-wide strips of boxes are slid independently, which R1 accepts";
  return {got == phases && secs < 10.0, d.str()};
}

Verdict ac4() {
  std::mt19937_64 g(2024);
  int bad = 0, tight = 0;
  std::string first;
  for (int i = 0; i < 500; ++i) {
    auto o = tile_approx::check_instance(g);
    if (!o.ok && first.empty()) first = o.detail;
    bad += !o.ok;
    tight += o.eps < 1;
  }
  std::ostringstream d;
  d << "500 instances, " << bad << " violations, " << tight << " with eps < 1";
  if (!first.empty()) d << "; first: " << first;
  return {bad == 0, d.str()};
}

Verdict ac5() {
  std::mt19937_64 g(5);
  int done = 0, bad = 0, skipped = 0;
  while (done < 1000) {
    SftSpec x = done % 2 ? SftSpec::golden_mean() : splice::random_sft(g);
    auto inst = splice::sample(x, 18, g);
    if (!inst) {
      if (++skipped > 5000) break;
      continue;
    }
    Pattern z = excise_and_replace(x, inst->x, inst->y, inst->f);
    bad += !admissible_1d(SubshiftHandle(x), z);
    ++done;
  }
  std::ostringstream d;
  d << done << " splices (golden mean and random SFTs), " << bad << " violations";
  return {done == 1000 && bad == 0, d.str()};
}

CombingConfig ac6_config() {
  CombingConfig c;
  c.tile_side = 6;
  c.eps = 0.3;
  c.window = 60;
  return c;
}

ChainReport& ac6_chain(double* secs = nullptr) {
  static double t_run = 0.0;
  static ChainReport r = [] {
    auto t = Clock::now();
    ChainReport out = run_chain(SftSpec::golden_mean(), ac6_config());
    t_run = since(t);
    return out;
  }();
  if (secs) *secs = t_run;
  return r;
}

Verdict ac6() {
  double secs = 0;
  const ChainReport& r = ac6_chain(&secs);
  bool drops = true;
  for (std::size_t i = 1; i < r.steps.size(); ++i) drops = drops && r.steps[i].drop < r.config.eps;
  std::size_t sandwich = 0;
  for (const auto& dr : r.decompositions) sandwich += !dr.declined && dr.e1 && dr.e2;
  const double h_end = r.steps.back().h;
  std::ostringstream d;
  d << r.steps.size() - 1 << " steps, census " << r.steps.front().census << " -> " << r.steps.back().census
    << ", terminal h " << h_end << ", E1/E2 at " << sandwich << " steps, " << secs << " s";
  bool ok = r.terminal && !r.truncated && r.census_strict && drops && h_end < r.config.eps && sandwich == 3 &&
            r.decompositions.size() == 3 && secs < 60.0;
  return {ok, d.str()};
}

Verdict ac7() {
  const ChainReport& r = ac6_chain();
  std::size_t bad = 0;
  for (const auto& s : r.steps) bad += !s.ratio_ok;
  std::ostringstream d;
  d << r.steps.size() << " steps checked, " << bad << " with a ratio above 2";
  return {bad == 0 && r.ratio_all, d.str()};
}

Verdict ac8() {
  GapReport g = product_gap_control(SftSpec::golden_mean(), SftSpec::full_shift(2, 1), 16, FiniteSet::interval(0, 12), 1);
  const double l2 = std::log(2.0);
  bool below = true;
  for (const auto& s : g.samples) below = below && s.gap <= l2 + 1e-12;
  double full = g.samples.empty() ? 0.0 : g.samples.front().gap;
  std::ostringstream d;
  d.precision(12);
  d << g.samples.size() << " samples, max gap " << g.max_gap << ", full system gap " << full;
  return {below && !g.samples.empty() && g.samples.front().label == "full" && std::abs(full - l2) < 1e-9, d.str()};
}

bool even_ok(const Word& w) {
  std::ptrdiff_t last = -1;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == 1) {
      if (last >= 0 && (static_cast<std::ptrdiff_t>(i) - last - 1) % 2) return false;
      last = static_cast<std::ptrdiff_t>(i);
    }
  return true;
}

Verdict ac9() {
  SoficPresentation w = sofic_from_json(read_json_file(data("even.json")));
  CombingConfig c;
  c.tile_side = 3;
  CoverConstruction cov = build_cover(w, c);
  bool ok = true;
  std::ostringstream d;
  for (Coord n : {9, 10, 12}) {
    FiniteSet f = FiniteSet::interval(0, n);
    bool onto = cover_projects_onto(cov, f);
    bool rules = cover_matches_rules(cov, f);
    std::size_t typing = typing_violations(cov, f);
    // image of the cover against brute force over the even shift
    std::size_t bf = 0;
    for (const auto& x : oracle::all_words(2, static_cast<std::size_t>(n))) bf += even_ok(x);
    BigInt img = enumerate_image(SubshiftHandle(cov.spec), cov.code, f).result.count;
    ok = ok && onto && rules && typing == 0 && img == bf;
    d << "F=[0," << n << "): image " << img << "/" << bf << " typing " << typing << "; ";
  }
  d << "tile side 3";
  return {ok, d.str()};
}

Verdict ac10() {
  auto t = Clock::now();
  WordSystem ws;
  bool ok = ws.frequency(1) == Rational(1, 3);
  for (int n = 1; n <= 4; ++n) ok = ok && ws.frequency(n) > Rational(1, 3) - Rational(1, 10);
  for (int n = 1; n <= 3; ++n) ok = ok && ws.frequency(n) - ws.frequency(n + 1) < Rational(1, 10) / Rational(1 << n);
  bool freq = ok;
  Word w4 = ws.word(4);
  std::mt19937_64 g(10);
  std::uniform_int_distribution<std::uint64_t> idx(0, w4.size() - 1);
  std::size_t mismatch = 0;
  for (int i = 0; i < 10000; ++i) {
    auto k = idx(g);
    mismatch += ws.omega_at(k) != w4[k];
  }
  bool found = true;
  for (int n = 1; n <= 3; ++n) {
    auto o = check_P3_window(ws, n, ws.L(4));
    // independent scan of the materialized word
    Word pat(2 * n + 1, 0);
    pat[n] = 1;
    auto it = std::search(w4.begin(), w4.end(), pat.begin(), pat.end());
    found = found && it != w4.end() && o.start == static_cast<std::uint64_t>(it - w4.begin());
  }
  bool lifts = true;
  for (std::int64_t k = 0; k <= 20; ++k) {
    // column 1 carries x*_1 = 1, column 0 carries x*_0 = 0
    FiniteSet f = k ? FiniteSet::box(Site::of(1, 0), Site::of(2, k)) : FiniteSet::box(Site::of(0, 0), Site::of(1, 3));
    lifts = lifts && lift_ones(ws, f) == static_cast<std::size_t>(k) && count_lifts(ws, f) == (1ull << k);
  }
  double secs = since(t);
  std::ostringstream d;
  d << "frequencies " << (freq ? "ok" : "bad") << ", lazy mismatches " << mismatch << "/10000, 0^n10^n "
    << (found ? "found" : "missing") << ", lifts " << (lifts ? "2^k" : "bad") << ", " << secs << " s";
  return {freq && mismatch == 0 && found && lifts && secs < 30.0, d.str()};
}

Refutation ac11_run() {
  WordSystem ws;
  auto o = check_P3_window(ws, 3, ws.L(4));
  Pattern z = lifted_column_window(ws, static_cast<std::int64_t>(o.center), 6, 4096, 7);
  return periodize_and_refute(z, 3, 2);
}

Verdict ac11() {
  Refutation r = ac11_run();
  std::ostringstream d;
  d << "repeat at rows " << r.l1 << ", " << r.l2 << "; row period " << r.row_period << ", " << r.blocks_checked
    << " 2x2 blocks checked, longest zero run " << r.longest_zero_run;
  bool ok = r.repeated.size() == 3 && r.row_period == 7 && r.blocks_occur && r.rows_periodic && r.forbidden_absent;
  return {ok, d.str()};
}

std::string cli_report(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return std::to_string(code) + "\n" + out.str();
}

Verdict ac12() {
  std::vector<std::string> comb{"comb", "--sft", data("golden.json"), "--L", "6", "--eps", "0.3", "--window", "60"};
  std::vector<std::string> refute{"cx", "refute", "--n", "3", "--k", "2", "--height", "4096", "--seed", "7"};
  std::string c1 = cli_report(comb), c2 = cli_report(comb);
  std::string r1 = cli_report(refute), r2 = cli_report(refute);
  bool ok = c1 == c2 && r1 == r2 && c1.rfind("0\n", 0) == 0 && r1.rfind("0\n", 0) == 0;
  std::ostringstream d;
  d << "comb report " << c1.size() << " bytes " << (c1 == c2 ? "identical" : "differs") << ", refute report "
    << r1.size() << " bytes " << (r1 == r2 ? "identical" : "differs");
  return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shiftforge acceptance suite"};
  data_dir = "data";
  std::vector<std::string> known;
  std::vector<int> only;
  app.add_option("--data", data_dir, "directory with the example JSON files");
  app.add_option("--known-fail", known, "criteria (e.g. AC3) whose failure is documented and does not set the exit status");
  app.add_option("--only", only, "run only these criterion numbers");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Verdict()>> acs{ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10, ac11, ac12};
  int unexpected = 0;
  for (std::size_t i = 0; i < acs.size(); ++i) {
    const int n = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) continue;
    const std::string name = "AC" + std::to_string(n);
    Verdict v;
    try {
      v = acs[i]();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const bool is_known = std::find(known.begin(), known.end(), name) != known.end();
    std::cout << name << " " << (v.pass ? "PASS" : "FAIL") << (is_known && !v.pass ? " (known)" : "") << "  "
              << v.detail << std::endl;
    if (!v.pass && !is_known) ++unexpected;
  }
  return unexpected ? 1 : 0;
}
