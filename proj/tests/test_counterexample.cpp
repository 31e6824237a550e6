#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "shiftforge/counterexample.hpp"
#include "shiftforge/errors.hpp"

using namespace shiftforge;

namespace {

// w^n as a string, straight from the recursion.
std::string oracle_word(int n) {
  std::string w = "010";
  for (int k = 1; k < n; ++k) {
    std::uint64_t t = 2ull * k * (1ull << k) * 10 + 1;
    std::string next;
    next.reserve(w.size() * t + 2 * k + 1);
    for (std::uint64_t i = 0; i < t; ++i) next += w;
    next += std::string(k, '0') + "1" + std::string(k, '0');
    w = std::move(next);
  }
  return w;
}

const std::string& w4() {
  static const std::string w = oracle_word(4);
  return w;
}

}  // namespace

TEST_CASE("lengths and counts") {
  WordSystem ws;
  CHECK(ws.T(1) == 41);
  CHECK(ws.T(2) == 161);
  CHECK(ws.T(3) == 481);
  CHECK(ws.T(4) == 1281);
  CHECK(ws.L(1) == 3);
  CHECK(ws.L(2) == 126);
  CHECK(ws.L(3) == 20291);
  CHECK(ws.L(4) == 9759978);
  CHECK(ws.L(5) == BigInt("12502531827"));
  for (int n = 1; n <= 3; ++n) {
    std::string w = oracle_word(n);
    CHECK(ws.L(n) == w.size());
    CHECK(ws.ones(n) == static_cast<unsigned>(std::count(w.begin(), w.end(), '1')));
  }
  CHECK(ws.L(4) == w4().size());
  CHECK(ws.ones(4) == static_cast<unsigned>(std::count(w4().begin(), w4().end(), '1')));
}

TEST_CASE("frequencies") {
  WordSystem ws;
  CHECK(ws.frequency(1) == Rational(1, 3));
  CHECK(ws.frequency(3) == Rational(6763, 20291));
  for (int n = 1; n <= 4; ++n) CHECK(ws.frequency(n) > Rational(1, 3) - Rational(1, 10));
  for (int n = 1; n <= 3; ++n) {
    CHECK(ws.frequency(n) - ws.frequency(n + 1) < Rational(1, 10) / Rational(1 << n));
    CHECK(ws.frequency(n + 1) <= ws.frequency(n));  // f2 = f1 = 1/3
  }
}

TEST_CASE("materialized words and lazy indexing") {
  WordSystem ws;
  for (int n = 1; n <= 3; ++n) {
    Word w = ws.word(n);
    std::string s = oracle_word(n);
    REQUIRE(w.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      if (w[i] != s[i] - '0') FAIL("mismatch at " << i);
  }
  CHECK_THROWS_AS(ws.word(5), CapExceeded);
  std::mt19937_64 g(51);
  std::uniform_int_distribution<std::uint64_t> idx(0, w4().size() - 1);
  for (int it = 0; it < 10000; ++it) {
    auto i = idx(g);
    if (ws.omega_at(i) != w4()[i] - '0') FAIL("omega mismatch at " << i);
  }
  for (std::int64_t i = -50; i <= 50; ++i) CHECK(ws.x_star(i) == w4()[static_cast<std::size_t>(i < 0 ? -i : i)] - '0');
  std::string scanned;
  ws.scan(30000, [&](int b) {
    scanned += static_cast<char>('0' + b);
    return true;
  });
  CHECK(scanned == w4().substr(0, 30000));
}

TEST_CASE("first occurrences of 0^n 1 0^n") {
  WordSystem ws;
  for (int n = 1; n <= 3; ++n) {
    std::string pat = std::string(n, '0') + "1" + std::string(n, '0');
    auto o = check_P3_window(ws, n, ws.L(4));
    CHECK(o.n == n);
    CHECK(o.start == w4().find(pat));
    CHECK(o.center == o.start + static_cast<unsigned>(n));
    CHECK_THROWS_AS(check_P3_window(ws, n, ws.L(n + 1) - 1), PreconditionError);
  }
  CHECK(check_P3_window(ws, 3, ws.L(4)).start == 20285);
  CHECK(check_P3_window(ws, 2, ws.L(4)).start == 2);
}

TEST_CASE("subwords of x*") {
  WordSystem ws;
  // the reversed w^4, the origin, then w^4: a window of x*
  std::string both(w4().rbegin(), w4().rend() - 1);
  both += w4();
  for (std::size_t n = 1; n <= 10; ++n) {
    auto sub = x_star_subwords(ws, n);
    std::vector<bool> seen(1u << n, false);
    unsigned key = 0, mask = (1u << n) - 1;
    for (std::size_t i = 0; i < both.size(); ++i) {
      key = ((key << 1) | static_cast<unsigned>(both[i] - '0')) & mask;
      if (i + 1 >= n) seen[key] = true;
    }
    std::size_t count = 0;
    for (unsigned k = 0; k <= mask; ++k) {
      if (!seen[k]) continue;
      ++count;
      Word w(n);
      for (std::size_t j = 0; j < n; ++j) w[j] = static_cast<Symbol>((k >> (n - 1 - j)) & 1);
      CHECK(sub.count(w) == 1);
    }
    CHECK(sub.size() >= count);
    for (const auto& w : sub)
      for (std::size_t j = 0; j + 1 < w.size(); ++j) CHECK_FALSE((w[j] == 1 && w[j + 1] == 1));
  }
}

TEST_CASE("lifts") {
  WordSystem ws;
  CHECK(lift_alphabet().size() == 3);
  for (std::int64_t h = 1; h <= 20; ++h) {
    // one column of ones (x*_1 = 1), h rows
    FiniteSet f = FiniteSet::box(Site::of(1, 0), Site::of(2, h));
    CHECK(lift_ones(ws, f) == static_cast<std::size_t>(h));
    CHECK(count_lifts(ws, f) == (1ull << h));
  }
  FiniteSet f = FiniteSet::box(Site::of(-3, 0), Site::of(4, 2));
  std::size_t k = lift_ones(ws, f);
  Pattern p = lift_window(ws, f, std::vector<bool>(k, true));
  for (const auto& s : f) CHECK(p.at(s) == (ws.x_star(s[0]) ? 2 : 0));
  CHECK_THROWS_AS(lift_window(ws, f, std::vector<bool>(k + 1, false)), PreconditionError);
  CHECK_THROWS_AS(count_lifts(ws, FiniteSet::box(Site::of(1, 0), Site::of(2, 30)), 24), CapExceeded);
}

TEST_CASE("lift entropy lower bound") {
  WordSystem ws;
  for (std::int64_t r : {1, 10, 63, 500}) {
    auto e = lift_entropy(ws, r);
    std::uint64_t ones = 0;
    for (std::int64_t i = -r; i <= r; ++i) ones += w4()[static_cast<std::size_t>(i < 0 ? -i : i)] - '0';
    CHECK(e.ones == ones);
    CHECK(e.cells == static_cast<std::uint64_t>((2 * r + 1) * (2 * r + 1)));
    CHECK(e.log2_count == BigInt(ones) * (2 * r + 1));
    CHECK(e.above == (10 * ones >= static_cast<std::uint64_t>(2 * r + 1)));
    CHECK(e.above);
  }
}

TEST_CASE("periodization refutes the lift") {
  WordSystem ws;
  const std::int64_t center = 20288, half = 6;
  Pattern z = lifted_column_window(ws, center, half, 4096, 7);
  for (std::int64_t x = -half; x <= half; ++x) {
    int bit = ws.x_star(center + x);
    for (std::int64_t y : {0, 17, 4095}) {
      Symbol s = z.at(Site::of(x, y));
      CHECK((bit ? s != 0 : s == 0));
    }
  }
  Refutation r = periodize_and_refute(z, 3, 2);
  CHECK(r.row_period == 7);
  CHECK(r.column_period == r.l2 - r.l1);
  CHECK(r.column_period > 3);
  CHECK(r.blocks_occur);
  CHECK(r.rows_periodic);
  CHECK(r.forbidden_absent);
  CHECK(r.blocks_checked == static_cast<std::size_t>(7 * r.column_period));

  // independent check: tile the rectangle, every 2x2 block occurs in z,
  // and no row contains 0^9 1 0^9
  const Pattern& rect = r.rectangle;
  const Site lo = rect.domain.min_corner();
  const Coord w = 7, h = r.column_period;
  auto zp = [&](Coord x, Coord y) { return rect.at(Site::of(lo[0] + ((x % w) + w) % w, lo[1] + ((y % h) + h) % h)); };
  std::set<std::array<Symbol, 4>> in_z;
  const Site zl = z.domain.min_corner(), zh = z.domain.max_corner();
  for (Coord x = zl[0]; x < zh[0]; ++x)
    for (Coord y = zl[1]; y < zh[1]; ++y)
      in_z.insert({z.at(Site::of(x, y)), z.at(Site::of(x, y + 1)), z.at(Site::of(x + 1, y)), z.at(Site::of(x + 1, y + 1))});
  for (Coord x = 0; x < w; ++x)
    for (Coord y = 0; y < h; ++y) CHECK(in_z.count({zp(x, y), zp(x, y + 1), zp(x + 1, y), zp(x + 1, y + 1)}) == 1);
  for (Coord y = 0; y < h; ++y) {
    std::string row;
    for (Coord x = 0; x < 40; ++x) row += zp(x, y) ? '1' : '0';
    CHECK(row.find(std::string(9, '0') + "1" + std::string(9, '0')) == std::string::npos);
  }
}

TEST_CASE("periodization refusals") {
  WordSystem ws;
  Pattern z = lifted_column_window(ws, 20288, 6, 4096, 7);
  CHECK_THROWS_AS(periodize_and_refute(z, 2, 2), PreconditionError);
  Pattern short_z = lifted_column_window(ws, 20288, 6, 20, 7);
  CHECK_THROWS_AS(periodize_and_refute(short_z, 3, 2), PreconditionError);
  // no column of ones flanked by three zero columns
  Pattern dense = lifted_column_window(ws, 1, 4, 4096, std::nullopt);
  CHECK_THROWS_AS(periodize_and_refute(dense, 3, 2), PreconditionError);
}
