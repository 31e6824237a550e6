#include "shiftforge/counterexample.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <string>

#include "shiftforge/errors.hpp"

namespace shiftforge {

WordSystem::WordSystem(std::uint32_t inv_delta, int materialize_cap) : inv_delta_(inv_delta), cap_(materialize_cap) {
  if (inv_delta == 0) throw PreconditionError("inv_delta must be positive");
  if (materialize_cap < 1) throw PreconditionError("materialization cap must be at least 1");
  t_.resize(1);
  l_.resize(1);
  ones_.resize(1);
}

void WordSystem::extend(int n) {
  if (n < 1) throw PreconditionError("levels start at 1");
  if (n > 4096) throw CapExceeded("level " + std::to_string(n) + " above 4096");
  while (static_cast<int>(l_.size()) <= n) {
    int m = static_cast<int>(l_.size());
    BigInt t = BigInt(2) * m * (BigInt(1) << m) * inv_delta_ + 1;
    if (m == 1) {
      l_.push_back(3);
      ones_.push_back(1);
    } else {
      l_.push_back(t_[m - 1] * l_[m - 1] + 2 * (m - 1) + 1);
      ones_.push_back(t_[m - 1] * ones_[m - 1] + 1);
    }
    t_.push_back(t);
  }
}

const BigInt& WordSystem::T(int n) {
  extend(n);
  return t_[n];
}

const BigInt& WordSystem::L(int n) {
  extend(n);
  return l_[n];
}

const BigInt& WordSystem::ones(int n) {
  extend(n);
  return ones_[n];
}

Rational WordSystem::frequency(int n) { return Rational(ones(n), L(n)); }

Word WordSystem::word(int n) {
  if (n < 1) throw PreconditionError("levels start at 1");
  if (n > cap_)
    throw CapExceeded("w^" + std::to_string(n) + " is above the materialization cap " + std::to_string(cap_) +
                      "; use the lazy indexer");
  Word w{0, 1, 0};
  for (int m = 1; m < n; ++m) {
    auto reps = T(m).convert_to<std::uint64_t>();
    Word next;
    next.reserve(L(m + 1).convert_to<std::size_t>());
    for (std::uint64_t r = 0; r < reps; ++r) next.insert(next.end(), w.begin(), w.end());
    next.insert(next.end(), static_cast<std::size_t>(m), 0);
    next.push_back(1);
    next.insert(next.end(), static_cast<std::size_t>(m), 0);
    w = std::move(next);
  }
  return w;
}

int WordSystem::omega_at(const BigInt& i0) {
  if (i0 < 0) throw PreconditionError("omega_at takes a nonnegative index");
  int m = 1;
  while (L(m) <= i0) ++m;
  BigInt i = i0;
  while (m > 1) {
    int n = m - 1;
    BigInt body = T(n) * L(n);
    if (i < body) {
      i %= L(n);
      m = n;
    } else {
      return (i - body) == n ? 1 : 0;
    }
  }
  return i == 1 ? 1 : 0;
}

namespace {

// Emits w^m; returns false once the consumer stops.
bool emit_level(WordSystem& ws, int m, std::uint64_t& left, const std::function<bool(int)>& emit) {
  auto put = [&](int b) {
    if (left == 0) return false;
    --left;
    return emit(b);
  };
  if (m == 1) return put(0) && put(1) && put(0);
  const BigInt& t = ws.T(m - 1);
  for (BigInt r = 0; r < t; ++r)
    if (!emit_level(ws, m - 1, left, emit)) return false;
  int n = m - 1;
  for (int j = 0; j < 2 * n + 1; ++j)
    if (!put(j == n ? 1 : 0)) return false;
  return true;
}

}  // namespace

void WordSystem::scan(std::uint64_t limit, const std::function<bool(int)>& emit) {
  int m = 1;
  while (L(m) < limit) ++m;
  std::uint64_t left = limit;
  emit_level(*this, m, left, emit);
}

P3Occurrence check_P3_window(WordSystem& ws, int n, const BigInt& radius) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  if (radius < ws.L(n + 1))
    throw PreconditionError("radius " + to_string(radius) + " is below L_" + std::to_string(n + 1) + " = " +
                            to_string(ws.L(n + 1)));
  std::uint64_t limit = radius > BigInt(std::numeric_limits<std::uint64_t>::max() - 1)
                            ? std::numeric_limits<std::uint64_t>::max()
                            : static_cast<std::uint64_t>(radius) + 1;
  // State: zeros before the last 1 (if any) and zeros since it.
  std::uint64_t idx = 0, run = 0, before = 0;
  bool seen_one = false;
  std::optional<P3Occurrence> hit;
  std::uint64_t un = static_cast<std::uint64_t>(n);
  ws.scan(limit, [&](int b) {
    if (b == 1) {
      before = run;
      run = 0;
      seen_one = true;
    } else {
      ++run;
      if (seen_one && before >= un && run == un) {
        P3Occurrence o;
        o.n = n;
        o.center = idx - un;
        o.start = o.center - un;
        hit = o;
        return false;
      }
    }
    ++idx;
    return true;
  });
  if (!hit)
    throw Error("0^" + std::to_string(n) + " 1 0^" + std::to_string(n) + " not found within radius " +
                to_string(radius));
  return *hit;
}

namespace {

void add_subwords(std::set<Word>& out, const Word& s, std::size_t n) {
  if (s.size() < n) return;
  for (std::size_t i = 0; i + n <= s.size(); ++i) out.emplace(s.begin() + i, s.begin() + i + n);
}

Word cat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace

std::set<Word> x_star_subwords(WordSystem& ws, std::size_t n) {
  if (n == 0) return {Word{}};
  if (n > 4096) throw CapExceeded("subword length above 4096");
  // Level m is described by its subwords S, its first and last n - 1
  // symbols; below that length the word itself is kept.
  std::size_t keep = n - 1;
  Word full{0, 1, 0};
  bool explicit_word = true;
  std::set<Word> subs;
  Word pre, suf;
  add_subwords(subs, full, n);
  int top = static_cast<int>(n) + 2;
  for (int m = 1; m < top; ++m) {
    Word tail(static_cast<std::size_t>(m), 0);
    tail.push_back(1);
    tail.insert(tail.end(), static_cast<std::size_t>(m), 0);
    if (explicit_word) {
      if (full.size() < keep + 1) {
        // Still short: materialize the next level.
        Word next;
        auto reps = ws.T(m).convert_to<std::uint64_t>();
        for (std::uint64_t r = 0; r < reps; ++r) next.insert(next.end(), full.begin(), full.end());
        next.insert(next.end(), tail.begin(), tail.end());
        full = std::move(next);
        add_subwords(subs, full, n);
        continue;
      }
      pre.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(keep));
      suf.assign(full.end() - static_cast<std::ptrdiff_t>(keep), full.end());
      explicit_word = false;
    }
    add_subwords(subs, cat(suf, pre), n);
    Word end = cat(suf, tail);
    add_subwords(subs, end, n);
    suf.assign(end.end() - static_cast<std::ptrdiff_t>(keep), end.end());
  }
  std::set<Word> out = subs;
  for (const auto& w : subs) out.emplace(w.rbegin(), w.rend());
  // Windows crossing the origin.
  for (std::int64_t a = -static_cast<std::int64_t>(n) + 1; a < 0; ++a) {
    Word w;
    for (std::size_t j = 0; j < n; ++j) w.push_back(static_cast<Symbol>(ws.x_star(a + static_cast<std::int64_t>(j))));
    out.insert(w);
  }
  return out;
}

Alphabet lift_alphabet() { return Alphabet({"0", "1", "1'"}); }

namespace {

void require_box2(const FiniteSet& f) {
  if (f.dim() != 2) throw DimensionMismatch("lift windows are two-dimensional");
  if (f.empty()) throw PreconditionError("empty lift window");
  Site lo = f.min_corner(), hi = f.max_corner();
  if (FiniteSet::box(lo, Site::of(hi[0] + 1, hi[1] + 1)) != f) throw PreconditionError("lift window must be a box");
}

}  // namespace

std::size_t lift_ones(WordSystem& ws, const FiniteSet& f) {
  require_box2(f);
  std::size_t k = 0;
  for (const auto& s : f) k += static_cast<std::size_t>(ws.x_star(s[0]));
  return k;
}

Pattern lift_window(WordSystem& ws, const FiniteSet& f, const std::vector<bool>& primes) {
  require_box2(f);
  Word labels;
  labels.reserve(f.size());
  std::size_t j = 0;
  std::map<Coord, int> col;
  for (const auto& s : f) {
    auto it = col.find(s[0]);
    if (it == col.end()) it = col.emplace(s[0], ws.x_star(s[0])).first;
    if (it->second == 0) {
      labels.push_back(0);
    } else {
      if (j >= primes.size()) throw PreconditionError("prime choices shorter than the number of one-cells");
      labels.push_back(primes[j++] ? 2 : 1);
    }
  }
  if (j != primes.size()) throw PreconditionError("prime choices longer than the number of one-cells");
  return Pattern(f, labels);
}

std::uint64_t count_lifts(WordSystem& ws, const FiniteSet& f, std::size_t max_ones) {
  std::size_t k = lift_ones(ws, f);
  if (k > max_ones || k > 40) throw CapExceeded(std::to_string(k) + " one-cells exceed the lift cap");
  std::set<Word> seen;
  std::vector<bool> primes(k);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    for (std::size_t j = 0; j < k; ++j) primes[j] = (mask >> j) & 1;
    seen.insert(lift_window(ws, f, primes).labels);
  }
  return seen.size();
}

Pattern lifted_column_window(WordSystem& ws, std::int64_t center, std::int64_t half, std::int64_t height,
                             std::optional<std::uint64_t> seed) {
  if (half < 0 || height < 1) throw PreconditionError("bad lift window size");
  FiniteSet f = FiniteSet::box(Site::of(-half, 0), Site::of(half + 1, height));
  std::mt19937_64 gen(seed.value_or(0));
  Word labels;
  labels.reserve(f.size());
  for (const auto& s : f) {
    int x = ws.x_star(center + s[0]);
    if (x == 0)
      labels.push_back(0);
    else
      labels.push_back(seed ? static_cast<Symbol>(1 + (gen() & 1)) : 1);
  }
  return Pattern(f, labels);
}

LiftEntropy lift_entropy(WordSystem& ws, std::int64_t radius) {
  if (radius < 0) throw PreconditionError("radius must be nonnegative");
  LiftEntropy e;
  e.radius = radius;
  for (std::int64_t i = -radius; i <= radius; ++i) e.ones += static_cast<std::uint64_t>(ws.x_star(i));
  std::uint64_t side = static_cast<std::uint64_t>(2 * radius + 1);
  e.cells = side * side;
  e.log2_count = BigInt(e.ones) * side;
  e.density = static_cast<double>(e.ones) / static_cast<double>(side);
  e.above = BigInt(10) * e.log2_count >= BigInt(e.cells);
  return e;
}

Refutation periodize_and_refute(const Pattern& z, int n, int k) {
  if (k < 1) throw PreconditionError("k must be at least 1");
  if (n <= k) throw PreconditionError("n must exceed k (n = " + std::to_string(n) + ", k = " + std::to_string(k) + ")");
  if (n > 20) throw CapExceeded("n above 20");
  require_box2(z.domain);
  Site lo = z.domain.min_corner(), hi = z.domain.max_corner();
  Coord x0 = lo[0], x1 = hi[0], y0 = lo[1], y1 = hi[1];
  Coord height = y1 - y0 + 1;
  auto at = [&](Coord x, Coord y) { return z.labels[static_cast<std::size_t>((x - x0) * height + (y - y0))]; };
  for (auto s : z.labels)
    if (s > 2) throw InputError("window labels must be 0, 1 or 1'");
  if (height <= (Coord{1} << n) * n)
    throw PreconditionError("window height " + std::to_string(height) + " is not above 2^n n = " +
                            std::to_string((Coord{1} << n) * n));

  auto column_is = [&](Coord x, bool ones) {
    for (Coord y = y0; y <= y1; ++y)
      if ((at(x, y) != 0) != ones) return false;
    return true;
  };
  std::optional<Coord> col;
  for (Coord c = x0 + n; c + n <= x1 && !col; ++c) {
    if (!column_is(c, true)) continue;
    bool flanked = true;
    for (Coord d = 1; d <= n && flanked; ++d) flanked = column_is(c - d, false) && column_is(c + d, false);
    if (flanked) col = c;
  }
  if (!col)
    throw PreconditionError("no column of ones flanked by " + std::to_string(n) +
                            " zero columns on each side in the window");
  Coord c = *col;

  Refutation r;
  r.n = n;
  r.k = k;
  r.column = c;
  // First pair l1 < l2 with equal vertical words of length n, l2 - l1 > n.
  auto vword = [&](Coord y) {
    Word w;
    for (Coord j = 0; j < n; ++j) w.push_back(at(c, y + j));
    return w;
  };
  std::map<Word, std::vector<Coord>> starts;
  bool found = false;
  for (Coord l2 = y0; l2 + n - 1 <= y1 && !found; ++l2) {
    Word w = vword(l2);
    auto& v = starts[w];
    for (Coord l1 : v)
      if (l2 - l1 > n) {
        r.l1 = l1;
        r.l2 = l2;
        r.repeated = w;
        found = true;
        break;
      }
    v.push_back(l2);
  }
  if (!found) throw PreconditionError("no repeated vertical word of length " + std::to_string(n) + " in the window");

  Coord pw = 2 * n + 1, ph = r.l2 - r.l1;
  r.row_period = pw;
  r.column_period = ph;
  {
    FiniteSet rect = FiniteSet::box(Site::of(c - n, r.l1), Site::of(c + n + 1, r.l2));
    r.rectangle = z.restrict_to(rect);
  }
  auto zp = [&](Coord x, Coord y) {
    Coord u = ((x % pw) + pw) % pw, v = ((y % ph) + ph) % ph;
    return at(c - n + u, r.l1 + v);
  };

  // k x k blocks of z, column-major inside the block.
  std::set<Word> blocks;
  for (Coord x = x0; x + k - 1 <= x1; ++x)
    for (Coord y = y0; y + k - 1 <= y1; ++y) {
      Word b;
      for (Coord a = 0; a < k; ++a)
        for (Coord d = 0; d < k; ++d) b.push_back(at(x + a, y + d));
      blocks.insert(std::move(b));
    }
  r.blocks_occur = true;
  for (Coord i = 0; i < pw && r.blocks_occur; ++i)
    for (Coord j = 0; j < ph; ++j) {
      Word b;
      for (Coord a = 0; a < k; ++a)
        for (Coord d = 0; d < k; ++d) b.push_back(zp(i + a, j + d));
      ++r.blocks_checked;
      if (!blocks.count(b)) {
        r.blocks_occur = false;
        r.missing_block = Site::of(i, j);
        break;
      }
    }

  // Rows of z' and of pi(z').
  r.rows_periodic = true;
  std::size_t longest = 0;
  bool word_seen = false;
  Word target(static_cast<std::size_t>(3 * n), 0);
  target.push_back(1);
  target.insert(target.end(), static_cast<std::size_t>(3 * n), 0);
  Coord span = 2 * pw + static_cast<Coord>(target.size());
  for (Coord j = 0; j < ph; ++j) {
    Word row;
    for (Coord i = 0; i < span; ++i) row.push_back(zp(i, j) ? 1 : 0);
    for (Coord i = 0; i + pw < span; ++i)
      if (zp(i, j) != zp(i + pw, j)) r.rows_periodic = false;
    std::size_t run = 0;
    for (auto s : row) {
      run = s ? 0 : run + 1;
      longest = std::max(longest, run);
    }
    if (std::search(row.begin(), row.end(), target.begin(), target.end()) != row.end()) word_seen = true;
  }
  r.longest_zero_run = longest;
  r.forbidden_absent = r.rows_periodic && !word_seen && longest < static_cast<std::size_t>(3 * n);
  return r;
}

}  // namespace shiftforge
