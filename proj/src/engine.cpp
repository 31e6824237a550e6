#include "shiftforge/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "shiftforge/errors.hpp"
#include "shiftforge/kernels.hpp"

namespace shiftforge {

namespace {

constexpr std::size_t kDenseMaskLimit = 4096;
constexpr std::size_t kDensePowerLimit = 1024;

// A constraint on a line segment: labels at start + offsets[i].
struct LineConstraint {
  std::vector<std::uint32_t> offsets;
  std::uint32_t length = 0;
  const Word* forbidden = nullptr;  // null for a base-window check
};

std::vector<LineConstraint> line_constraints(const SubshiftHandle& x, std::size_t& span) {
  std::vector<LineConstraint> out;
  const auto& k = x.base.window();
  LineConstraint base;
  const Coord kmin = k[0].c[0];
  for (const auto& s : k) base.offsets.push_back(static_cast<std::uint32_t>(s.c[0] - kmin));
  base.length = base.offsets.back() + 1;
  span = base.length;
  out.push_back(std::move(base));
  for (const auto& p : x.extra_forbidden) {
    LineConstraint c;
    const Coord pmin = p.domain[0].c[0];
    for (const auto& s : p.domain) c.offsets.push_back(static_cast<std::uint32_t>(s.c[0] - pmin));
    c.length = c.offsets.back() + 1;
    c.forbidden = &p.labels;
    span = std::max<std::size_t>(span, c.length);
    out.push_back(std::move(c));
  }
  return out;
}

bool passes(const SftSpec& base, const LineConstraint& c, const Symbol* w, std::size_t start, Word& buf) {
  buf.resize(c.offsets.size());
  for (std::size_t j = 0; j < c.offsets.size(); ++j) buf[j] = w[start + c.offsets[j]];
  if (c.forbidden) return buf != *c.forbidden;
  return base.allows(buf);
}

// Power iteration on (A + I) for one strongly connected component, with
// Collatz-Wielandt bounds as the stopping rule.
double component_radius(const std::vector<std::uint32_t>& members,
                        const std::vector<std::vector<std::pair<std::uint32_t, double>>>& adj,
                        const std::vector<std::int64_t>& local) {
  const std::size_t k = members.size();
  std::vector<double> x(k, 1.0), y(k, 0.0);
  std::vector<double> dense;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> sparse;
  const bool use_dense = k <= kDensePowerLimit;
  if (use_dense) {
    dense.assign(k * k, 0.0);
    for (std::size_t r = 0; r < k; ++r) {
      dense[r * k + r] += 1.0;
      for (auto [v, w] : adj[members[r]])
        if (local[v] >= 0)
          dense[r * k + static_cast<std::size_t>(local[v])] += w;
    }
  } else {
    sparse.resize(k);
    for (std::size_t r = 0; r < k; ++r) {
      sparse[r].push_back({static_cast<std::uint32_t>(r), 1.0});
      for (auto [v, w] : adj[members[r]])
        if (local[v] >= 0)
          sparse[r].push_back({static_cast<std::uint32_t>(local[v]), w});
    }
  }
  const std::size_t max_iter = std::max<std::size_t>(5000, 4'000'000'000ULL / (k * k + 1));
  double lo = 0.0, hi = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    if (use_dense) {
      kernels::matvec(dense.data(), x.data(), y.data(), k);
    } else {
      for (std::size_t r = 0; r < k; ++r) {
        double s = 0.0;
        for (auto [c, w] : sparse[r]) s += w * x[c];
        y[r] = s;
      }
    }
    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    double top = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double q = y[i] / x[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      top = std::max(top, y[i]);
    }
    if (hi - lo <= 1e-14 * hi) break;
    for (std::size_t i = 0; i < k; ++i) x[i] = y[i] / top;
  }
  return 0.5 * (lo + hi) - 1.0;
}

}  // namespace

double spectral_radius(const std::vector<std::vector<std::pair<std::uint32_t, double>>>& adj) {
  const std::size_t n = adj.size();
  // Iterative Tarjan.
  std::vector<std::int64_t> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  std::int64_t counter = 0, ncomp = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei == 0 && index[v] < 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (ei < adj[v].size()) {
        const std::uint32_t w = adj[v][ei].first;
        ++ei;
        if (index[w] < 0) {
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  std::vector<std::vector<std::uint32_t>> members(static_cast<std::size_t>(ncomp));
  for (std::uint32_t v = 0; v < n; ++v) members[static_cast<std::size_t>(comp[v])].push_back(v);
  std::vector<std::int64_t> local(n, -1);
  double rho = 0.0;
  for (const auto& m : members) {
    if (m.size() == 1) {
      for (auto [w, wt] : adj[m[0]])
        if (w == m[0]) rho = std::max(rho, wt);
      continue;
    }
    for (std::size_t i = 0; i < m.size(); ++i) local[m[i]] = static_cast<std::int64_t>(i);
    rho = std::max(rho, component_radius(m, adj, local));
    for (auto v : m) local[v] = -1;
  }
  return rho;
}

std::size_t TransferGraph::BitsHash::operator()(const Bits& b) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (auto w : b) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

TransferGraph::TransferGraph(const SubshiftHandle& x, std::size_t vertex_cap) {
  if (x.dim() != 1) throw DimensionMismatch("transfer graph requires a one-dimensional subshift");
  alphabet_size_ = x.alphabet().size();
  const auto constraints = line_constraints(x, span_);
  const std::size_t m = span_;

  // Locally admissible words of length m, depth first, symbols in order.
  std::vector<std::vector<const LineConstraint*>> ending(m);
  for (const auto& c : constraints)
    for (std::size_t i = c.length - 1; i < m; ++i) ending[i].push_back(&c);
  // Partial placements of the base window must extend to an allowed word.
  const LineConstraint& base = constraints.front();
  std::vector<std::int64_t> base_index(base.length, -1);
  for (std::size_t j = 0; j < base.offsets.size(); ++j) base_index[base.offsets[j]] = static_cast<std::int64_t>(j);
  std::vector<std::unordered_set<std::string>> prefixes(base.offsets.size());
  for (const auto& a : x.base.allowed())
    for (std::size_t j = 1; j < a.size(); ++j) prefixes[j].insert(word_key(Word(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(j))));
  auto prefix_ok = [&](const Word& w, std::size_t i, Word& buf) {
    const std::size_t lo = i + 1 >= base.length ? i + 1 - base.length : 0;
    for (std::size_t s = lo; s <= i && s + base.length <= m; ++s) {
      const auto j = base_index[i - s];
      if (j < 0 || static_cast<std::size_t>(j) + 1 == base.offsets.size()) continue;
      buf.resize(static_cast<std::size_t>(j) + 1);
      for (std::size_t t = 0; t <= static_cast<std::size_t>(j); ++t) buf[t] = w[s + base.offsets[t]];
      if (!prefixes[static_cast<std::size_t>(j) + 1].count(word_key(buf))) return false;
    }
    return true;
  };

  std::vector<Word> words;
  Word w(m, 0), buf;
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (i == m) {
      if (words.size() >= vertex_cap) throw CapExceeded("transfer graph exceeds the vertex cap");
      words.push_back(w);
      return;
    }
    for (std::size_t s = 0; s < alphabet_size_; ++s) {
      w[i] = static_cast<Symbol>(s);
      bool ok = prefix_ok(w, i, buf);
      for (const auto* c : ending[i]) {
        if (!ok) break;
        ok = passes(x.base, *c, w.data(), i + 1 - c->length, buf);
      }
      if (ok) dfs(i + 1);
    }
  };
  dfs(0);

  // Overlap edges u -> v when u[1:] == v[:-1].
  const std::size_t n = words.size();
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_prefix;
  for (std::uint32_t v = 0; v < n; ++v) {
    Word pre(words[v].begin(), words[v].end() - 1);
    by_prefix[word_key(pre)].push_back(v);
  }
  std::vector<std::vector<std::uint32_t>> out(n), in(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    Word suf(words[u].begin() + 1, words[u].end());
    auto it = by_prefix.find(word_key(suf));
    if (it == by_prefix.end()) continue;
    out[u] = it->second;
    for (auto v : it->second) in[v].push_back(u);
  }

  // Essential part: repeatedly drop sources and sinks.
  std::vector<std::size_t> indeg(n), outdeg(n);
  std::vector<bool> alive(n, true);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t v = 0; v < n; ++v) {
    indeg[v] = in[v].size();
    outdeg[v] = out[v].size();
    if (indeg[v] == 0 || outdeg[v] == 0) {
      alive[v] = false;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const auto v = queue.back();
    queue.pop_back();
    for (auto u : in[v])
      if (alive[u] && --outdeg[u] == 0) {
        alive[u] = false;
        queue.push_back(u);
      }
    for (auto u : out[v])
      if (alive[u] && --indeg[u] == 0) {
        alive[u] = false;
        queue.push_back(u);
      }
  }
  std::vector<std::int64_t> remap(n, -1);
  for (std::uint32_t v = 0; v < n; ++v)
    if (alive[v]) {
      remap[v] = static_cast<std::int64_t>(vertices_.size());
      vertices_.push_back(std::move(words[v]));
    }
  succ_.resize(vertices_.size());
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    auto& s = succ_[static_cast<std::size_t>(remap[v])];
    for (auto u : out[v])
      if (alive[u]) s.push_back(static_cast<std::uint32_t>(remap[u]));
  }
  words_ = (vertices_.size() + 63) / 64;
  if (vertices_.size() <= kDenseMaskLimit) {
    succ_masks_.assign(vertices_.size(), Bits(words_, 0));
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      for (auto u : succ_[v]) succ_masks_[v][u / 64] |= std::uint64_t{1} << (u % 64);
  }
}

TransferGraph::Bits TransferGraph::all_bits() const {
  Bits b(words_, ~std::uint64_t{0});
  if (const std::size_t r = vertices_.size() % 64; r != 0 && words_ > 0) b.back() = (std::uint64_t{1} << r) - 1;
  return b;
}

TransferGraph::Bits TransferGraph::successor_set(const Bits& s) const {
  Bits out(words_, 0);
  for (std::size_t wi = 0; wi < words_; ++wi) {
    std::uint64_t word = s[wi];
    while (word) {
      const int bit = __builtin_ctzll(word);
      word &= word - 1;
      const std::size_t v = wi * 64 + static_cast<std::size_t>(bit);
      if (!succ_masks_.empty()) {
        kernels::bits_or(out.data(), succ_masks_[v].data(), words_);
      } else {
        for (auto u : succ_[v]) out[u / 64] |= std::uint64_t{1} << (u % 64);
      }
    }
  }
  return out;
}

std::vector<TransferGraph::Bits> TransferGraph::symbol_masks(const std::vector<Symbol>* code,
                                                            std::size_t& symbols) const {
  symbols = alphabet_size_;
  if (code) {
    if (code->size() != alphabet_size_) throw PreconditionError("code table does not match the alphabet");
    symbols = 0;
    for (auto t : *code) symbols = std::max<std::size_t>(symbols, std::size_t{t} + 1);
  }
  std::vector<Bits> masks(symbols, Bits(words_, 0));
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const Symbol a = vertices_[v][0];
    const Symbol b = code ? (*code)[a] : a;
    masks[b][v / 64] |= std::uint64_t{1} << (v % 64);
  }
  return masks;
}

namespace {
void check_site_symbols(const SiteSymbols* ss, const FiniteSet& f) {
  if (ss && ss->size() != f.size()) throw PreconditionError("site filter does not match the shape");
}
bool site_allows(const SiteSymbols* ss, std::size_t i, std::size_t b) {
  if (!ss) return true;
  const auto& row = (*ss)[i];
  return b < row.size() && row[b];
}
}  // namespace

BigInt TransferGraph::count(const FiniteSet& f, const std::vector<Symbol>* code, const SiteSymbols* ss) const {
  if (f.empty()) throw PreconditionError("pattern shape is empty");
  if (f.dim() != 1) throw DimensionMismatch("transfer graph counts need a one-dimensional shape");
  check_site_symbols(ss, f);
  if (empty()) return 0;
  std::size_t symbols = 0;
  const auto masks = symbol_masks(code, symbols);
  std::unordered_map<Bits, BigInt, BitsHash> cur, next;
  cur.emplace(all_bits(), BigInt(1));
  BigInt total = 0;
  const Coord lo = f[0].c[0], hi = f[f.size() - 1].c[0];
  std::size_t fi = 0;
  Bits tmp(words_);
  for (Coord p = lo; p <= hi; ++p) {
    const bool observed = f[fi].c[0] == p;
    const std::size_t site = fi;
    if (observed) ++fi;
    const bool last = p == hi;
    next.clear();
    for (const auto& [s, c] : cur) {
      if (observed) {
        for (std::size_t b = 0; b < symbols; ++b) {
          if (!site_allows(ss, site, b)) continue;
          kernels::bits_and(tmp.data(), s.data(), masks[b].data(), words_);
          if (!kernels::bits_any(tmp.data(), words_)) continue;
          if (last) {
            total += c;
          } else {
            next[successor_set(tmp)] += c;
          }
        }
      } else if (last) {
        total += c;
      } else {
        next[successor_set(s)] += c;
      }
    }
    cur.swap(next);
  }
  return total;
}

std::vector<Word> TransferGraph::list(const FiniteSet& f, const std::vector<Symbol>* code, std::size_t cap,
                                     const SiteSymbols* ss) const {
  if (f.empty()) throw PreconditionError("pattern shape is empty");
  if (f.dim() != 1) throw DimensionMismatch("transfer graph listing needs a one-dimensional shape");
  check_site_symbols(ss, f);
  std::vector<Word> out;
  if (empty()) return out;
  std::size_t symbols = 0;
  const auto masks = symbol_masks(code, symbols);
  const Coord lo = f[0].c[0], hi = f[f.size() - 1].c[0];
  std::vector<bool> observed(static_cast<std::size_t>(hi - lo + 1), false);
  for (const auto& s : f) observed[static_cast<std::size_t>(s.c[0] - lo)] = true;
  Word cur;
  std::function<void(std::size_t, const Bits&)> walk = [&](std::size_t i, const Bits& s) {
    const bool last = i + 1 == observed.size();
    if (observed[i]) {
      Bits tmp(words_);
      for (std::size_t b = 0; b < symbols; ++b) {
        if (!site_allows(ss, cur.size(), b)) continue;
        kernels::bits_and(tmp.data(), s.data(), masks[b].data(), words_);
        if (!kernels::bits_any(tmp.data(), words_)) continue;
        cur.push_back(static_cast<Symbol>(b));
        if (last) {
          if (out.size() >= cap) throw CapExceeded("pattern list exceeds the cap of " + std::to_string(cap));
          out.push_back(cur);
        } else {
          walk(i + 1, successor_set(tmp));
        }
        cur.pop_back();
      }
    } else if (last) {
      if (out.size() >= cap) throw CapExceeded("pattern list exceeds the cap of " + std::to_string(cap));
      out.push_back(cur);
    } else {
      walk(i + 1, successor_set(s));
    }
  };
  walk(0, all_bits());
  return out;
}

bool TransferGraph::admissible(const Pattern& p) const {
  if (p.domain.empty()) return !empty();
  if (p.domain.dim() != 1) throw DimensionMismatch("admissibility check needs a one-dimensional pattern");
  if (empty()) return false;
  for (auto s : p.labels)
    if (s >= alphabet_size_) return false;
  std::size_t symbols = 0;
  const auto masks = symbol_masks(nullptr, symbols);
  Bits s = all_bits(), tmp(words_);
  const Coord lo = p.domain[0].c[0], hi = p.domain[p.domain.size() - 1].c[0];
  std::size_t fi = 0;
  for (Coord q = lo; q <= hi; ++q) {
    if (p.domain[fi].c[0] == q) {
      kernels::bits_and(tmp.data(), s.data(), masks[p.labels[fi]].data(), words_);
      ++fi;
      if (!kernels::bits_any(tmp.data(), words_)) return false;
      if (q != hi) s = successor_set(tmp);
    } else {
      s = successor_set(s);
    }
  }
  return true;
}

double TransferGraph::entropy() const {
  if (empty()) return 0.0;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(vertices_.size());
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    for (auto u : succ_[v]) adj[v].push_back({u, 1.0});
  const double rho = spectral_radius(adj);
  return rho > 1.0 ? std::log(rho) : 0.0;
}

double TransferGraph::image_entropy(const std::vector<Symbol>& code, std::size_t state_cap) const {
  if (empty()) return 0.0;
  std::size_t symbols = 0;
  const auto masks = symbol_masks(&code, symbols);
  std::unordered_map<Bits, std::uint32_t, BitsHash> id;
  std::vector<Bits> states;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  auto intern = [&](Bits b) {
    auto [it, fresh] = id.emplace(b, static_cast<std::uint32_t>(states.size()));
    if (fresh) {
      if (states.size() >= state_cap) throw CapExceeded("subset automaton exceeds the state cap");
      states.push_back(std::move(b));
      adj.emplace_back();
    }
    return it->second;
  };
  intern(all_bits());
  Bits tmp(words_);
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::map<std::uint32_t, double> edges;
    for (std::size_t b = 0; b < symbols; ++b) {
      kernels::bits_and(tmp.data(), states[i].data(), masks[b].data(), words_);
      if (!kernels::bits_any(tmp.data(), words_)) continue;
      edges[intern(successor_set(tmp))] += 1.0;
    }
    for (auto [t, w] : edges) adj[i].push_back({t, w});
  }
  const double rho = spectral_radius(adj);
  return rho > 1.0 ? std::log(rho) : 0.0;
}

namespace {

// Depth-first search over labellings of D = F + [-m, m]^d, F first.
class LocalSearch {
 public:
  LocalSearch(const SubshiftHandle& x, const FiniteSet& f, int margin, std::uint64_t budget,
              const SiteSymbols* ss = nullptr, const std::vector<Symbol>* code = nullptr)
      : x_(x), budget_(budget), ss_(ss), code_(code) {
    check_site_symbols(ss, f);
    FiniteSet d = f;
    if (margin > 0) d = product_set(f, FiniteSet::cube(f.dim(), -margin, margin + 1));
    nf_ = f.size();
    // margin sites nearest F first, so constraints touching F fire early
    std::vector<std::pair<Coord, Site>> rest;
    for (const auto& site : set_difference(d, f)) {
      Coord best = std::numeric_limits<Coord>::max();
      for (const auto& t : f) {
        Coord dist = 0;
        for (int j = 0; j < site.dim; ++j) dist = std::max(dist, std::abs(site[j] - t[j]));
        best = std::min(best, dist);
      }
      rest.emplace_back(best, site);
    }
    std::sort(rest.begin(), rest.end());
    order_ = f.sites();
    for (const auto& r : rest) order_.push_back(r.second);
    words_ = (order_.size() + 63) / 64;
    std::vector<std::uint32_t> pos(d.size());
    for (std::uint32_t i = 0; i < order_.size(); ++i) pos[*d.index_of(order_[i])] = i;
    at_.resize(order_.size());
    auto add = [&](const FiniteSet& shape, const Word* forbidden) {
      for (const auto& site : d) {
        const Site g = site - shape[0];
        Constraint c;
        c.forbidden = forbidden;
        bool inside = true;
        std::uint32_t trig = 0;
        for (const auto& k : shape) {
          auto idx = d.index_of(k + g);
          if (!idx) {
            inside = false;
            break;
          }
          c.idx.push_back(pos[*idx]);
          trig = std::max(trig, pos[*idx]);
        }
        if (inside) at_[trig].push_back(std::move(c));
      }
    };
    add(x.base.window(), nullptr);
    for (const auto& p : x.extra_forbidden) add(p.domain, &p.labels);
    labels_.assign(order_.size(), 0);
  }

  template <class Emit>
  void run(Emit&& emit) {
    dfs(0, emit);
  }

 private:
  struct Constraint {
    std::vector<std::uint32_t> idx;
    const Word* forbidden = nullptr;
  };

  const Constraint* violated(std::size_t i) {
    for (const auto& c : at_[i]) {
      buf_.resize(c.idx.size());
      for (std::size_t j = 0; j < c.idx.size(); ++j) buf_[j] = labels_[c.idx[j]];
      if (c.forbidden ? buf_ == *c.forbidden : !x_.base.allows(buf_)) return &c;
    }
    return nullptr;
  }
  bool check(std::size_t i) { return violated(i) == nullptr; }

  void tick() {
    if (++nodes_ > budget_) throw CapExceeded("enumeration node budget exhausted");
  }

  template <class Emit>
  bool dfs(std::size_t i, Emit& emit) {
    if (i == nf_) {
      if (extend(nf_)) return emit(labels_);
      return true;
    }
    const std::size_t q = x_.alphabet().size();
    for (std::size_t s = 0; s < q; ++s) {
      if (ss_ && !site_allows(ss_, i, code_ ? (*code_)[s] : s)) continue;
      labels_[i] = static_cast<Symbol>(s);
      tick();
      if (check(i) && !dfs(i + 1, emit)) return false;
    }
    return true;
  }

  using Conflict = std::vector<std::uint64_t>;
  static bool has(const Conflict& c, std::size_t i) { return (c[i / 64] >> (i % 64)) & 1; }

  bool extend(std::size_t i) {
    Conflict c;
    return extend(i, c);
  }

  // Conflict-directed backjumping: on failure `out` holds the earlier
  // positions responsible, and levels outside it are skipped.
  bool extend(std::size_t i, Conflict& out) {
    if (i == order_.size()) return true;
    const std::size_t q = x_.alphabet().size();
    Conflict mine(words_, 0);
    Conflict sub;
    for (std::size_t s = 0; s < q; ++s) {
      labels_[i] = static_cast<Symbol>(s);
      tick();
      if (const Constraint* bad = violated(i)) {
        for (auto j : bad->idx)
          if (j != i) mine[j / 64] |= 1ull << (j % 64);
        continue;
      }
      sub.assign(words_, 0);
      if (extend(i + 1, sub)) return true;
      if (!has(sub, i)) {
        out = std::move(sub);
        return false;
      }
      sub[i / 64] &= ~(1ull << (i % 64));
      for (std::size_t w = 0; w < words_; ++w) mine[w] |= sub[w];
    }
    out = std::move(mine);
    return false;
  }

  const SubshiftHandle& x_;
  std::uint64_t budget_;
  const SiteSymbols* ss_ = nullptr;
  const std::vector<Symbol>* code_ = nullptr;
  std::uint64_t nodes_ = 0;
  std::size_t nf_ = 0;
  std::size_t words_ = 0;
  std::vector<Site> order_;
  std::vector<std::vector<Constraint>> at_;
  Word labels_;
  Word buf_;
};

void check_shape(const SubshiftHandle& x, const FiniteSet& f) {
  if (f.empty()) throw PreconditionError("pattern shape is empty");
  if (f.dim() != x.dim()) throw DimensionMismatch("shape and subshift dimensions differ");
}

}  // namespace

int default_margin(const SubshiftHandle& x) { return static_cast<int>(2 * diameter(x.base.window())); }

Enumeration enumerate_patterns(const SubshiftHandle& x, const FiniteSet& f, const EnumerateOptions& opt) {
  check_shape(x, f);
  Enumeration out;
  if (x.dim() == 1) {
    TransferGraph g(x);
    BigInt c = g.count(f, nullptr, opt.site_symbols);
    if (opt.want_list) {
      if (c > opt.list_cap) throw CapExceeded("pattern list of size " + c.str() + " exceeds the cap");
      out.patterns = g.list(f, nullptr, opt.list_cap, opt.site_symbols);
    }
    out.result = make_count_result(std::move(c), f.size(), Tier::Exact1D, 0);
    return out;
  }
  const int margin = opt.margin < 0 ? default_margin(x) : opt.margin;
  LocalSearch search(x, f, margin, opt.node_budget, opt.site_symbols);
  std::uint64_t n = 0;
  const std::size_t nf = f.size();
  search.run([&](const Word& labels) {
    ++n;
    if (opt.want_list) {
      if (out.patterns.size() >= opt.list_cap) throw CapExceeded("pattern list exceeds the cap");
      out.patterns.emplace_back(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(nf));
    }
    return true;
  });
  out.result = make_count_result(BigInt(n), f.size(), Tier::LocalMargin, margin);
  return out;
}

Enumeration enumerate_image(const SubshiftHandle& x, const BlockCode& code, const FiniteSet& f,
                            const EnumerateOptions& opt) {
  check_shape(x, f);
  const auto& table = code.table();
  if (table.size() != x.alphabet().size()) throw PreconditionError("code source alphabet does not match the subshift");
  Enumeration out;
  if (x.dim() == 1) {
    TransferGraph g(x);
    BigInt c = g.count(f, &table, opt.site_symbols);
    if (opt.want_list) {
      if (c > opt.list_cap) throw CapExceeded("pattern list of size " + c.str() + " exceeds the cap");
      out.patterns = g.list(f, &table, opt.list_cap, opt.site_symbols);
    }
    out.result = make_count_result(std::move(c), f.size(), Tier::Exact1D, 0);
    return out;
  }
  const int margin = opt.margin < 0 ? default_margin(x) : opt.margin;
  LocalSearch search(x, f, margin, opt.node_budget, opt.site_symbols, &table);
  std::set<Word> images;
  const std::size_t nf = f.size();
  Word img(nf);
  search.run([&](const Word& labels) {
    for (std::size_t i = 0; i < nf; ++i) img[i] = table[labels[i]];
    images.insert(img);
    if (images.size() > opt.list_cap) throw CapExceeded("image pattern set exceeds the cap");
    return true;
  });
  if (opt.want_list) out.patterns.assign(images.begin(), images.end());
  out.result = make_count_result(BigInt(images.size()), f.size(), Tier::LocalMargin, margin);
  return out;
}

CountResult count_patterns(const SubshiftHandle& x, const FiniteSet& f, const EnumerateOptions& opt) {
  EnumerateOptions o = opt;
  o.want_list = false;
  return enumerate_patterns(x, f, o).result;
}

double entropy_estimate(const SubshiftHandle& x, const FiniteSet& f, const EnumerateOptions& opt) {
  return count_patterns(x, f, opt).entropy;
}

double entropy_exact_1d(const SubshiftHandle& x) {
  if (x.dim() != 1) throw PreconditionError("exact entropy is only available in dimension one");
  return TransferGraph(x).entropy();
}

double entropy_exact_1d_image(const SubshiftHandle& x, const BlockCode& code) {
  if (x.dim() != 1) throw PreconditionError("exact entropy is only available in dimension one");
  return TransferGraph(x).image_entropy(code.table());
}

bool locally_admissible(const SubshiftHandle& x, const Pattern& p) {
  if (p.domain.empty()) return true;
  require_same_dim(p.domain, x.base.window(), "locally_admissible");
  Word buf;
  auto scan = [&](const FiniteSet& shape, const Word* forbidden) {
    for (const auto& site : p.domain) {
      const Site g = site - shape[0];
      buf.clear();
      bool inside = true;
      for (const auto& k : shape) {
        auto v = p.find(k + g);
        if (!v) {
          inside = false;
          break;
        }
        buf.push_back(*v);
      }
      if (!inside) continue;
      if (forbidden ? buf == *forbidden : !x.base.allows(buf)) return false;
    }
    return true;
  };
  if (!scan(x.base.window(), nullptr)) return false;
  for (const auto& f : x.extra_forbidden)
    if (!scan(f.domain, &f.labels)) return false;
  return true;
}

bool admissible_1d(const SubshiftHandle& x, const Pattern& p) {
  if (x.dim() != 1) throw PreconditionError("exact admissibility is only available in dimension one");
  return TransferGraph(x).admissible(p);
}

}  // namespace shiftforge
