#include "shiftforge/sofic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "shiftforge/errors.hpp"
#include "shiftforge/parallel.hpp"

namespace shiftforge {

namespace {

bool fits_in_translate(const FiniteSet& small, const FiniteSet& big) {
  for (const auto& b : big) {
    const Site g = b - small[0];
    if (std::all_of(small.begin(), small.end(), [&](const Site& s) { return big.contains(s + g); })) return true;
  }
  return false;
}

// Largest delta with 4 delta + delta (1 + delta) log q < eps / 2.
double cover_delta(double eps, std::size_t q) {
  if (!(eps > 0)) throw PreconditionError("eps must be positive");
  const double a = std::log(static_cast<double>(q));
  const double half = eps / 2.0;
  const double root = a > 0 ? (-(4.0 + a) + std::sqrt((4.0 + a) * (4.0 + a) + 4.0 * a * half)) / (2.0 * a) : half / 4.0;
  return std::nextafter(root, 0.0);
}

// True where the site lies on the border of its tile.
std::vector<bool> border_type(const CoverConstruction& c, const PeriodicTiling& t, const FiniteSet& f) {
  std::vector<bool> out;
  out.reserve(f.size());
  for (const auto& g : f) out.push_back(c.border.contains(g - t.tile_at(g).center));
  return out;
}

std::vector<PeriodicTiling> distinct_phases(const PeriodicTiling& t, const FiniteSet& f) {
  std::set<Word> seen;
  std::vector<PeriodicTiling> out;
  for (const auto& g : t.residues()) {
    PeriodicTiling s = t.shifted(g);
    if (seen.insert(encode_tiling(s, f).labels).second) out.push_back(std::move(s));
  }
  return out;
}

std::vector<Word> list_patterns(const SubshiftHandle& h, const FiniteSet& f, EnumerateOptions opt) {
  opt.want_list = true;
  return enumerate_patterns(h, f, opt).patterns;
}

std::vector<Word> list_image(const SubshiftHandle& h, const BlockCode& code, const FiniteSet& f, EnumerateOptions opt) {
  opt.want_list = true;
  return enumerate_image(h, code, f, opt).patterns;
}

}  // namespace

std::vector<std::string> presentation_violations(const SftSpec& cover, const BlockCode& code) {
  std::vector<std::string> out;
  if (code.source() != cover.alphabet()) out.push_back("code source alphabet differs from the cover alphabet");
  if (code.neighborhood().dim() != cover.dim()) out.push_back("code and cover dimensions differ");
  else if (!code.neighborhood().contains(Site::origin(cover.dim())))
    out.push_back("code neighborhood does not contain the origin");
  if (!code.is_one_block()) out.push_back("code is not one-block; it is recoded on ingestion");
  return out;
}

SoficPresentation make_presentation(SftSpec cover, BlockCode code) {
  if (code.source() != cover.alphabet()) throw PreconditionError("code source alphabet differs from the cover alphabet");
  if (code.is_one_block()) return SoficPresentation{std::move(cover), std::move(code)};
  auto rec = higher_block_recode(cover, code);
  return SoficPresentation{std::move(rec.recoded), std::move(rec.composed)};
}

CoverConstruction build_cover(const SoficPresentation& w, const CombingConfig& cfg) {
  if (!w.code.is_one_block()) throw PreconditionError("cover construction needs a one-block code");
  const SftSpec& x = w.cover;
  if (x.dim() != 1 && x.dim() != 2) throw DimensionMismatch("covers support dimensions 1 and 2");
  if (cfg.tile_side < 1) throw PreconditionError("tile side must be positive");
  const int d = x.dim();
  CoverConstruction c;
  c.base = w;
  c.config = cfg;
  c.qx = x.alphabet().size();
  c.qw = w.code.target().size();
  c.shape = FiniteSet::cube(d, 0, cfg.tile_side);
  c.kk = difference_set(x.window());
  if (!fits_in_translate(c.kk, c.shape))
    throw PreconditionError("the difference set of the SFT window does not fit inside the tile of side " +
                            std::to_string(cfg.tile_side));
  c.border = boundary(c.kk, c.shape);
  c.tiling = PeriodicTiling::box(d, cfg.tile_side);
  c.sigma0 = orbit_sft(c.tiling);
  const std::size_t qt = c.sigma0.alphabet().size();

  std::vector<std::string> tokens;
  for (const auto& t : x.alphabet().tokens()) tokens.push_back("x:" + t);
  for (const auto& t : w.code.target().tokens()) tokens.push_back("w:" + t);
  c.merged = Alphabet(tokens);
  const auto& table = w.code.table();
  for (std::size_t i = 0; i < c.qx; ++i) c.extended.push_back(table[i]);
  for (std::size_t i = 0; i < c.qw; ++i) c.extended.push_back(static_cast<Symbol>(i));

  c.delta = cover_delta(cfg.eps, c.qx);
  if (!(static_cast<double>(c.border.size()) < c.delta * static_cast<double>(c.shape.size())))
    c.warnings.push_back("tile border is not smaller than delta times the tile size");
  if (!(static_cast<double>(c.shape.size()) * c.delta > 1.0)) c.warnings.push_back("tile size does not exceed 1/delta");
  if (cfg.strict && !c.warnings.empty()) {
    std::string msg = "cover hypotheses fail:";
    for (const auto& m : c.warnings) msg += " " + m + ";";
    msg.pop_back();
    throw PreconditionError(msg);
  }

  // Labellings of S seen through an aligned tile: X symbols on the border,
  // their images on the interior.
  const SubshiftHandle xh(x);
  std::set<Word> tile_keys;
  for (const auto& b : list_patterns(xh, c.shape, {})) {
    Word key(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
      key[i] = c.border.contains(c.shape[i]) ? b[i] : static_cast<Symbol>(c.qx + table[b[i]]);
    tile_keys.insert(std::move(key));
  }

  const FiniteSet u = set_union(c.shape, set_union(x.window(), c.sigma0.window()));
  std::vector<std::size_t> k_pos, s_pos;
  for (const auto& g : x.window()) k_pos.push_back(*u.index_of(g));
  for (const auto& g : c.shape) s_pos.push_back(*u.index_of(g));
  std::vector<Symbol> aligned_layer;
  for (const auto& g : c.shape) aligned_layer.push_back(c.tiling.shapes().symbol(0, g));

  const std::size_t cap = 10'000'000;
  std::vector<Word> allowed;
  for (const auto& t : distinct_phases(c.tiling, u)) {
    const Word layer = encode_tiling(t, u).labels;
    const auto on_border = border_type(c, t, u);
    bool aligned = true;
    for (std::size_t i = 0; i < s_pos.size(); ++i) aligned = aligned && layer[s_pos[i]] == aligned_layer[i];

    Word cur(u.size(), 0);
    Word kw(k_pos.size()), sw(s_pos.size());
    auto leaf = [&] {
      bool all_x = true;
      for (std::size_t i = 0; i < k_pos.size(); ++i) {
        kw[i] = cur[k_pos[i]];
        all_x = all_x && kw[i] < c.qx;
      }
      if (all_x && !x.allows(kw)) return;
      if (aligned) {
        for (std::size_t i = 0; i < s_pos.size(); ++i) sw[i] = cur[s_pos[i]];
        if (!tile_keys.count(sw)) return;
      }
      Word out(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) out[i] = static_cast<Symbol>(cur[i] * qt + layer[i]);
      allowed.push_back(std::move(out));
      if (allowed.size() > cap) throw CapExceeded("cover window has more than " + std::to_string(cap) + " allowed patterns");
    };
    // Odometer over the typed choices at each site.
    std::vector<Symbol> lo(u.size()), hi(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      lo[i] = on_border[i] ? Symbol{0} : static_cast<Symbol>(c.qx);
      hi[i] = on_border[i] ? static_cast<Symbol>(c.qx) : static_cast<Symbol>(c.qx + c.qw);
      cur[i] = lo[i];
    }
    for (;;) {
      leaf();
      std::size_t i = u.size();
      while (i > 0 && ++cur[i - 1] == hi[i - 1]) {
        cur[i - 1] = lo[i - 1];
        --i;
      }
      if (i == 0) break;
    }
  }

  Alphabet pa = product_alphabet(c.merged, c.sigma0.alphabet());
  c.spec = SftSpec(pa, u, std::move(allowed));
  std::vector<Symbol> down(pa.size()), tl(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    down[i] = c.extended[i / qt];
    tl[i] = static_cast<Symbol>(i % qt);
  }
  c.code = BlockCode::one_block(pa, w.code.target(), down);
  c.tiling_code = BlockCode::one_block(pa, c.sigma0.alphabet(), tl);
  return c;
}

bool cover_projects_onto(const CoverConstruction& c, const FiniteSet& f, const EnumerateOptions& opt) {
  return list_image(SubshiftHandle(c.spec), c.code, f, opt) ==
         list_image(SubshiftHandle(c.base.cover), c.base.code, f, opt);
}

bool cover_matches_rules(const CoverConstruction& c, const FiniteSet& f, const EnumerateOptions& opt) {
  const std::size_t qt = c.sigma0.alphabet().size();
  const auto& table = c.base.code.table();
  const auto xs = list_patterns(SubshiftHandle(c.base.cover), f, opt);
  std::vector<Word> direct;
  for (const auto& t : distinct_phases(c.tiling, f)) {
    const Word layer = encode_tiling(t, f).labels;
    const auto on_border = border_type(c, t, f);
    for (const auto& xw : xs) {
      Word out(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) {
        const std::size_t a = on_border[i] ? xw[i] : c.qx + table[xw[i]];
        out[i] = static_cast<Symbol>(a * qt + layer[i]);
      }
      direct.push_back(std::move(out));
    }
  }
  std::sort(direct.begin(), direct.end());
  direct.erase(std::unique(direct.begin(), direct.end()), direct.end());
  return direct == list_patterns(SubshiftHandle(c.spec), f, opt);
}

std::size_t typing_violations(const CoverConstruction& c, const FiniteSet& f, const EnumerateOptions& opt) {
  const std::size_t qt = c.sigma0.alphabet().size();
  std::map<Word, std::vector<Tile>> tiles_of;
  std::size_t bad = 0;
  for (const auto& p : list_patterns(SubshiftHandle(c.spec), f, opt)) {
    Word layer(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) layer[i] = static_cast<Symbol>(p[i] % qt);
    auto it = tiles_of.find(layer);
    if (it == tiles_of.end()) {
      std::vector<Tile> inside;
      for (const auto& tile : decode_tiling(Pattern(f, layer), c.tiling.shapes()))
        if (is_subset(tile_cells(c.tiling.shapes(), tile), f)) inside.push_back(tile);
      it = tiles_of.emplace(layer, std::move(inside)).first;
    }
    for (const auto& tile : it->second) {
      bool ok = true;
      for (const auto& g : tile_cells(c.tiling.shapes(), tile)) {
        const bool is_w = p[*f.index_of(g)] / qt >= c.qx;
        ok = ok && is_w == !c.border.contains(g - tile.center);
      }
      bad += ok ? 0 : 1;
    }
  }
  return bad;
}

namespace {

// The orbit of one periodic point, as an SFT on edges of the transfer graph.
std::optional<SubshiftHandle> periodic_orbit(const SubshiftHandle& up) {
  if (up.dim() != 1) return std::nullopt;
  const TransferGraph g(up);
  if (g.empty()) return std::nullopt;
  std::vector<std::size_t> pos(g.vertex_count(), std::numeric_limits<std::size_t>::max());
  std::vector<std::uint32_t> path;
  std::uint32_t v = 0;
  while (pos[v] == std::numeric_limits<std::size_t>::max()) {
    pos[v] = path.size();
    path.push_back(v);
    v = g.successors()[v].front();
  }
  std::vector<std::uint32_t> cycle(path.begin() + static_cast<std::ptrdiff_t>(pos[v]), path.end());
  const auto& vs = g.vertices();
  std::vector<Word> edges;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    Word e = vs[cycle[i]];
    e.push_back(vs[cycle[(i + 1) % cycle.size()]].back());
    edges.push_back(std::move(e));
  }
  const Coord m = static_cast<Coord>(vs[0].size());
  return SubshiftHandle(SftSpec(up.alphabet(), FiniteSet::interval(0, m + 1), std::move(edges)));
}

struct Candidate {
  std::string label;
  std::uint64_t seed = 0;
  SubshiftHandle handle;
};

}  // namespace

std::vector<GapSample> sample_gaps(const SubshiftHandle& up, const BlockCode& code, std::size_t samples,
                                   const FiniteSet& f, std::uint64_t seed, const EnumerateOptions& opt) {
  std::vector<Candidate> cands;
  cands.push_back({"full", 0, up});
  if (auto orbit = periodic_orbit(up)) cands.push_back({"periodic-orbit", 0, std::move(*orbit)});
  const FiniteSet wf = up.dim() == 1 ? FiniteSet::interval(0, 3) : FiniteSet::cube(2, 0, 2);
  const auto pool = list_patterns(up, wf, opt);
  for (std::size_t i = 0; i < samples && !pool.empty(); ++i) {
    const std::uint64_t s = seed + i;
    std::mt19937_64 rng(s);
    SubshiftHandle h = up;
    const std::size_t k = 1 + rng() % 3;
    for (std::size_t j = 0; j < k; ++j) h = h.with_forbidden(Pattern(wf, pool[rng() % pool.size()]));
    cands.push_back({"random", s, std::move(h)});
  }
  std::vector<GapSample> out(cands.size());
  parallel_for(cands.size(), [&](std::size_t i) {
    GapSample g;
    g.label = cands[i].label;
    g.seed = cands[i].seed;
    const auto a = count_patterns(cands[i].handle, f, opt);
    const auto b = enumerate_image(cands[i].handle, code, f, opt).result;
    g.count_up = a.count;
    g.count_down = b.count;
    g.h_up = a.entropy;
    g.h_down = b.entropy;
    g.gap = a.entropy - b.entropy;
    out[i] = std::move(g);
  });
  return out;
}

GapReport estimate_max_gap(const CoverConstruction& c, std::size_t samples, const FiniteSet& f, std::uint64_t seed,
                           const EnumerateOptions& opt) {
  GapReport r;
  r.tier = tier_name(f.dim() == 1 ? Tier::Exact1D : Tier::LocalMargin);
  const auto tiling = count_patterns(SubshiftHandle(c.sigma0), f, opt);
  r.h_tiling = tiling.entropy;
  std::size_t border_sites = 0;
  for (const auto& t : distinct_phases(c.tiling, f)) {
    const auto b = border_type(c, t, f);
    border_sites = std::max<std::size_t>(border_sites, static_cast<std::size_t>(std::count(b.begin(), b.end(), true)));
  }
  const double lq = std::log(static_cast<double>(c.qx));
  r.window_bound = r.h_tiling + static_cast<double>(border_sites) / static_cast<double>(f.size()) * lq;
  r.analytic_bound = 4 * c.delta + c.delta * (1 + c.delta) * lq;
  BigInt factor = tiling.count;
  for (std::size_t i = 0; i < border_sites; ++i) factor *= static_cast<unsigned>(c.qx);
  r.samples = sample_gaps(SubshiftHandle(c.spec), c.code, samples, f, seed, opt);
  for (auto& s : r.samples) {
    s.within = s.count_up <= s.count_down * factor;
    r.all_within = r.all_within && s.within;
    r.max_gap = std::max(r.max_gap, s.gap);
  }
  r.analytic_ok = r.max_gap <= r.analytic_bound;
  return r;
}

GapReport product_gap_control(const SftSpec& x, const SftSpec& t, std::size_t samples, const FiniteSet& f,
                              std::uint64_t seed, const EnumerateOptions& opt) {
  const auto ps = product_shift(x, t);
  GapReport r;
  r.tier = tier_name(f.dim() == 1 ? Tier::Exact1D : Tier::LocalMargin);
  const auto ct = count_patterns(SubshiftHandle(t), f, opt);
  r.h_tiling = ct.entropy;
  r.window_bound = ct.entropy;
  r.analytic_bound = ct.entropy;
  r.samples = sample_gaps(SubshiftHandle(ps.spec), ps.first, samples, f, seed, opt);
  for (auto& s : r.samples) {
    s.within = s.count_up <= s.count_down * ct.count;
    r.all_within = r.all_within && s.within;
    r.max_gap = std::max(r.max_gap, s.gap);
  }
  r.analytic_ok = r.all_within;
  return r;
}

SubshiftHandle cover_preimage(const CoverConstruction& c, const SubshiftHandle& v, const EnumerateOptions& opt) {
  if (v.alphabet() != c.code.target()) throw PreconditionError("V is not over the sofic alphabet");
  if (v.dim() != c.spec.dim()) throw DimensionMismatch("V and the cover have different dimensions");
  FiniteSet wv = v.base.window();
  for (const auto& p : v.extra_forbidden) wv = set_union(wv, p.domain);
  const auto down = list_patterns(v, wv, opt);
  const std::set<Word> ok(down.begin(), down.end());
  const auto& table = c.code.table();
  std::vector<Pattern> extras;
  for (const auto& p : list_patterns(SubshiftHandle(c.spec), wv, opt)) {
    Word img(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) img[i] = table[p[i]];
    if (!ok.count(img)) extras.emplace_back(wv, p);
  }
  return SubshiftHandle(c.spec, std::move(extras));
}

namespace {

CombingConfig chain_config(CombingConfig cfg) {
  cfg.decompose = false;
  return cfg;
}

EnumerateOptions chain_options(const CombingSetup& s) {
  EnumerateOptions opt;
  opt.margin = s.margin;
  return opt;
}

}  // namespace

namespace {

// Window entropies of pushed-forward union steps. Steps are nested, so
// these are non-increasing in n; searches below rely on that and record
// every evaluation so the assumption is checked on the points seen.
class StepImages {
 public:
  StepImages(const CoverConstruction& c, const CombingSetup& s, const ChainReport& r, const SubshiftHandle& y,
             const EnumerateOptions& opt)
      : c_(c), s_(s), r_(r), y_(y), opt_(opt) {}

  std::size_t size() const { return r_.steps.size(); }

  const std::pair<double, SftSpec>& at(std::size_t n) {
    auto it = cache_.find(n);
    if (it == cache_.end()) {
      SftSpec u = union_step(s_, r_, y_, n);
      const double h = enumerate_image(SubshiftHandle(u), c_.code, s_.window, opt_).result.entropy;
      it = cache_.emplace(n, std::make_pair(h, std::move(u))).first;
    }
    return it->second;
  }

  /// Least n in [from, size) with h_n < bound (or <= bound), else size().
  std::size_t first_below(std::size_t from, double bound, bool inclusive) {
    std::size_t lo = from, hi = size();
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      double h = at(mid).first;
      if (inclusive ? h <= bound : h < bound)
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

  std::vector<std::pair<std::size_t, double>> evaluated() const {
    std::vector<std::pair<std::size_t, double>> out;
    for (const auto& [n, v] : cache_) out.emplace_back(n, v.first);
    return out;
  }

  bool monotone() const {
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& [n, v] : cache_) {
      if (v.first > prev + 1e-12) return false;
      prev = v.first;
    }
    return true;
  }

 private:
  const CoverConstruction& c_;
  const CombingSetup& s_;
  const ChainReport& r_;
  const SubshiftHandle& y_;
  EnumerateOptions opt_;
  std::map<std::size_t, std::pair<double, SftSpec>> cache_;
};

}  // namespace

SoficFamilyResult sofic_dense_family(const SoficPresentation& w, const SubshiftHandle& v, double lo, double hi,
                                     const CombingConfig& cover_cfg, const CombingConfig& chain_cfg) {
  if (!(lo <= hi)) throw PreconditionError("target interval is empty");
  const CoverConstruction c = build_cover(w, cover_cfg);
  const CombingSetup s = build_Z0(c.spec, chain_config(chain_cfg));
  const EnumerateOptions opt = chain_options(s);
  const SubshiftHandle y = cover_preimage(c, v, opt);
  require_contained(s, y);
  const ChainReport r = run_chain(s);
  StepImages images(c, s, r, y, opt);
  const std::size_t n = images.first_below(0, hi, true);
  SoficFamilyResult res;
  if (n < images.size() && images.at(n).first >= lo) {
    const auto& [h, u] = images.at(n);
    res.h_up = entropy_estimate(SubshiftHandle(u), s.window, opt);
    res.h_down = h;
    res.step = n;
    res.presentation = SoficPresentation{u, c.code};
    res.tried = images.evaluated();
    res.monotone = images.monotone();
    return res;
  }
  double best = std::numeric_limits<double>::infinity(), nearest = 0.0;
  std::ostringstream msg;
  msg << "no chain step pushes forward into [" << lo << ", " << hi << "]";
  for (const auto& [k, h] : images.evaluated()) {
    const double dist = h < lo ? lo - h : h - hi;
    if (dist < best) {
      best = dist;
      nearest = h;
    }
  }
  msg << "; nearest window entropy " << nearest << "; evaluated (step: h):";
  for (const auto& [k, h] : images.evaluated()) msg << " " << k << ": " << h;
  throw PreconditionError(msg.str());
}

NestReport entropy_target_nest(const SoficPresentation& w, double r, const std::vector<double>& eps,
                               const CombingConfig& cover_cfg, const CombingConfig& chain_cfg) {
  const CoverConstruction c = build_cover(w, cover_cfg);
  const CombingSetup s = build_Z0(c.spec, chain_config(chain_cfg));
  const EnumerateOptions opt = chain_options(s);
  const double h0 = enumerate_image(SubshiftHandle(w.cover), w.code, s.window, opt).result.entropy;
  if (!(r >= 0 && r <= h0)) {
    std::ostringstream msg;
    msg << "target " << r << " lies outside [0, " << h0 << "]";
    throw PreconditionError(msg.str());
  }
  const SubshiftHandle empty(SftSpec(c.spec.alphabet(), c.spec.window(), {}));
  const ChainReport chain = run_chain(s);
  StepImages images(c, s, chain, empty, opt);

  NestReport out;
  out.r = r;
  out.levels.push_back(NestLevel{0, 0.0, h0, w});
  std::size_t k = 0;
  for (std::size_t n = 0; n < eps.size(); ++n) {
    const std::size_t j = images.first_below(k, r + eps[n], false);
    if (j == images.size() || images.at(j).first < r) {
      std::ostringstream msg;
      msg << "level " << n + 1 << " has no chain step with entropy in [" << r << ", " << r + eps[n] << ")";
      out.message = msg.str();
      out.monotone = images.monotone();
      return out;
    }
    const auto& [h, u] = images.at(j);
    out.levels.push_back(NestLevel{j, eps[n], h, SoficPresentation{u, c.code}});
    k = j;
  }
  out.complete = true;
  out.monotone = images.monotone();
  return out;
}

}  // namespace shiftforge
