#include "shiftforge/combing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "shiftforge/errors.hpp"

namespace shiftforge {

namespace {

bool fits_in_translate(const FiniteSet& small, const FiniteSet& big) {
  for (const auto& b : big) {
    const Site g = b - small[0];
    if (std::all_of(small.begin(), small.end(), [&](const Site& s) { return big.contains(s + g); })) return true;
  }
  return false;
}

std::size_t tiling_symbols(const CombingSetup& s) { return s.sigma0.alphabet().size(); }

EnumerateOptions base_options(const CombingSetup& s) {
  EnumerateOptions opt;
  opt.margin = s.margin;
  return opt;
}

// Pair symbols a * |Sigma| + sigma allowed at each site when the tiling
// layer is prescribed.
SiteSymbols forced_layer(const CombingSetup& s, const std::vector<Symbol>& layer) {
  const std::size_t qt = tiling_symbols(s);
  const std::size_t qa = s.x.alphabet().size();
  SiteSymbols ss(layer.size(), std::vector<bool>(qa * qt, false));
  for (std::size_t i = 0; i < layer.size(); ++i)
    for (std::size_t a = 0; a < qa; ++a) ss[i][a * qt + layer[i]] = true;
  return ss;
}

std::vector<Symbol> aligned_layer(const CombingSetup& s) {
  std::vector<Symbol> layer;
  layer.reserve(s.shape.size());
  for (const auto& site : s.shape) layer.push_back(s.tiling.shapes().symbol(0, site));
  return layer;
}

using BorderCounts = std::map<Word, std::size_t>;

BorderCounts border_counts(const CombingSetup& s, const std::vector<AlignedBlock>& blocks) {
  BorderCounts out;
  for (const auto& b : blocks) ++out[border_word(s, b)];
  return out;
}

std::size_t lookup(const BorderCounts& m, const Word& w) {
  const auto it = m.find(w);
  return it == m.end() ? 0 : it->second;
}

}  // namespace

double combing_delta(double eps, std::size_t alphabet_size) {
  if (!(eps > 0)) throw PreconditionError("eps must be positive");
  if (alphabet_size == 0) throw PreconditionError("empty alphabet");
  const double c = 2.0 + std::log(2.0) + 2.0 * std::log(static_cast<double>(alphabet_size));
  return std::nextafter(eps / c, 0.0);
}

CombingSetup build_Z0(const SftSpec& x, const CombingConfig& cfg) {
  if (x.dim() != 1 && x.dim() != 2) throw DimensionMismatch("combing supports dimensions 1 and 2");
  if (cfg.tile_side < 1) throw PreconditionError("tile side must be positive");
  if (cfg.window < 1) throw PreconditionError("window side must be positive");
  const int d = x.dim();
  CombingSetup s;
  s.config = cfg;
  s.x = x;
  s.shape = FiniteSet::cube(d, 0, cfg.tile_side);
  s.kk = difference_set(x.window());
  if (!fits_in_translate(s.kk, s.shape))
    throw PreconditionError("the difference set of the SFT window does not fit inside the tile of side " +
                            std::to_string(cfg.tile_side));
  s.tiling = PeriodicTiling::box(d, cfg.tile_side);
  s.sigma0 = orbit_sft(s.tiling);
  s.product = product_shift(x, s.sigma0);
  s.z0 = SubshiftHandle(s.product.spec);
  s.border = boundary(s.kk, s.shape);
  for (const auto& b : s.border) s.border_index.push_back(*s.shape.index_of(b));
  s.window = FiniteSet::cube(d, 0, cfg.window);
  s.tier = d == 1 ? Tier::Exact1D : Tier::LocalMargin;
  s.margin = cfg.margin >= 0 ? cfg.margin : default_margin(s.z0);

  Hypotheses& h = s.hyp;
  const std::size_t qa = x.alphabet().size();
  h.delta = combing_delta(cfg.eps, qa);
  const Rational delta = rational_from_double(h.delta);
  h.eta = invariance_defect(s.kk, s.shape);
  h.eta_ok = h.eta * static_cast<long>(s.kk.size()) < delta;
  h.shape_border = s.border.size();
  h.border_small = Rational(static_cast<long>(s.border.size())) < delta * static_cast<long>(s.shape.size());
  h.shape_large = Rational(static_cast<long>(s.shape.size())) * delta > 1;
  h.kk_inside = true;
  const FiniteSet uu = difference_set(s.shape);
  h.theta = invariance_defect(uu, s.window);
  h.theta_ok = h.theta * static_cast<long>(s.shape.size()) * static_cast<long>(uu.size()) < delta;
  EnumerateOptions opt;
  opt.margin = s.margin;
  h.h_sigma0 = entropy_estimate(SubshiftHandle(s.sigma0), s.window, opt);
  h.sigma0_small = h.h_sigma0 < h.delta;

  if (!h.eta_ok) h.warnings.push_back("tile shape is not invariant enough under the window differences");
  if (!h.border_small) h.warnings.push_back("tile border is not smaller than delta times the tile size");
  if (!h.shape_large) h.warnings.push_back("tile size does not exceed 1/delta");
  if (!h.theta_ok) h.warnings.push_back("run window is not invariant enough under the tile differences");
  if (!h.sigma0_small) h.warnings.push_back("window entropy of the tiling layer is not below delta");
  if (cfg.strict && !h.warnings.empty()) {
    std::string msg = "combing hypotheses fail:";
    for (const auto& w : h.warnings) msg += " " + w + ";";
    msg.pop_back();
    throw PreconditionError(msg);
  }
  return s;
}

Pattern aligned_pattern(const CombingSetup& s, const AlignedBlock& b) {
  const std::size_t qt = tiling_symbols(s);
  const auto layer = aligned_layer(s);
  Word w(b.x_layer.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<Symbol>(b.x_layer[i] * qt + layer[i]);
  return Pattern(s.shape, std::move(w));
}

Word border_word(const CombingSetup& s, const AlignedBlock& b) {
  Word w;
  w.reserve(s.border_index.size());
  for (auto i : s.border_index) w.push_back(b.x_layer[i]);
  return w;
}

std::vector<AlignedBlock> aligned_blocks(const CombingSetup& s, const SubshiftHandle& z) {
  const auto ss = forced_layer(s, aligned_layer(s));
  EnumerateOptions opt = base_options(s);
  opt.want_list = true;
  opt.site_symbols = &ss;
  const auto pats = enumerate_patterns(z, s.shape, opt).patterns;
  const std::size_t qt = tiling_symbols(s);
  std::vector<AlignedBlock> out;
  out.reserve(pats.size());
  for (const auto& p : pats) {
    AlignedBlock b;
    b.x_layer.reserve(p.size());
    for (Symbol v : p) b.x_layer.push_back(static_cast<Symbol>(v / qt));
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<AlignedBlock> interiors(const CombingSetup& s, const SubshiftHandle& z, const AlignedBlock& b) {
  const Word key = border_word(s, b);
  std::vector<AlignedBlock> out;
  for (auto& c : aligned_blocks(s, z))
    if (border_word(s, c) == key) out.push_back(std::move(c));
  return out;
}

namespace {

std::optional<AlignedBlock> least_multi_interior(const CombingSetup& s, const std::vector<AlignedBlock>& blocks) {
  const auto counts = border_counts(s, blocks);
  for (const auto& b : blocks)
    if (lookup(counts, border_word(s, b)) >= 2) return b;
  return std::nullopt;
}

}  // namespace

std::optional<CombStep> comb_step(const CombingSetup& s, const SubshiftHandle& z) {
  const auto beta = least_multi_interior(s, aligned_blocks(s, z));
  if (!beta) return std::nullopt;
  return CombStep{*beta, z.with_forbidden(aligned_pattern(s, *beta))};
}

DecompositionRecord count_decomposition(const CombingSetup& s, const SubshiftHandle& z, std::size_t step,
                                        std::size_t frame_cap) {
  DecompositionRecord rec;
  rec.step = step;
  const FiniteSet& f = s.window;
  const EnumerateOptions opt = base_options(s);
  rec.count = count_patterns(z, f, opt).count;
  const auto ints = border_counts(s, aligned_blocks(s, z));
  const SubshiftHandle xh(s.x);
  const BigInt qa = static_cast<unsigned>(s.x.alphabet().size());

  std::set<Word> seen;
  bool e1 = true, e2 = true;
  try {
    for (const auto& g : s.tiling.residues()) {
      const PeriodicTiling t = s.tiling.shifted(g);
      const Pattern layer = encode_tiling(t, f);
      if (!seen.insert(layer.labels).second) continue;
      ++rec.phases;

      const auto ss = forced_layer(s, layer.labels);
      EnumerateOptions po = opt;
      po.site_symbols = &ss;
      const BigInt count_t = count_patterns(z, f, po).count;

      const auto approx = tile_approximations(t, f);
      const FiniteSet fr = frame(t, s.kk, f);
      std::vector<std::vector<std::size_t>> tile_border;
      for (const auto& tile : approx.inner) {
        std::vector<std::size_t> idx;
        for (const auto& b : s.border) idx.push_back(*fr.index_of(b + tile.center));
        tile_border.push_back(std::move(idx));
      }
      std::vector<Word> labellings;
      if (fr.empty()) {
        labellings.emplace_back();
      } else {
        EnumerateOptions fo = opt;
        fo.want_list = true;
        fo.list_cap = frame_cap;
        labellings = enumerate_patterns(xh, fr, fo).patterns;
      }
      rec.frame_labellings += labellings.size();

      BigInt sum = 0;
      Word key;
      for (const auto& lab : labellings) {
        BigInt prod = 1;
        for (const auto& idx : tile_border) {
          key.clear();
          for (auto i : idx) key.push_back(lab[i]);
          const std::size_t c = lookup(ints, key);
          if (c == 0) {
            prod = 0;
            break;
          }
          prod *= static_cast<unsigned>(c);
        }
        sum += prod;
      }
      const std::size_t outside = f.size() - approx.inner_cells.size();
      BigInt up = sum;
      for (std::size_t i = 0; i < outside; ++i) up *= qa;
      rec.lower += sum;
      rec.upper += up;
      e1 = e1 && count_t >= sum;
      e2 = e2 && count_t <= up;
    }
  } catch (const CapExceeded& ex) {
    rec.declined = true;
    rec.reason = ex.what();
    return rec;
  }
  rec.e1 = e1 && rec.count >= rec.lower;
  rec.e2 = e2 && rec.count <= rec.upper;
  const double log_lower = rec.lower > 0 ? log_bigint(rec.lower) : -std::numeric_limits<double>::infinity();
  rec.log_upper_delta = s.hyp.delta * static_cast<double>(f.size()) * std::log(static_cast<double>(s.x.alphabet().size())) +
                        log_lower;
  rec.e2_delta = rec.count == 0 || log_bigint(rec.count) <= rec.log_upper_delta + 1e-12;
  return rec;
}

SubshiftHandle chain_shift(const CombingSetup& s, const ChainReport& r, std::size_t n) {
  if (n > r.forbidden.size()) throw PreconditionError("chain has no step " + std::to_string(n));
  return SubshiftHandle(s.product.spec,
                        std::vector<Pattern>(r.forbidden.begin(), r.forbidden.begin() + static_cast<std::ptrdiff_t>(n)));
}

ChainReport run_chain(const SftSpec& x, const CombingConfig& cfg) { return run_chain(build_Z0(x, cfg)); }

ChainReport run_chain(const CombingSetup& s) {
  ChainReport r;
  r.config = s.config;
  r.hyp = s.hyp;
  r.tier = tier_name(s.tier);
  r.margin = s.margin;
  const EnumerateOptions opt = base_options(s);
  const double qa = static_cast<double>(s.x.alphabet().size());
  const double gap_delta = s.hyp.delta * std::log(qa) + s.hyp.delta * std::log(2.0);

  SubshiftHandle z = s.z0;
  auto blocks = aligned_blocks(s, z);
  for (std::size_t n = 0;; ++n) {
    StepRecord rec;
    rec.n = n;
    rec.census = blocks.size();
    const auto cr = count_patterns(z, s.window, opt);
    rec.count = cr.count;
    rec.h = cr.entropy;
    if (n > 0) {
      const StepRecord& prev = r.steps.back();
      rec.drop = prev.h - rec.h;
      rec.u1_eps = rec.drop < s.config.eps;
      rec.u1_delta = rec.drop < gap_delta;
      if (rec.count > prev.count) r.entropy_monotone = false;
    }
    const auto counts = border_counts(s, blocks);
    for (const auto& [w, c] : counts) rec.max_interiors = std::max(rec.max_interiors, c);

    const auto beta = least_multi_interior(s, blocks);
    if (!beta) {
      r.steps.push_back(std::move(rec));
      r.terminal = true;
      break;
    }
    if (n >= s.config.max_steps) {
      r.steps.push_back(std::move(rec));
      r.truncated = true;
      break;
    }
    rec.beta = *beta;
    Pattern bp = aligned_pattern(s, *beta);
    SubshiftHandle next = z.with_forbidden(bp);
    auto next_blocks = aligned_blocks(s, next);

    rec.census_decreased = next_blocks.size() < blocks.size();
    std::vector<AlignedBlock> lost;
    std::set_difference(blocks.begin(), blocks.end(), next_blocks.begin(), next_blocks.end(), std::back_inserter(lost));
    rec.lost_only_beta = lost.size() == 1 && lost[0] == *beta &&
                         std::includes(blocks.begin(), blocks.end(), next_blocks.begin(), next_blocks.end());
    const auto next_counts = border_counts(s, next_blocks);
    for (const auto& b : next_blocks) {
      const Word key = border_word(s, b);
      if (lookup(counts, key) > 2 * lookup(next_counts, key)) rec.ratio_ok = false;
    }
    r.census_strict = r.census_strict && rec.census_decreased;
    r.lost_all = r.lost_all && rec.lost_only_beta;
    r.ratio_all = r.ratio_all && rec.ratio_ok;

    r.forbidden.push_back(std::move(bp));
    r.steps.push_back(std::move(rec));
    z = std::move(next);
    blocks = std::move(next_blocks);
  }

  const double h_last = r.steps.back().h;
  r.u2_eps = r.terminal && h_last < s.config.eps;
  r.u2_delta = r.terminal && h_last < 2 * s.hyp.delta + 2 * s.hyp.delta * std::log(qa);

  std::vector<std::size_t> sample = s.config.decomposition_steps;
  const std::size_t last = r.steps.size() - 1;
  if (sample.empty()) sample = {0, last / 2, last};
  std::sort(sample.begin(), sample.end());
  sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
  for (auto n : sample)
    if (s.config.decompose && n <= last) r.decompositions.push_back(count_decomposition(s, chain_shift(s, r, n), n));
  return r;
}

FiniteSet projection_window(const CombingSetup& s) {
  const Coord side = s.config.projection_window > 0 ? s.config.projection_window : s.config.tile_side;
  return FiniteSet::cube(s.x.dim(), 0, side);
}

SftSpec wrap_projection(const CombingSetup& s, const SubshiftHandle& z) {
  const FiniteSet wp = projection_window(s);
  EnumerateOptions opt = base_options(s);
  opt.want_list = true;
  const auto image = enumerate_image(z, s.product.first, wp, opt).patterns;
  const SubshiftHandle xh(s.x);
  const auto all = enumerate_patterns(xh, wp, opt).patterns;
  std::vector<Pattern> extras;
  std::vector<Word> missing;
  std::set_difference(all.begin(), all.end(), image.begin(), image.end(), std::back_inserter(missing));
  for (auto& w : missing) extras.emplace_back(wp, std::move(w));
  const std::size_t budget = extras.size();
  const SubshiftHandle h(s.x, std::move(extras));
  return sft_outer_approximation(h, budget, std::max<std::size_t>(48, set_union(wp, s.x.window()).size()));
}

void require_contained(const CombingSetup& s, const SubshiftHandle& y) {
  if (y.alphabet() != s.x.alphabet()) throw PreconditionError("Y and X use different alphabets");
  if (y.dim() != s.x.dim()) throw DimensionMismatch("Y and X have different dimensions");
  const FiniteSet wp = projection_window(s);
  EnumerateOptions opt = base_options(s);
  opt.want_list = true;
  const auto py = enumerate_patterns(y, wp, opt).patterns;
  const auto px = enumerate_patterns(SubshiftHandle(s.x), wp, opt).patterns;
  if (!std::includes(px.begin(), px.end(), py.begin(), py.end()))
    throw PreconditionError("Y is not contained in X on the projection window");
}

SftSpec union_step(const CombingSetup& s, const ChainReport& r, const SubshiftHandle& y, std::size_t n) {
  const SftSpec wrapped = wrap_projection(s, chain_shift(s, r, n));
  return union_outer(y, SubshiftHandle(wrapped), projection_window(s), base_options(s));
}

std::vector<ProjectedStep> project_chain(const CombingSetup& s, const ChainReport& r) {
  const EnumerateOptions opt = base_options(s);
  const auto sig = count_patterns(SubshiftHandle(s.sigma0), s.window, opt);
  std::vector<ProjectedStep> out;
  for (std::size_t n = 0; n < r.steps.size(); ++n) {
    const SubshiftHandle z = chain_shift(s, r, n);
    ProjectedStep p;
    p.n = n;
    const auto cz = count_patterns(z, s.window, opt);
    const auto ci = enumerate_image(z, s.product.first, s.window, opt).result;
    p.count_z = cz.count;
    p.count_image = ci.count;
    p.count_sigma0 = sig.count;
    p.h_z = cz.entropy;
    p.h_image = ci.entropy;
    p.h_sigma0 = sig.entropy;
    p.gap_ok = p.count_z <= p.count_image * p.count_sigma0;
    p.wrapped = wrap_projection(s, z);
    p.h_wrapped = entropy_estimate(SubshiftHandle(p.wrapped), s.window, opt);
    out.push_back(std::move(p));
  }
  return out;
}

DenseFamilyResult relative_dense_family(const SftSpec& x, const SubshiftHandle& y, double lo, double hi,
                                        const CombingConfig& cfg) {
  if (!(lo <= hi)) throw PreconditionError("target interval is empty");
  const CombingSetup s = build_Z0(x, cfg);
  require_contained(s, y);
  const ChainReport r = run_chain(s);
  DenseFamilyResult res;
  double best = std::numeric_limits<double>::infinity();
  double nearest = 0.0;
  for (std::size_t n = 0; n < r.steps.size(); ++n) {
    SftSpec u = union_step(s, r, y, n);
    const double h = entropy_estimate(SubshiftHandle(u), s.window, base_options(s));
    res.tried.push_back(h);
    if (lo <= h && h <= hi) {
      res.spec = std::move(u);
      res.step = n;
      res.h = h;
      return res;
    }
    const double dist = h < lo ? lo - h : h - hi;
    if (dist < best) {
      best = dist;
      nearest = h;
    }
  }
  std::ostringstream msg;
  msg << "no chain step lands in [" << lo << ", " << hi << "]; nearest window entropy " << nearest << "; achieved:";
  for (double h : res.tried) msg << " " << h;
  throw PreconditionError(msg.str());
}

}  // namespace shiftforge
