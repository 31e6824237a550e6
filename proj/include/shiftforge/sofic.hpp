#pragma once

// Sofic shifts as one-block images of SFTs, the small-gap cover built from
// a periodic box tiling, sampled entropy gaps across factor maps, and the
// dense-family and nested-target pipelines for sofic shifts.

#include <cstdint>
#include <string>
#include <vector>

#include "shiftforge/combing.hpp"

namespace shiftforge {

struct SoficPresentation {
  SftSpec cover;
  BlockCode code;  // one-block, cover alphabet to the sofic alphabet
};

/// Recodes to a one-block code when the code has a larger neighborhood.
SoficPresentation make_presentation(SftSpec cover, BlockCode code);

/// Problems with a presentation, in plain words.
std::vector<std::string> presentation_violations(const SftSpec& cover, const BlockCode& code);

struct CoverConstruction {
  SoficPresentation base;
  CombingConfig config;
  std::size_t qx = 0;            // |A_X|
  std::size_t qw = 0;            // |A_W|
  Alphabet merged;               // A_X then A_W, tokens "x:a" and "w:b"
  std::vector<Symbol> extended;  // merged symbol to A_W
  PeriodicTiling tiling;
  SftSpec sigma0;
  FiniteSet shape;
  FiniteSet kk;
  FiniteSet border;
  SftSpec spec;                  // over merged x Sigma, symbol alpha * |Sigma| + sigma
  BlockCode code;                // to A_W
  BlockCode tiling_code;         // to Sigma
  double delta = 0.0;            // 4 delta + delta (1 + delta) log|A_X| < eps / 2
  std::vector<std::string> warnings;
};

CoverConstruction build_cover(const SoficPresentation& w, const CombingConfig& cfg);

/// The image of the cover on F equals the image of the original
/// presentation on F.
bool cover_projects_onto(const CoverConstruction& c, const FiniteSet& f, const EnumerateOptions& opt = {});
/// The cover's window patterns on F are exactly the relabelled pairs
/// (phi_t(x), t) for x in P(F, X) and t in P(F, Sigma0).
bool cover_matches_rules(const CoverConstruction& c, const FiniteSet& f, const EnumerateOptions& opt = {});
/// Number of (pattern, tile) pairs, over tiles inside F, whose A_W sites
/// differ from the tile interior.
std::size_t typing_violations(const CoverConstruction& c, const FiniteSet& f, const EnumerateOptions& opt = {});

struct GapSample {
  std::string label;
  std::uint64_t seed = 0;
  BigInt count_up;
  BigInt count_down;
  double h_up = 0.0;
  double h_down = 0.0;
  double gap = 0.0;
  bool within = true;  // gap <= window bound
};

struct GapReport {
  std::string tier;
  std::vector<GapSample> samples;
  double max_gap = 0.0;
  double window_bound = 0.0;    // bound provable on this window
  double analytic_bound = 0.0;  // 4 delta + delta (1 + delta) log|A_X|
  double h_tiling = 0.0;
  bool all_within = true;
  bool analytic_ok = true;
};

/// Gaps h(F, Z') - h(F, code(Z')) over the full system, a periodic orbit
/// (dimension one) and `samples` seeded random forbidden augmentations.
std::vector<GapSample> sample_gaps(const SubshiftHandle& up, const BlockCode& code, std::size_t samples,
                                   const FiniteSet& f, std::uint64_t seed, const EnumerateOptions& opt = {});

GapReport estimate_max_gap(const CoverConstruction& c, std::size_t samples, const FiniteSet& f, std::uint64_t seed,
                           const EnumerateOptions& opt = {});

/// Projection of X x T onto X: every sampled gap is at most h(F, T).
GapReport product_gap_control(const SftSpec& x, const SftSpec& t, std::size_t samples, const FiniteSet& f,
                              std::uint64_t seed, const EnumerateOptions& opt = {});

/// Window-level preimage of V under the cover code.
SubshiftHandle cover_preimage(const CoverConstruction& c, const SubshiftHandle& v, const EnumerateOptions& opt = {});

struct SoficFamilyResult {
  SoficPresentation presentation;
  std::size_t step = 0;
  double h_up = 0.0;    // h(F, Z)
  double h_down = 0.0;  // h(F, U)
  /// (step, h(F, U)) for every step evaluated by the search.
  std::vector<std::pair<std::size_t, double>> tried;
  /// The evaluated entropies are non-increasing in the step.
  bool monotone = true;
};

/// Cover W, pull V back, comb upstairs and push forward the first union
/// step whose image entropy on the chain window lies in [lo, hi]. The
/// step entropies are non-increasing, so the step is found by bisection.
SoficFamilyResult sofic_dense_family(const SoficPresentation& w, const SubshiftHandle& v, double lo, double hi,
                                     const CombingConfig& cover_cfg, const CombingConfig& chain_cfg);

struct NestLevel {
  std::size_t step = 0;  // chain step upstairs; level 0 is W itself
  double eps = 0.0;
  double h = 0.0;        // h(F, W_n)
  SoficPresentation presentation;
};

struct NestReport {
  double r = 0.0;
  std::vector<NestLevel> levels;
  bool complete = false;
  bool monotone = true;  // as in SoficFamilyResult
  std::string message;
};

/// W = W_0 ⊇ W_1 ⊇ ... with r <= h(F, W_n) < r + eps_n, all levels taken
/// from one chain upstairs so that they are nested.
NestReport entropy_target_nest(const SoficPresentation& w, double r, const std::vector<double>& eps,
                               const CombingConfig& cover_cfg, const CombingConfig& chain_cfg);

}  // namespace shiftforge
