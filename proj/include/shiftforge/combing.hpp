#pragma once

// The combing chain: starting from Z0 = X x Sigma0 (Sigma0 the finite orbit
// of a periodic box tiling), repeatedly forbid one aligned block that
// shares its border with another aligned block. Each step is checked
// against the counting identities that make the entropy drop small.

#include <optional>
#include <string>
#include <vector>

#include "shiftforge/engine.hpp"
#include "shiftforge/shift_ops.hpp"
#include "shiftforge/tiling.hpp"

namespace shiftforge {

struct CombingConfig {
  double eps = 0.3;
  Coord tile_side = 6;
  /// Side of the run window F = [0, n)^d.
  Coord window = 60;
  int margin = -1;
  std::size_t max_steps = 100000;
  /// Refuse when the invariance conditions fail instead of warning.
  bool strict = false;
  /// Evaluate the counting decomposition at the sampled steps.
  bool decompose = true;
  /// Steps at which the counting decomposition is evaluated; empty means
  /// first, middle and last.
  std::vector<std::size_t> decomposition_steps;
  /// Side of the window used to wrap projected steps as SFTs (0: tile side).
  Coord projection_window = 0;
};

/// Largest delta with 2 delta + delta log 2 + 2 delta log q < eps.
double combing_delta(double eps, std::size_t alphabet_size);

struct Hypotheses {
  double delta = 0.0;
  Rational eta;            // invariance defect of S w.r.t. K K^{-1}
  bool eta_ok = false;     // eta |K K^{-1}| < delta
  std::size_t shape_border = 0;
  bool border_small = false;  // |border S| < delta |S|
  bool shape_large = false;   // |S| > 1 / delta
  bool kk_inside = false;     // K K^{-1} fits inside S
  Rational theta;          // invariance defect of F w.r.t. U U^{-1}
  bool theta_ok = false;   // theta |U| |U U^{-1}| < delta
  double h_sigma0 = 0.0;   // h(F, Sigma0)
  bool sigma0_small = false;  // h(F, Sigma0) < delta
  std::vector<std::string> warnings;
};

struct CombingSetup {
  CombingConfig config;
  SftSpec x;
  PeriodicTiling tiling;
  SftSpec sigma0;
  ProductShift product;
  SubshiftHandle z0;
  FiniteSet shape;       // S = [0, L)^d
  FiniteSet kk;          // K K^{-1}
  FiniteSet border;      // boundary of S w.r.t. K K^{-1}
  std::vector<std::size_t> border_index;  // positions of border sites within S
  FiniteSet window;      // F
  Hypotheses hyp;
  Tier tier = Tier::Exact1D;
  int margin = 0;
};

CombingSetup build_Z0(const SftSpec& x, const CombingConfig& cfg);

struct AlignedBlock {
  std::size_t shape = 0;
  Word x_layer;  // labels of X on S, canonical order
  auto operator<=>(const AlignedBlock&) const = default;
};

/// The block as a pattern of the product alphabet on S.
Pattern aligned_pattern(const CombingSetup& s, const AlignedBlock& b);
Word border_word(const CombingSetup& s, const AlignedBlock& b);

std::vector<AlignedBlock> aligned_blocks(const CombingSetup& s, const SubshiftHandle& z);
std::vector<AlignedBlock> interiors(const CombingSetup& s, const SubshiftHandle& z, const AlignedBlock& b);

struct CombStep {
  AlignedBlock beta;
  SubshiftHandle next;
};

/// Forbids the least aligned block with at least two interiors; nullopt
/// when every border has a single interior.
std::optional<CombStep> comb_step(const CombingSetup& s, const SubshiftHandle& z);

struct DecompositionRecord {
  std::size_t step = 0;
  BigInt count;            // |P(F, Z)|
  BigInt lower;            // sum_t sum_f prod_tau |ints|
  BigInt upper;            // sum_t |A|^{|F \ F_t°|} sum_f prod_tau |ints|
  double log_upper_delta = 0.0;  // log(|A|^{delta |F|} * lower)
  bool e1 = false;
  bool e2 = false;
  bool e2_delta = false;
  std::size_t phases = 0;
  std::size_t frame_labellings = 0;
  bool declined = false;
  std::string reason;
};

DecompositionRecord count_decomposition(const CombingSetup& s, const SubshiftHandle& z, std::size_t step,
                                        std::size_t frame_cap = 2'000'000);

struct StepRecord {
  std::size_t n = 0;
  std::optional<AlignedBlock> beta;  // block forbidden to reach step n + 1
  std::size_t census = 0;
  BigInt count;
  double h = 0.0;
  double drop = 0.0;        // h(F, Z_{n-1}) - h(F, Z_n), zero at n = 0
  bool u1_eps = true;       // drop < eps
  bool u1_delta = true;     // drop < delta log|A| + delta log 2
  bool census_decreased = true;
  bool lost_only_beta = true;
  bool ratio_ok = true;     // |ints_n| <= 2 |ints_{n+1}| for surviving blocks
  std::size_t max_interiors = 0;
};

struct ChainReport {
  CombingConfig config;
  Hypotheses hyp;
  std::string tier;
  int margin = 0;
  std::vector<StepRecord> steps;
  std::vector<Pattern> forbidden;  // beta_0, beta_1, ... as product patterns
  std::vector<DecompositionRecord> decompositions;
  bool terminal = false;
  bool truncated = false;
  bool u2_eps = false;
  bool u2_delta = false;
  bool census_strict = true;
  bool entropy_monotone = true;
  bool ratio_all = true;
  bool lost_all = true;
};

ChainReport run_chain(const SftSpec& x, const CombingConfig& cfg);
ChainReport run_chain(const CombingSetup& s);
/// Z_n rebuilt from the report.
SubshiftHandle chain_shift(const CombingSetup& s, const ChainReport& r, std::size_t n);

struct ProjectedStep {
  std::size_t n = 0;
  SftSpec wrapped;          // SFT containing pi(Z_n), inside X
  BigInt count_z;           // |P(F, Z_n)|
  BigInt count_image;       // |P(F, pi(Z_n))|
  BigInt count_sigma0;      // |P(F, Sigma0)|
  double h_z = 0.0;
  double h_image = 0.0;
  double h_sigma0 = 0.0;
  double h_wrapped = 0.0;   // h(F, wrapped)
  bool gap_ok = false;      // |P(F,Z_n)| <= |P(F,pi Z_n)| |P(F,Sigma0)|
};

std::vector<ProjectedStep> project_chain(const CombingSetup& s, const ChainReport& r);

/// The projection window used to wrap projected steps.
FiniteSet projection_window(const CombingSetup& s);
/// pi(Z_n) wrapped as an SFT over X on the projection window.
SftSpec wrap_projection(const CombingSetup& s, const SubshiftHandle& z);
/// Throws unless P(W, Y) is contained in P(W, X) on the projection window.
void require_contained(const CombingSetup& s, const SubshiftHandle& y);
/// The SFT on the projection window allowing P(W, Y) and the wrapped
/// projection of chain step n.
SftSpec union_step(const CombingSetup& s, const ChainReport& r, const SubshiftHandle& y, std::size_t n);

struct DenseFamilyResult {
  SftSpec spec;
  std::size_t step = 0;
  double h = 0.0;            // h(F, spec)
  std::vector<double> tried; // h(F, .) of every candidate, by step
};

/// Runs the chain on X and returns the first union SFT (Y together with a
/// projected chain step, re-expressed on the projection window) whose
/// window entropy lies in [lo, hi]. Throws PreconditionError naming the
/// nearest values otherwise.
DenseFamilyResult relative_dense_family(const SftSpec& x, const SubshiftHandle& y, double lo, double hi,
                                        const CombingConfig& cfg);

}  // namespace shiftforge
