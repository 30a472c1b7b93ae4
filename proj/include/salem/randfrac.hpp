#pragma once

// Limsup random fractal on [0,1]: every cell at stage i+1 is a child of a
// surviving stage-i cell and survives independently with probability
// N_{i+1}^{-β}. Dimension statistics, the reweighted first-stage measure
// and its Fourier transform, and the equidistribution check of the final
// stage's initial points.
//
// The first-stage measure is taken in density form: p^{-1} times the
// indicator of the surviving cells times Lebesgue measure. Assigning each
// Borel set B the mass p^{-1} ξ(B) |B| with a single 0/1 label ξ(B) would not
// be additive; the density form is the additive reading.

#include "salem/equidist.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace salem {

struct RandomFractalConfig {
  double beta = 0.5;                      ///< [0, 1); 0 keeps every cell
  std::vector<std::int64_t> level_sizes;  ///< N_i >= 2, non-decreasing
  std::size_t depth = 1;                  ///< <= level_sizes.size()
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
};

/// Throws std::invalid_argument.
void validate_config(const RandomFractalConfig& config);

/// splitmix64 mix of (master_seed, trial_index).
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

struct TrialResult {
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;
  double beta = 0.0;
  std::vector<std::int64_t> level_sizes;  ///< N_1..N_depth
  std::vector<double> probabilities;      ///< N_i^{-β}
  /// stages[i-1]: surviving cell indices at resolution M_i, sorted. When the
  /// construction dies out the last entry is the empty stage.
  std::vector<std::vector<std::int64_t>> stages;
  std::vector<std::int64_t> white_counts;
  bool extinct = false;

  /// M_i for 1-based i.
  std::int64_t resolution(std::size_t i) const;
};

TrialResult generate_trial(const RandomFractalConfig& config, std::size_t trial_index);

/// Trials 0..trials-1, in index order; independent of thread count.
std::vector<TrialResult> generate_trials(const RandomFractalConfig& config);

struct DimensionStats {
  std::size_t trials = 0;
  std::size_t extinct = 0;
  double extinction_rate = 0.0;
  double mean_dim = 0.0;  ///< NaN when every trial died out
  double std_dim = 0.0;   ///< sample standard deviation; 0 with one survivor
  std::vector<double> dims;  ///< surviving trials, in index order
};

/// Per surviving trial: log(final white count) / log(M_depth). Requires depth >= 3.
DimensionStats dimension_experiment(const RandomFractalConfig& config);

/// Lebesgue measure on [0,1]: (1 - e^{-2πiu}) / (2πiu), 1 at u = 0.
std::complex<double> mu0_hat(double u);

struct MeasureValue {
  std::complex<double> value;
  bool zero_measure = false;
};

/// Transform of (p_1···p_i)^{-1} · indicator(stage i) · Lebesgue, 1-based i.
MeasureValue stage_measure_hat(const TrialResult& trial, std::size_t stage, double u);

/// stage_measure_hat at stage 1.
MeasureValue mu1_hat(const TrialResult& trial, double u);

struct LemmaCheckReport {
  std::int64_t n1 = 0;
  double epsilon1 = 0.0;
  std::int64_t u_min = 2;
  std::int64_t u_max = 64;
  std::size_t trials = 0;
  std::size_t satisfied = 0;
  double satisfied_fraction = 0.0;
  double worst_ratio = 0.0;  ///< max over trials and u of |μ̂₁-μ̂₀| / |u|^{(β-1)/2}
};

inline constexpr std::int64_t kDefaultLemmaUMax = 64;

/// Trial is satisfied iff |μ̂₁(u) - μ̂₀(u)| < ε₁ |u|^{(β-1)/2} for every
/// integer u in [2, u_max]. Uses the first level only; u_max <= N₁.
LemmaCheckReport lemma63_experiment(const RandomFractalConfig& config, double epsilon1,
                                    std::int64_t u_max = kDefaultLemmaUMax);

struct StageSweepRow {
  std::size_t stage = 0;
  double epsilon = 0.0;
  std::size_t satisfied = 0;
  std::size_t evaluated = 0;  ///< trials alive at this stage
  double satisfied_fraction = 0.0;
};

/// For i = 1..depth: |μ̂_i(u) - μ̂_{i-1}(u)| < 2^{-i} |u|^{(β-1)/2} over the
/// same u grid, with μ_0 Lebesgue.
std::vector<StageSweepRow> lemma63_stage_sweep(const RandomFractalConfig& config,
                                               std::int64_t u_max = kDefaultLemmaUMax);

/// Final-stage cells as an approximation at resolution M_depth.
NApproximation final_approximation(const TrialResult& trial);

/// Stage-i ancestors of the final-stage cells, one approximation per stage.
std::vector<NApproximation> trial_approximations(const TrialResult& trial);

/// equidist_order on the final stage's initial points. Throws on extinction.
OrderEstimate corollary64_check(const TrialResult& trial, double cap = 1.0);

}  // namespace salem
