#include "salem/randfrac.hpp"

#include "salem/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace salem {

void validate_config(const RandomFractalConfig& config) {
  if (!(config.beta >= 0.0 && config.beta < 1.0)) throw std::invalid_argument("beta must lie in [0, 1)");
  if (config.level_sizes.empty()) throw std::invalid_argument("level sizes are empty");
  if (config.depth < 1 || config.depth > config.level_sizes.size()) {
    throw std::invalid_argument("depth must lie in [1, number of level sizes]");
  }
  if (config.trials < 1) throw std::invalid_argument("trials must be positive");
  kernels::int128 m = 1;
  for (std::size_t i = 0; i < config.level_sizes.size(); ++i) {
    const auto n = config.level_sizes[i];
    if (n < 2) throw std::invalid_argument("level " + std::to_string(i + 1) + ": N must be >= 2");
    if (i > 0 && n < config.level_sizes[i - 1]) {
      throw std::invalid_argument("level " + std::to_string(i + 1) + ": level sizes must be non-decreasing");
    }
    if (i < config.depth) {
      m *= n;
      if (m > (static_cast<kernels::int128>(1) << 62)) throw std::invalid_argument("N_1...N_depth exceeds 2^62");
    }
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform53(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
  return splitmix64(master_seed ^ splitmix64(trial_index));
}

std::int64_t TrialResult::resolution(std::size_t i) const {
  std::int64_t m = 1;
  for (std::size_t j = 0; j < i; ++j) m *= level_sizes.at(j);
  return m;
}

TrialResult generate_trial(const RandomFractalConfig& config, std::size_t trial_index) {
  validate_config(config);
  if (trial_index >= config.trials) throw std::invalid_argument("trial index out of range");
  TrialResult t;
  t.trial_index = trial_index;
  t.seed = trial_seed(config.master_seed, trial_index);
  t.beta = config.beta;
  t.level_sizes.assign(config.level_sizes.begin(), config.level_sizes.begin() + config.depth);
  std::mt19937_64 gen(t.seed);

  std::vector<std::int64_t> parents = {0};
  for (std::size_t i = 0; i < config.depth; ++i) {
    const auto n = t.level_sizes[i];
    const double p = std::pow(static_cast<double>(n), -config.beta);
    t.probabilities.push_back(p);
    std::vector<std::int64_t> children;
    for (auto c : parents) {
      for (std::int64_t j = 0; j < n; ++j) {
        if (uniform53(gen) < p) children.push_back(c * n + j);
      }
    }
    t.white_counts.push_back(static_cast<std::int64_t>(children.size()));
    t.stages.push_back(children);
    if (children.empty()) {
      t.extinct = true;
      break;
    }
    parents = std::move(children);
  }
  return t;
}

std::vector<TrialResult> generate_trials(const RandomFractalConfig& config) {
  validate_config(config);
  std::vector<TrialResult> out(config.trials);
  const auto count = static_cast<std::int64_t>(config.trials);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) out[i] = generate_trial(config, static_cast<std::size_t>(i));
  return out;
}

DimensionStats dimension_experiment(const RandomFractalConfig& config) {
  validate_config(config);
  if (config.depth < 3) throw std::invalid_argument("dimension_experiment: depth must be >= 3");
  const auto trials = generate_trials(config);
  DimensionStats s;
  s.trials = trials.size();
  for (const auto& t : trials) {
    if (t.extinct) {
      ++s.extinct;
      continue;
    }
    const double m = static_cast<double>(t.resolution(config.depth));
    s.dims.push_back(std::log(static_cast<double>(t.white_counts.back())) / std::log(m));
  }
  s.extinction_rate = static_cast<double>(s.extinct) / static_cast<double>(s.trials);
  if (s.dims.empty()) {
    s.mean_dim = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  const double n = static_cast<double>(s.dims.size());
  s.mean_dim = std::accumulate(s.dims.begin(), s.dims.end(), 0.0) / n;
  if (s.dims.size() > 1) {
    double ss = 0.0;
    for (double d : s.dims) ss += (d - s.mean_dim) * (d - s.mean_dim);
    s.std_dim = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

namespace {

// ∫_0^{1/M} e^{-2πiux} dx.
std::complex<double> cell_integral(double u, double m) {
  if (u == 0.0) return 1.0 / m;
  const std::complex<double> i(0.0, 1.0);
  return (1.0 - kernels::unit_phase(u / m)) / (i * kernels::kTwoPi * u);
}

// Σ_j e^{-2πi u j / M}, with exact reduction for integral u.
std::complex<double> cell_phase_sum(const std::vector<std::int64_t>& cells, std::int64_t m, double u) {
  std::complex<double> sum = 0.0;
  const bool integral = std::floor(u) == u && std::abs(u) < 0x1.0p52;
  if (integral) {
    auto k = static_cast<std::int64_t>(u) % m;
    if (k < 0) k += m;
    for (auto j : cells) sum += kernels::root_of_unity(kernels::mul_mod(k, j, m), m);
  } else {
    for (auto j : cells) {
      const double t = u * static_cast<double>(j) / static_cast<double>(m);
      sum += kernels::unit_phase(t - std::floor(t));
    }
  }
  return sum;
}

}  // namespace

std::complex<double> mu0_hat(double u) { return cell_integral(u, 1.0); }

MeasureValue stage_measure_hat(const TrialResult& trial, std::size_t stage, double u) {
  if (stage < 1 || stage > trial.stages.size()) throw std::invalid_argument("stage_measure_hat: no such stage");
  const auto& cells = trial.stages[stage - 1];
  if (cells.empty()) return {0.0, true};
  double weight = 1.0;
  for (std::size_t i = 0; i < stage; ++i) weight /= trial.probabilities[i];
  const auto m = trial.resolution(stage);
  return {weight * cell_integral(u, static_cast<double>(m)) * cell_phase_sum(cells, m, u), false};
}

MeasureValue mu1_hat(const TrialResult& trial, double u) { return stage_measure_hat(trial, 1, u); }

namespace {

void check_u_max(const RandomFractalConfig& config, std::int64_t u_max) {
  if (u_max < 2) throw std::invalid_argument("u_max must be >= 2");
  if (u_max > config.level_sizes.front()) throw std::invalid_argument("u_max must not exceed N_1");
}

}  // namespace

LemmaCheckReport lemma63_experiment(const RandomFractalConfig& config, double epsilon1, std::int64_t u_max) {
  validate_config(config);
  check_u_max(config, u_max);
  if (!(epsilon1 > 0.0)) throw std::invalid_argument("epsilon1 must be positive");
  RandomFractalConfig one = config;
  one.depth = 1;

  LemmaCheckReport r;
  r.n1 = config.level_sizes.front();
  r.epsilon1 = epsilon1;
  r.u_max = u_max;
  r.trials = config.trials;
  std::vector<char> ok(config.trials, 0);
  std::vector<double> worst(config.trials, 0.0);
  const auto count = static_cast<std::int64_t>(config.trials);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < count; ++t) {
    const auto trial = generate_trial(one, static_cast<std::size_t>(t));
    bool all = true;
    double w = 0.0;
    for (std::int64_t u = r.u_min; u <= u_max; ++u) {
      const double ud = static_cast<double>(u);
      const double diff = std::abs(mu1_hat(trial, ud).value - mu0_hat(ud));
      const double scale = std::pow(ud, (config.beta - 1.0) / 2.0);
      w = std::max(w, diff / scale);
      if (!(diff < epsilon1 * scale)) all = false;
    }
    ok[t] = all ? 1 : 0;
    worst[t] = w;
  }
  r.satisfied = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  r.satisfied_fraction = static_cast<double>(r.satisfied) / static_cast<double>(r.trials);
  r.worst_ratio = *std::max_element(worst.begin(), worst.end());
  return r;
}

std::vector<StageSweepRow> lemma63_stage_sweep(const RandomFractalConfig& config, std::int64_t u_max) {
  validate_config(config);
  check_u_max(config, u_max);
  const auto trials = generate_trials(config);
  std::vector<StageSweepRow> rows;
  for (std::size_t i = 1; i <= config.depth; ++i) {
    StageSweepRow row;
    row.stage = i;
    row.epsilon = std::ldexp(1.0, -static_cast<int>(i));
    for (const auto& t : trials) {
      if (t.stages.size() < i || t.stages[i - 1].empty()) continue;
      ++row.evaluated;
      bool all = true;
      for (std::int64_t u = 2; u <= u_max && all; ++u) {
        const double ud = static_cast<double>(u);
        const auto prev = i == 1 ? mu0_hat(ud) : stage_measure_hat(t, i - 1, ud).value;
        const double diff = std::abs(stage_measure_hat(t, i, ud).value - prev);
        all = diff < row.epsilon * std::pow(ud, (config.beta - 1.0) / 2.0);
      }
      if (all) ++row.satisfied;
    }
    row.satisfied_fraction =
        row.evaluated == 0 ? 0.0 : static_cast<double>(row.satisfied) / static_cast<double>(row.evaluated);
    rows.push_back(row);
  }
  return rows;
}

NApproximation final_approximation(const TrialResult& trial) {
  if (trial.stages.empty()) throw std::invalid_argument("trial has no stages");
  return {trial.resolution(trial.stages.size()), trial.stages.back()};
}

std::vector<NApproximation> trial_approximations(const TrialResult& trial) {
  if (trial.extinct) throw std::invalid_argument("trial died out");
  const auto depth = trial.stages.size();
  const auto m_final = trial.resolution(depth);
  std::vector<NApproximation> out;
  for (std::size_t i = 1; i <= depth; ++i) {
    const auto m = trial.resolution(i);
    const auto ratio = m_final / m;
    NApproximation a{m, {}};
    for (auto c : trial.stages.back()) {
      const auto anc = c / ratio;
      if (a.cells.empty() || a.cells.back() != anc) a.cells.push_back(anc);
    }
    out.push_back(std::move(a));
  }
  return out;
}

OrderEstimate corollary64_check(const TrialResult& trial, double cap) {
  if (trial.extinct) throw std::invalid_argument("corollary64_check: trial died out");
  const NApproximation approx = final_approximation(trial);
  return equidist_order(std::span<const NApproximation>(&approx, 1), cap);
}

}  // namespace salem
