#include "salem/measures.hpp"

#include "salem/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace salem {

namespace {

std::complex<double> level_sum(std::span<const double> digits, double scaled_u, double level_product) {
  std::complex<double> acc{0.0, 0.0};
  for (double a : digits) {
    double t = scaled_u * a / level_product;
    t -= std::floor(t);
    acc += kernels::unit_phase(t);
  }
  return acc / static_cast<double>(digits.size());
}

}  // namespace

std::complex<double> q_factor(const LevelPlan& plan, std::size_t k, double u) {
  if (k < 1 || k > plan.depth()) throw std::invalid_argument("q_factor: level out of range");
  const auto& level = plan.levels[k - 1];
  std::vector<double> digits(level.digits.begin(), level.digits.end());
  return level_sum(digits, u, level_product(plan, k).convert_to<double>());
}

std::complex<double> q_from_dft(const IntegerSet& level_set, std::int64_t m) {
  if (level_set.empty()) throw std::invalid_argument("q_from_dft: empty digit set");
  const std::int64_t freq[] = {m};
  const auto sample = dft_char(level_set, freq).front();
  return sample.value * (static_cast<double>(level_set.horizon()) / static_cast<double>(level_set.size()));
}

StagewiseMeasure::StagewiseMeasure(LevelPlan plan, std::size_t truncation_depth,
                                   double truncation_threshold, double u_max)
    : plan_(std::move(plan)),
      truncation_depth_(truncation_depth),
      threshold_(truncation_threshold),
      u_max_(u_max) {
  validate_plan(plan_);
  if (truncation_depth_ < 1 || truncation_depth_ > plan_.depth()) {
    throw std::invalid_argument("StagewiseMeasure: truncation depth outside [1, plan depth]");
  }
  if (!(threshold_ >= 0.0)) throw std::invalid_argument("StagewiseMeasure: negative threshold");
  Rational scale = 1;
  BigInt m = 1;
  for (const auto& level : plan_.levels) {
    m *= level.horizon;
    digits_.emplace_back(level.digits.begin(), level.digits.end());
    level_products_.push_back(m.convert_to<double>());
    scales_.push_back(to_double(scale));
    scale *= level.eta;
  }
}

std::complex<double> StagewiseMeasure::factor(std::size_t i, double scaled_u) const {
  return level_sum(digits_[i], scaled_u, level_products_[i]);
}

TransformValue StagewiseMeasure::mu_hat(double u) const {
  if (std::abs(u) > u_max_) throw std::invalid_argument("mu_hat: |u| exceeds configured u_max");
  TransformValue out{{1.0, 0.0}, 0, false};
  for (std::size_t i = 0; i < truncation_depth_; ++i) {
    out.value *= factor(i, scales_[i] * u);
    out.levels_used = i + 1;
    // The first omitted factor has every phase below η_1···η_i |u| / M_{i+1}.
    if (scales_[i] * std::abs(u) / level_products_[i] < threshold_) return out;
  }
  out.shallow = threshold_ > 0.0;
  return out;
}

std::complex<double> StagewiseMeasure::mu_hat_at_depth(double u, std::size_t p) const {
  if (p > plan_.depth()) throw std::invalid_argument("mu_hat_at_depth: depth exceeds plan");
  std::complex<double> value{1.0, 0.0};
  for (std::size_t i = 0; i < p; ++i) value *= factor(i, scales_[i] * u);
  return value;
}

std::vector<TransformValue> mu_hat_grid(const StagewiseMeasure& measure, std::span<const double> us) {
  std::vector<TransformValue> out(us.size());
  const auto n = static_cast<std::int64_t>(us.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = measure.mu_hat(us[i]);
  return out;
}

namespace serial {
std::vector<TransformValue> mu_hat_grid(const StagewiseMeasure& measure, std::span<const double> us) {
  std::vector<TransformValue> out;
  out.reserve(us.size());
  for (double u : us) out.push_back(measure.mu_hat(u));
  return out;
}
}  // namespace serial

StageDistribution::StageDistribution(const LevelPlan& plan, std::size_t k) : stage_(build_stage(plan, k)) {}

Rational StageDistribution::exact(const Rational& x) const {
  if (x < 0 || x > 1) throw std::invalid_argument("stage_cdf: x outside [0, 1]");
  const auto& xs = stage_.left_endpoints;
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return 0;
  const auto i = static_cast<long>(it - xs.begin()) - 1;  // intervals strictly before this one are full
  Rational within = (x - xs[static_cast<std::size_t>(i)]) / stage_.interval_length;
  if (within > 1) within = 1;
  return (Rational(i) + within) / Rational(static_cast<long>(xs.size()));
}

double stage_cdf(const StagewiseMeasure& measure, std::size_t k, const Rational& x) {
  if (k > measure.truncation_depth()) throw std::invalid_argument("stage_cdf: k exceeds truncation depth");
  return StageDistribution(measure.plan(), k)(x);
}

DecayReport decay_check(const StagewiseMeasure& measure, const DecayGrid& grid, double beta,
                        double tolerance) {
  if (grid.u_max > measure.u_max()) throw std::invalid_argument("decay_check: grid exceeds u_max");
  const auto lo = static_cast<std::int64_t>(std::ceil(std::max(grid.u_min, 2.0)));
  const auto hi = static_cast<std::int64_t>(std::floor(grid.u_max));
  if (grid.per_octave < 0) throw std::invalid_argument("decay_check: negative per_octave");
  std::vector<std::int64_t> ints;
  if (grid.per_octave == 0) {
    for (std::int64_t u = lo; u <= hi; ++u) ints.push_back(u);
  } else {
    ints = geometric_integer_grid(lo, hi, grid.per_octave);
  }
  std::vector<double> us(ints.begin(), ints.end());
  const auto values = mu_hat_grid(measure, us);

  DecayReport report;
  report.beta_target = beta;
  report.tolerance = tolerance;
  std::map<int, DecaySample> blocks;
  for (std::size_t i = 0; i < us.size(); ++i) {
    report.spectrum.emplace_back(us[i], values[i].value);
    report.truncation_depth_used = std::max(report.truncation_depth_used, values[i].levels_used);
    report.shallow = report.shallow || values[i].shallow;
    const int b = static_cast<int>(std::floor(std::log2(us[i])));
    const double mag = std::abs(values[i].value);
    auto [it, inserted] = blocks.try_emplace(b, DecaySample{us[i], mag});
    if (!inserted && mag > it->second.magnitude) it->second = {us[i], mag};
  }
  for (const auto& [b, s] : blocks) report.envelope.push_back(s);
  report.alpha_hat = decay_exponent_fit(report.envelope);
  report.pass = report.alpha_hat >= beta - tolerance;
  return report;
}

}  // namespace salem
