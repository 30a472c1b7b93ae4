#include "salem/core_sets.hpp"

#include "salem/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace salem {

DensityEstimate fractional_density(const IntegerSet& set, std::span<const std::int64_t> grid) {
  if (grid.size() < 2) throw std::invalid_argument("fractional_density: need at least 2 checkpoints");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1 || grid[i] > set.horizon()) {
      throw std::invalid_argument("fractional_density: checkpoint " + std::to_string(grid[i]) +
                                  " outside [1, horizon]");
    }
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw std::invalid_argument("fractional_density: checkpoints not strictly increasing");
    }
  }

  DensityEstimate est;
  est.samples.reserve(grid.size());
  for (auto n : grid) est.samples.emplace_back(n, set.count_below(n));
  if (set.empty()) {
    est.empty_set = true;
    return est;
  }

  // log 0 is undefined, so checkpoints before the first member are left out.
  std::vector<double> xs, ys;
  for (auto [n, c] : est.samples) {
    if (c > 0) {
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(static_cast<double>(c)));
    }
  }
  if (xs.size() < 2) return est;

  const auto fit = least_squares_line(xs, ys);
  est.exponent = std::clamp(fit.slope, 0.0, 1.0);
  est.residual = fit.rms_residual;
  return est;
}

LineFit least_squares_line(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("least_squares_line: need two or more points");
  const double k = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares_line: x values coincide");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / k);
  return fit;
}

std::vector<std::int64_t> dyadic_checkpoints(std::int64_t horizon, std::int64_t first) {
  std::vector<std::int64_t> grid;
  for (std::int64_t n = first; n < horizon; n *= 2) grid.push_back(n);
  grid.push_back(horizon);
  return grid;
}

std::vector<SpectrumSample> dft_char(const IntegerSet& set, std::span<const std::int64_t> freqs) {
  const auto n = set.horizon();
  for (auto k : freqs) {
    if (k < 0 || k >= n) {
      throw std::invalid_argument("dft_char: frequency " + std::to_string(k) + " outside [0, N)");
    }
  }
  const auto sums = kernels::sparse_dft(set.elements(), n, freqs);
  std::vector<SpectrumSample> out(freqs.size());
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    out[i] = {static_cast<double>(freqs[i]), sums[i] / static_cast<double>(n)};
  }
  return out;
}

std::complex<double> weyl_sum(std::span<const Rational> points, std::int64_t m) {
  if (m == 0) throw std::invalid_argument("weyl_sum: m = 0 is excluded");
  if (points.empty()) throw std::invalid_argument("weyl_sum: no points");
  std::complex<double> acc{0.0, 0.0};
  const Rational mm(m);
  for (const auto& x : points) acc += kernels::unit_phase(to_double(fractional_part(x * mm)));
  return acc / static_cast<double>(points.size());
}

double decay_exponent_fit(std::span<const DecaySample> samples, double cap) {
  if (samples.size() < 4) throw std::invalid_argument("decay_exponent_fit: need at least 4 samples");
  double alpha = cap;
  for (const auto& s : samples) {
    if (!(s.m >= 2.0)) throw std::invalid_argument("decay_exponent_fit: sample with m < 2");
    if (s.magnitude < kMagnitudeFloor) continue;
    alpha = std::min(alpha, 2.0 * -std::log(s.magnitude) / std::log(s.m));
  }
  return alpha > 0.0 ? alpha : 0.0;
}

std::vector<std::int64_t> geometric_integer_grid(std::int64_t lo, std::int64_t hi, int per_octave) {
  if (per_octave < 1) throw std::invalid_argument("geometric grid: per_octave must be >= 1");
  std::vector<std::int64_t> grid;
  if (lo < 1 || hi < lo) return grid;
  for (int i = 0;; ++i) {
    const double v = static_cast<double>(lo) * std::exp2(static_cast<double>(i) / per_octave);
    const auto m = static_cast<std::int64_t>(std::llround(v));
    if (m > hi) break;
    if (grid.empty() || m != grid.back()) grid.push_back(m);
  }
  return grid;
}

}  // namespace salem
