#pragma once

#include "salem/integer_set.hpp"
#include "salem/rational.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace salem {

/// Magnitudes below this are treated as exact zeros by the decay estimator.
inline constexpr double kMagnitudeFloor = 1e-12;

struct DensityEstimate {
  double exponent = 0.0;  ///< clamped to [0, 1]
  std::vector<std::pair<std::int64_t, std::int64_t>> samples;  ///< (N, |A ∩ [0,N)|)
  double residual = 0.0;  ///< RMS residual of the log-log fit
  bool empty_set = false;
};

struct SpectrumSample {
  double frequency = 0.0;
  std::complex<double> value;
};

struct DecaySample {
  double m = 0.0;
  double magnitude = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

/// Ordinary least squares y ≈ intercept + slope·x; needs two distinct x.
LineFit least_squares_line(std::span<const double> xs, std::span<const double> ys);

/// Least-squares slope of log |A ∩ [0,N)| against log N over the checkpoints.
/// Checkpoints must be strictly increasing, within the horizon, at least two.
DensityEstimate fractional_density(const IntegerSet& set, std::span<const std::int64_t> grid);

/// Powers of two below the horizon followed by the horizon itself.
std::vector<std::int64_t> dyadic_checkpoints(std::int64_t horizon, std::int64_t first = 2);

/// (1/N) Σ_{n∈A} e^{-2πikn/N} as a sparse sum over members; 0 <= k < N.
std::vector<SpectrumSample> dft_char(const IntegerSet& set, std::span<const std::int64_t> freqs);

/// (1/d) Σ_j e^{-2πi x_j m}, phases reduced exactly modulo 1 before evaluation.
std::complex<double> weyl_sum(std::span<const Rational> points, std::int64_t m);

/// Bound-fitting decay exponent: min over samples of 2(-log|v|)/log m,
/// capped at `cap` and floored at 0; samples below kMagnitudeFloor are skipped.
/// Requires at least 4 samples, all with m >= 2.
double decay_exponent_fit(std::span<const DecaySample> samples, double cap = 1.0);

/// Distinct integers round(lo * 2^(i/per_octave)) within [lo, hi].
std::vector<std::int64_t> geometric_integer_grid(std::int64_t lo, std::int64_t hi,
                                                 int per_octave);

}  // namespace salem
