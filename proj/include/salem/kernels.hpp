#pragma once

// Data-parallel exponential-sum kernels. The default entry points use
// OpenMP; the `serial` namespace holds the straight-line reference versions
// that the tests and the benchmark compare against.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace salem::kernels {

__extension__ using int128 = __int128;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// e^{-2πi t}.
inline std::complex<double> unit_phase(double t) {
  const double angle = -kTwoPi * t;
  return {std::cos(angle), std::sin(angle)};
}

/// e^{-2πi r/n} for an integer residue r in [0, n).
inline std::complex<double> root_of_unity(std::int64_t r, std::int64_t n) {
  return unit_phase(static_cast<double>(r) / static_cast<double>(n));
}

/// (k * n) mod N without overflow for N < 2^62.
inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  const auto r = static_cast<std::int64_t>((static_cast<int128>(a) * b) % n);
  return r < 0 ? r + n : r;
}

/// For each k in freqs: sum over members n of e^{-2πi k n / N} (unnormalized).
std::vector<std::complex<double>> sparse_dft(std::span<const std::int64_t> members,
                                             std::int64_t horizon,
                                             std::span<const std::int64_t> freqs);

/// For each m: (1/d) sum over cells j of e^{-2πi j m / N}.
std::vector<std::complex<double>> cell_weyl_sums(std::span<const std::int64_t> cells,
                                                 std::int64_t horizon,
                                                 std::span<const std::int64_t> ms);

namespace serial {

std::vector<std::complex<double>> sparse_dft(std::span<const std::int64_t> members,
                                             std::int64_t horizon,
                                             std::span<const std::int64_t> freqs);

std::vector<std::complex<double>> cell_weyl_sums(std::span<const std::int64_t> cells,
                                                 std::int64_t horizon,
                                                 std::span<const std::int64_t> ms);

}  // namespace serial

}  // namespace salem::kernels
