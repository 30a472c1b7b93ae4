#include "salem/kernels.hpp"

namespace salem::kernels {

namespace {

constexpr std::int64_t kRootTableMax = std::int64_t{1} << 22;

std::complex<double> sparse_term_sum(std::span<const std::int64_t> members, std::int64_t horizon,
                                     std::int64_t k) {
  std::complex<double> acc{0.0, 0.0};
  for (auto n : members) acc += root_of_unity(mul_mod(k, n, horizon), horizon);
  return acc;
}

}  // namespace

std::vector<std::complex<double>> sparse_dft(std::span<const std::int64_t> members,
                                             std::int64_t horizon,
                                             std::span<const std::int64_t> freqs) {
  std::vector<std::complex<double>> out(freqs.size());
  const auto count = static_cast<std::int64_t>(freqs.size());
  const double work = static_cast<double>(freqs.size()) * static_cast<double>(members.size());
  if (horizon <= kRootTableMax && work >= 4.0 * static_cast<double>(horizon)) {
    // Dense spectra: look up e^{-2πi r/N} instead of recomputing it per term.
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(horizon));
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < horizon; ++r) roots[static_cast<std::size_t>(r)] = root_of_unity(r, horizon);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      std::int64_t k = freqs[i] % horizon;
      if (k < 0) k += horizon;
      std::complex<double> acc{0.0, 0.0};
      for (auto n : members) {
        std::int64_t r = k * (n % horizon) % horizon;
        if (r < 0) r += horizon;
        acc += roots[static_cast<std::size_t>(r)];
      }
      out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = sparse_term_sum(members, horizon, freqs[i]);
  }
  return out;
}

std::vector<std::complex<double>> cell_weyl_sums(std::span<const std::int64_t> cells,
                                                 std::int64_t horizon,
                                                 std::span<const std::int64_t> ms) {
  auto out = sparse_dft(cells, horizon, ms);
  const double d = static_cast<double>(cells.size());
  for (auto& v : out) v /= d;
  return out;
}

namespace serial {

std::vector<std::complex<double>> sparse_dft(std::span<const std::int64_t> members,
                                             std::int64_t horizon,
                                             std::span<const std::int64_t> freqs) {
  std::vector<std::complex<double>> out;
  out.reserve(freqs.size());
  for (auto k : freqs) out.push_back(sparse_term_sum(members, horizon, k));
  return out;
}

std::vector<std::complex<double>> cell_weyl_sums(std::span<const std::int64_t> cells,
                                                 std::int64_t horizon,
                                                 std::span<const std::int64_t> ms) {
  auto out = serial::sparse_dft(cells, horizon, ms);
  const double d = static_cast<double>(cells.size());
  for (auto& v : out) v /= d;
  return out;
}

}  // namespace serial

}  // namespace salem::kernels
