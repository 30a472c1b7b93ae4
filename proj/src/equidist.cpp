#include "salem/equidist.hpp"

#include "salem/errors.hpp"
#include "salem/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace salem {

void validate_approximation(const NApproximation& approx) {
  if (approx.horizon < 1) throw std::invalid_argument("approximation: N must be positive");
  for (std::size_t i = 0; i < approx.cells.size(); ++i) {
    const auto j = approx.cells[i];
    if (j < 0 || j >= approx.horizon) throw std::invalid_argument("approximation: cell outside [0, N)");
    if (i > 0 && j <= approx.cells[i - 1]) {
      throw std::invalid_argument("approximation: cells not strictly increasing");
    }
  }
}

Target target_from_stage(const CantorStage& stage) {
  Target t;
  t.intervals.reserve(stage.left_endpoints.size());
  for (const auto& x : stage.left_endpoints) t.intervals.push_back({x, x + stage.interval_length, false});
  return t;
}

namespace {

std::int64_t to_i64(const BigInt& v) { return v.convert_to<std::int64_t>(); }

}  // namespace

NApproximation n_approximation(const Target& target, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n_approximation: N must be positive");
  const Rational scale(n);
  std::vector<std::int64_t> cells;
  for (const auto& iv : target.intervals) {
    if (iv.lo < 0 || iv.hi > 1) throw std::invalid_argument("n_approximation: interval outside [0, 1]");
    if (iv.hi < iv.lo || (iv.hi == iv.lo && !iv.closed_right)) continue;
    auto first = to_i64(floor_of(iv.lo * scale));
    std::int64_t last = 0;
    if (iv.closed_right) {
      last = to_i64(floor_of(iv.hi * scale));
    } else {
      // Largest j with j/N < hi.
      const Rational top = iv.hi * scale;
      last = to_i64(floor_of(top));
      if (Rational(last) == top) --last;
    }
    first = std::max<std::int64_t>(first, 0);
    last = std::min<std::int64_t>(last, n - 1);
    for (auto j = first; j <= last; ++j) cells.push_back(j);
  }
  for (const auto& p : target.points) {
    if (p < 0 || p > 1) throw std::invalid_argument("n_approximation: point outside [0, 1]");
    const auto j = to_i64(floor_of(p * scale));
    if (j < n) cells.push_back(j);
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return {n, std::move(cells)};
}

std::vector<std::int64_t> weyl_frequency_grid(std::int64_t n) {
  const auto root = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  return geometric_integer_grid(std::max<std::int64_t>(2, root), n / 2, 4);
}

namespace {

const NApproximation& finest(std::span<const NApproximation> approximations) {
  if (approximations.empty()) throw std::invalid_argument("equidist_order: no approximations");
  const auto it = std::max_element(approximations.begin(), approximations.end(),
                                   [](const auto& a, const auto& b) { return a.horizon < b.horizon; });
  if (it->horizon < 16) throw std::invalid_argument("equidist_order: largest N must be >= 16");
  if (it->cells.empty()) throw std::invalid_argument("equidist_order: finest approximation is empty");
  return *it;
}

template <typename WeylFn>
OrderEstimate order_estimate(std::span<const NApproximation> approximations, double cap, WeylFn weyl) {
  const auto& approx = finest(approximations);
  const auto ms = weyl_frequency_grid(approx.horizon);
  if (ms.size() < 4) throw std::invalid_argument("equidist_order: fewer than 4 usable m samples");
  const auto sums = weyl(approx.cells, approx.horizon, ms);
  OrderEstimate est;
  est.cap = cap;
  est.horizon = approx.horizon;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    est.per_m_bounds.push_back({static_cast<double>(ms[i]), std::abs(sums[i])});
  }
  est.alpha = decay_exponent_fit(est.per_m_bounds, cap);
  return est;
}

}  // namespace

OrderEstimate equidist_order(std::span<const NApproximation> approximations, double cap) {
  return order_estimate(approximations, cap, [](auto cells, auto n, auto ms) {
    return kernels::cell_weyl_sums(cells, n, ms);
  });
}

namespace serial {
OrderEstimate equidist_order(std::span<const NApproximation> approximations, double cap) {
  return order_estimate(approximations, cap, [](auto cells, auto n, auto ms) {
    return kernels::serial::cell_weyl_sums(cells, n, ms);
  });
}
}  // namespace serial

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::salem:
      return "salem";
    case Verdict::salem_type:
      return "salem-type";
    case Verdict::neither:
      return "neither";
  }
  return "neither";
}

CharacterizationReport characterize_salem(std::span<const NApproximation> approximations, double beta,
                                          const CharacterizeOptions& options) {
  if (approximations.size() < 3) throw std::invalid_argument("characterize_salem: need at least 3 approximations");
  for (std::size_t i = 1; i < approximations.size(); ++i) {
    if (approximations[i].horizon <= approximations[i - 1].horizon) {
      throw std::invalid_argument("characterize_salem: N sequence must be strictly increasing");
    }
  }
  CharacterizationReport report;
  report.beta = beta;
  report.tolerance = options.tolerance;
  report.constants_bounded = true;

  std::vector<double> xs, ys;
  for (const auto& a : approximations) {
    validate_approximation(a);
    StageDensity s;
    s.horizon = a.horizon;
    s.count = static_cast<std::int64_t>(a.cells.size());
    const double logn = std::log(static_cast<double>(a.horizon));
    s.exponent = (s.count > 0 && a.horizon > 1) ? std::log(static_cast<double>(s.count)) / logn : 0.0;
    s.c = static_cast<double>(s.count) / std::pow(static_cast<double>(a.horizon), beta);
    if (s.c < options.c_lower || s.c > options.c_upper) report.constants_bounded = false;
    if (s.count > 0) {
      xs.push_back(logn);
      ys.push_back(std::log(static_cast<double>(s.count)));
    }
    report.stages.push_back(s);
  }

  if (xs.size() >= 2) {
    const auto fit = least_squares_line(xs, ys);
    report.beta_hat = std::clamp(fit.slope, 0.0, 1.0);
    report.density_residual = fit.rms_residual;
  }

  report.order = equidist_order(approximations, options.cap);
  const double alpha = report.order.alpha;
  if (report.constants_bounded && std::abs(report.beta_hat - alpha) <= options.tolerance) {
    report.verdict = Verdict::salem;
  } else if (report.constants_bounded && alpha > options.tolerance &&
             alpha < report.beta_hat - options.tolerance) {
    report.verdict = Verdict::salem_type;
  } else {
    report.verdict = Verdict::neither;
  }
  return report;
}

IntegerSet integers_from_approximations(std::span<const NApproximation> approximations) {
  std::vector<std::int64_t> out;
  std::int64_t prev_n = 0;
  std::int64_t horizon = 1;
  const NApproximation* prev = nullptr;
  for (const auto& a : approximations) {
    validate_approximation(a);
    if (a.horizon <= prev_n) throw std::invalid_argument("integers_from_approximations: N must increase");
    for (auto j : a.cells) {
      bool seen = false;
      if (prev != nullptr) {
        // j/N_i equals some k/N_{i-1} iff j·N_{i-1} is divisible by N_i.
        const auto scaled = static_cast<kernels::int128>(j) * prev_n;
        if (scaled % a.horizon == 0) {
          const auto k = static_cast<std::int64_t>(scaled / a.horizon);
          seen = std::binary_search(prev->cells.begin(), prev->cells.end(), k);
        }
      }
      if (!seen) out.push_back(prev_n + j);
    }
    horizon = std::max(horizon, prev_n + a.horizon);
    prev_n = a.horizon;
    prev = &a;
  }
  return IntegerSet::from_unsorted(std::move(out), horizon);
}

NApproximation read_approximation(std::istream& in) {
  std::string line;
  NApproximation approx;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string t = line.substr(b, e - b + 1);
    const char* first = t.data();
    if (!have_header) {
      if (t.rfind("N=", 0) != 0) throw FormatError("approximation: first line must be N=<int>");
      first += 2;
    }
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
      throw FormatError("approximation: line " + std::to_string(line_no) + ": not an integer");
    }
    if (!have_header) {
      approx.horizon = v;
      have_header = true;
    } else {
      approx.cells.push_back(v);
    }
  }
  if (!have_header) throw FormatError("approximation: missing N=<int> header");
  try {
    validate_approximation(approx);
  } catch (const std::invalid_argument& ex) {
    throw FormatError(ex.what());
  }
  return approx;
}

NApproximation load_approximation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_approximation(in);
}

void write_approximation(std::ostream& out, const NApproximation& approx) {
  out << "N=" << approx.horizon << '\n';
  for (auto j : approx.cells) out << j << '\n';
}

std::string format_approximation(const NApproximation& approx) {
  std::ostringstream os;
  write_approximation(os, approx);
  return os.str();
}

}  // namespace salem
