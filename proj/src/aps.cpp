#include "salem/aps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace salem {

namespace {

void require_length(std::size_t n) {
  if (n < 3) throw std::invalid_argument("AP length must be >= 3");
}

// Scans all differences for one start. Returns false to stop early (first mode).
bool scan_start(const MembershipIndex& index, std::int64_t horizon, std::int64_t s, std::size_t n,
                APSearch mode, std::vector<IntegerAP>& out) {
  const auto span = static_cast<std::int64_t>(n - 1);
  const std::int64_t max_diff = (horizon - 1 - s) / span;
  for (std::int64_t d = 1; d <= max_diff; ++d) {
    bool ok = true;
    for (std::int64_t t = 1; t <= span && ok; ++t) ok = index.contains(s + t * d);
    if (!ok) continue;
    if (mode == APSearch::maximal) {
      if (index.contains(s - d)) continue;
      std::size_t len = n;
      while (index.contains(s + static_cast<std::int64_t>(len) * d)) ++len;
      out.push_back({s, d, len});
    } else {
      out.push_back({s, d, n});
      if (mode == APSearch::first) return false;
    }
  }
  return true;
}

bool witness_less(const IntegerAP& a, const IntegerAP& b) {
  return a.start != b.start ? a.start < b.start : a.difference < b.difference;
}

std::vector<IntegerAP> serial_scan(const IntegerSet& set, std::size_t n, APSearch mode) {
  require_length(n);
  const MembershipIndex index(set);
  std::vector<IntegerAP> out;
  for (auto s : set.elements()) {
    if (!scan_start(index, set.horizon(), s, n, mode, out)) break;
  }
  return out;
}

}  // namespace

std::vector<IntegerAP> find_ap_integers(const IntegerSet& set, std::size_t n, APSearch mode) {
  if (mode == APSearch::first) return serial_scan(set, n, mode);
  require_length(n);
  const MembershipIndex index(set);
  const auto elems = set.elements();
  const auto count = static_cast<std::int64_t>(elems.size());
  std::vector<IntegerAP> out;
#pragma omp parallel
  {
    std::vector<IntegerAP> local;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 0; i < count; ++i) scan_start(index, set.horizon(), elems[i], n, mode, local);
#pragma omp critical
    out.insert(out.end(), local.begin(), local.end());
  }
  std::sort(out.begin(), out.end(), witness_less);
  return out;
}

namespace serial {
std::vector<IntegerAP> find_ap_integers(const IntegerSet& set, std::size_t n, APSearch mode) {
  return serial_scan(set, n, mode);
}
}  // namespace serial

std::vector<RationalAP> find_ap_points(std::span<const Rational> points, std::size_t n, APSearch mode) {
  require_length(n);
  std::vector<Rational> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("find_ap_points: duplicate points");
  }
  const auto has = [&](const Rational& x) { return std::binary_search(sorted.begin(), sorted.end(), x); };
  const auto count = static_cast<std::int64_t>(sorted.size());

  const auto scan = [&](std::int64_t i, std::vector<RationalAP>& out) {
    for (std::int64_t j = i + 1; j < count; ++j) {
      const Rational d = sorted[j] - sorted[i];
      bool ok = true;
      Rational next = sorted[j];
      for (std::size_t t = 2; t < n && ok; ++t) {
        next += d;
        ok = has(next);
      }
      if (!ok) continue;
      if (mode == APSearch::maximal) {
        if (has(sorted[i] - d)) continue;
        std::size_t len = n;
        for (next += d; has(next); next += d) ++len;
        out.push_back({sorted[i], d, len});
      } else {
        out.push_back({sorted[i], d, n});
        if (mode == APSearch::first) return false;
      }
    }
    return true;
  };

  std::vector<RationalAP> out;
  if (mode == APSearch::first) {
    for (std::int64_t i = 0; i < count; ++i) {
      if (!scan(i, out)) break;
    }
    return out;
  }
#pragma omp parallel
  {
    std::vector<RationalAP> local;
#pragma omp for schedule(dynamic, 4) nowait
    for (std::int64_t i = 0; i < count; ++i) scan(i, local);
#pragma omp critical
    out.insert(out.end(), local.begin(), local.end());
  }
  std::sort(out.begin(), out.end(), [](const RationalAP& a, const RationalAP& b) {
    return a.start != b.start ? a.start < b.start : a.difference < b.difference;
  });
  return out;
}

Rational dyadic_slope(std::span<const std::int64_t> exponents, std::size_t depth) {
  if (depth < 1 || depth > exponents.size()) throw std::invalid_argument("dyadic_slope: bad depth");
  Rational slope = 0;
  for (std::size_t k = 0; k < depth; ++k) {
    if (exponents[k] < 0) throw std::invalid_argument("dyadic_slope: negative exponent");
    if (k > 0 && exponents[k] <= exponents[k - 1]) {
      throw std::invalid_argument("dyadic_slope: exponents must be strictly increasing");
    }
    BigInt pow = 1;
    pow <<= static_cast<unsigned>(exponents[k]);
    slope += Rational(BigInt(1), pow);
  }
  return slope;
}

std::vector<Rational> dyadic_embed(const IntegerSet& set, std::span<const std::int64_t> exponents,
                                   std::size_t depth) {
  const Rational slope = dyadic_slope(exponents, depth);
  if (!set.empty()) {
    BigInt first = 1;
    first <<= static_cast<unsigned>(exponents[0]);
    if (BigInt(set.elements().back()) >= first) {
      throw std::invalid_argument("dyadic_embed: 2^{N_1} must exceed max(A)");
    }
  }
  std::vector<Rational> out;
  out.reserve(set.size());
  for (auto a : set.elements()) out.push_back(slope * a);
  if (!out.empty() && out.back() >= 1) throw std::invalid_argument("dyadic_embed: image leaves [0, 1)");
  return out;
}

std::string to_string(DescentStatus s) {
  switch (s) {
    case DescentStatus::found:
      return "found";
    case DescentStatus::no_ap:
      return "no_ap";
    case DescentStatus::never_separated:
      return "never_separated";
  }
  return "no_ap";
}

namespace {

// First (smallest start, then difference) n-term AP among sorted distinct values.
std::optional<std::vector<std::int64_t>> first_integer_ap(const std::vector<std::int64_t>& values,
                                                          std::size_t n) {
  const auto has = [&](std::int64_t v) { return std::binary_search(values.begin(), values.end(), v); };
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const auto d = values[j] - values[i];
      std::vector<std::int64_t> terms = {values[i], values[j]};
      while (terms.size() < n && has(terms.back() + d)) terms.push_back(terms.back() + d);
      if (terms.size() == n) return terms;
    }
  }
  return std::nullopt;
}

}  // namespace

DescentResult grid_ap_descent(std::span<const Rational> points, std::size_t n, std::size_t k_max, int base) {
  require_length(n);
  if (base < 2) throw std::invalid_argument("grid_ap_descent: base must be >= 2");
  std::vector<Rational> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("grid_ap_descent: duplicate points");
  }
  for (const auto& x : points) {
    if (x < 0) throw std::invalid_argument("grid_ap_descent: negative point");
  }

  DescentResult result;
  for (std::size_t k = k_max + 1; k-- > 0;) {
    BigInt scale = 1;
    for (std::size_t i = 0; i < k; ++i) scale *= base;
    std::vector<std::int64_t> index(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const BigInt j = floor_of(points[i] * Rational(scale));
      if (j > BigInt(std::numeric_limits<std::int64_t>::max())) {
        throw std::invalid_argument("grid_ap_descent: grid index exceeds 64 bits; lower k_max");
      }
      index[i] = j.convert_to<std::int64_t>();
    }
    std::vector<std::int64_t> values = index;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() < n) {
      result.status = (k == k_max) ? DescentStatus::never_separated : DescentStatus::no_ap;
      return result;
    }
    result.coarsest_stage_checked = k;
    if (auto terms = first_integer_ap(values, n)) {
      GridAP ap;
      ap.stage = k;
      ap.base = base;
      ap.indices = *terms;
      for (auto v : ap.indices) {
        const auto it = std::find(index.begin(), index.end(), v);
        ap.point_ids.push_back(static_cast<std::size_t>(it - index.begin()));
      }
      result.status = DescentStatus::found;
      result.ap = std::move(ap);
      return result;
    }
  }
  result.status = DescentStatus::no_ap;
  return result;
}

HypothesisReport check_thm32_hypotheses(const IntegerSet& set, double beta, double constant) {
  if (!(beta > 2.0 / 3.0 && beta <= 1.0)) throw std::invalid_argument("thm32: beta must lie in (2/3, 1]");
  if (!(constant > 0.0)) throw std::invalid_argument("thm32: C must be positive");
  const auto n = set.horizon();
  if (n < 3) throw std::invalid_argument("thm32: horizon must be >= 3");

  HypothesisReport r;
  r.beta = beta;
  r.constant = constant;
  const auto checkpoints = dyadic_checkpoints(n, 2);
  r.density = fractional_density(set, checkpoints);
  r.alpha_hat = r.density.exponent;
  r.density_ok = !r.density.empty_set && r.alpha_hat > 0.5;
  r.beta_relation_ok = beta > 2.0 - 2.0 * r.alpha_hat;

  const auto ks = geometric_integer_grid(1, n / 2, 16);
  const auto spectrum = dft_char(set, ks);
  for (const auto& s : spectrum) {
    const double mag = std::abs(s.value);
    if (mag < kMagnitudeFloor) continue;
    const double bound = constant * std::pow(s.frequency * static_cast<double>(n), -beta / 2.0);
    if (mag > bound) r.bound_violations.push_back(static_cast<std::int64_t>(s.frequency));
  }
  r.fourier_ok = r.bound_violations.empty();

  if (!r.density_ok) r.failed.emplace_back("condition (i): upper fractional density > 1/2");
  if (!r.beta_relation_ok) r.failed.emplace_back("condition (ii): beta > 2 - 2 alpha");
  if (!r.fourier_ok) r.failed.emplace_back("condition (ii): Fourier coefficient bound");
  r.hypotheses_hold = r.failed.empty();
  r.ap_found = !find_ap_integers(set, 3, APSearch::first).empty();
  return r;
}

}  // namespace salem
