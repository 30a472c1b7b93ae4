#include "salem/cantor.hpp"

#include "salem/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace salem {

double LevelPlan::c_constant(std::size_t k) const {
  const auto& level = levels.at(k - 1);
  return static_cast<double>(level.digits.size()) /
         std::pow(static_cast<double>(level.horizon), target_beta);
}

Rational default_eta(std::size_t level) {
  const auto k = static_cast<long>(level);
  return Rational(k * (k + 2), (k + 1) * (k + 1));
}

void validate_plan(const LevelPlan& plan) {
  if (!(plan.target_beta > 0.0 && plan.target_beta <= 1.0)) {
    throw std::invalid_argument("plan: beta must lie in (0, 1]");
  }
  if (plan.c_lower <= 0 || plan.c_upper < plan.c_lower) {
    throw std::invalid_argument("plan: c bounds must satisfy 0 < lower <= upper");
  }
  const double lo = to_double(plan.c_lower);
  const double hi = to_double(plan.c_upper);
  for (std::size_t k = 1; k <= plan.depth(); ++k) {
    const auto& level = plan.levels[k - 1];
    const std::string where = "plan level " + std::to_string(k) + ": ";
    if (level.horizon < 1) throw std::invalid_argument(where + "horizon must be positive");
    if (level.digits.empty()) throw std::invalid_argument(where + "empty digit set");
    for (std::size_t i = 0; i < level.digits.size(); ++i) {
      if (level.digits[i] < 0 || level.digits[i] >= level.horizon) {
        throw std::invalid_argument(where + "digit " + std::to_string(level.digits[i]) +
                                    " outside [0, N)");
      }
      if (i > 0 && level.digits[i] <= level.digits[i - 1]) {
        throw std::invalid_argument(where + "digits not strictly increasing");
      }
    }
    if (level.eta <= 0 || level.eta > 1) throw std::invalid_argument(where + "eta outside (0, 1]");
    const double c = plan.c_constant(k);
    // Relative slack absorbs the rounding of N^β when c sits exactly on a bound.
    if (c < lo * (1 - 1e-12) || c > hi * (1 + 1e-12)) {
      throw std::invalid_argument(where + "c = " + std::to_string(c) + " outside [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
}

LevelPlan make_plan(const IntegerSet& set, std::span<const std::int64_t> level_horizons, double beta,
                    const PlanOptions& options) {
  if (level_horizons.empty()) throw std::invalid_argument("make_plan: no levels");
  LevelPlan plan;
  plan.target_beta = beta;
  plan.c_lower = options.c_lower;
  plan.c_upper = options.c_upper;
  for (std::size_t i = 0; i < level_horizons.size(); ++i) {
    const auto n = level_horizons[i];
    if (i > 0 && n < level_horizons[i - 1]) {
      throw std::invalid_argument("make_plan: level horizons must be non-decreasing");
    }
    if (n < 1 || n > set.horizon()) {
      throw std::invalid_argument("make_plan: level " + std::to_string(i + 1) + " horizon " +
                                  std::to_string(n) + " outside [1, set horizon]");
    }
    const auto truncated = set.truncated(n);
    const auto digits = truncated.elements();
    plan.levels.push_back({n, std::vector<std::int64_t>(digits.begin(), digits.end()),
                           options.unit_eta ? Rational(1) : default_eta(i + 1)});
  }
  validate_plan(plan);
  return plan;
}

LevelPlan repeated_plan(std::int64_t horizon, std::vector<std::int64_t> digits, std::size_t levels,
                        bool unit_eta) {
  LevelPlan plan;
  plan.target_beta = std::log(static_cast<double>(digits.size())) / std::log(static_cast<double>(horizon));
  if (digits.size() == 1) plan.target_beta = 1.0;  // degenerate; bounds still checked
  for (std::size_t k = 1; k <= levels; ++k) {
    plan.levels.push_back({horizon, digits, unit_eta ? Rational(1) : default_eta(k)});
  }
  validate_plan(plan);
  return plan;
}

BigInt level_product(const LevelPlan& plan, std::size_t k) {
  BigInt m = 1;
  for (std::size_t j = 0; j < k; ++j) m *= plan.levels.at(j).horizon;
  return m;
}

Rational eta_prefix(const LevelPlan& plan, std::size_t k) {
  Rational p = 1;
  for (std::size_t j = 0; j < k; ++j) p *= plan.levels.at(j).eta;
  return p;
}

Rational stage_interval_length(const LevelPlan& plan, std::size_t k) {
  return eta_prefix(plan, k) / Rational(level_product(plan, k));
}

CantorStage build_stage(const LevelPlan& plan, std::size_t depth, std::size_t depth_cap) {
  if (depth > plan.depth()) {
    throw std::invalid_argument("build_stage: depth " + std::to_string(depth) + " exceeds plan depth " +
                                std::to_string(plan.depth()));
  }
  if (depth > depth_cap) {
    throw std::invalid_argument("build_stage: depth " + std::to_string(depth) + " exceeds cap " +
                                std::to_string(depth_cap));
  }
  CantorStage stage;
  stage.left_endpoints = {Rational(0)};
  Rational scale = 1;  // η_1···η_{k-1}
  BigInt m = 1;
  for (std::size_t k = 1; k <= depth; ++k) {
    const auto& level = plan.levels[k - 1];
    m *= level.horizon;
    const Rational step = scale / Rational(m);
    std::vector<Rational> offsets;
    offsets.reserve(level.digits.size());
    for (auto a : level.digits) offsets.push_back(step * a);

    const auto& parents = stage.left_endpoints;
    const auto d = static_cast<std::int64_t>(offsets.size());
    const auto parent_count = static_cast<std::int64_t>(parents.size());
    std::vector<Rational> children(parents.size() * offsets.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t p = 0; p < parent_count; ++p) {
      for (std::int64_t i = 0; i < d; ++i) {
        children[static_cast<std::size_t>(p * d + i)] = parents[p] + offsets[i];
      }
    }
    stage.left_endpoints = std::move(children);
    scale *= level.eta;
  }
  std::sort(stage.left_endpoints.begin(), stage.left_endpoints.end());
  stage.depth = depth;
  stage.interval_length = scale / Rational(m);
  return stage;
}

Rational point_from_digits(const LevelPlan& plan, const DigitPoint& point) {
  if (point.digits.size() > plan.depth()) {
    throw std::invalid_argument("point_from_digits: more digits than plan levels");
  }
  Rational x = 0;
  Rational scale = 1;
  BigInt m = 1;
  for (std::size_t j = 0; j < point.digits.size(); ++j) {
    const auto& level = plan.levels[j];
    const auto a = point.digits[j];
    if (!std::binary_search(level.digits.begin(), level.digits.end(), a)) {
      throw std::invalid_argument("point_from_digits: digit " + std::to_string(a) +
                                  " is not a member of level " + std::to_string(j + 1));
    }
    m *= level.horizon;
    x += scale * Rational(a) / Rational(m);
    scale *= level.eta;
  }
  return x;
}

double box_dimension(const LevelPlan& plan, std::size_t max_depth) {
  if (max_depth < 2) throw std::invalid_argument("box_dimension: max_depth must be >= 2");
  if (max_depth > plan.depth()) throw std::invalid_argument("box_dimension: max_depth exceeds plan");
  double log_count = 0.0;
  double log_scale = 0.0;
  for (std::size_t j = 0; j < max_depth; ++j) {
    log_count += std::log(static_cast<double>(plan.levels[j].digits.size()));
    log_scale += std::log(static_cast<double>(plan.levels[j].horizon));
  }
  return log_count / log_scale;
}

std::size_t count_overlaps(const CantorStage& stage) {
  std::size_t bad = 0;
  const auto& xs = stage.left_endpoints;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i - 1] + stage.interval_length > xs[i]) ++bad;
  }
  return bad;
}

std::size_t count_nesting_violations(const CantorStage& parent, const CantorStage& child) {
  std::size_t bad = 0;
  const auto& ps = parent.left_endpoints;
  for (const auto& x : child.left_endpoints) {
    // Unique candidate parent: the last parent endpoint <= x.
    auto it = std::upper_bound(ps.begin(), ps.end(), x);
    if (it == ps.begin()) {
      ++bad;
      continue;
    }
    const auto& p = *std::prev(it);
    if (!(p <= x && x + child.interval_length <= p + parent.interval_length)) ++bad;
  }
  return bad;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::int64_t parse_i64(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw FormatError("plan: bad " + what + " '" + s + "'");
  return v;
}

double parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw FormatError("plan: bad " + what + " '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw FormatError("plan: bad " + what + " '" + s + "'");
  }
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

LevelPlan read_plan(std::istream& in) {
  LevelPlan plan;
  bool have_beta = false;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    bool level_line = false;
    PlanLevel level;
    bool have_digits = false, have_eta = false;
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw FormatError("plan: expected key=value, got '" + tok + "'");
      const std::string key = tok.substr(0, eq);
      const std::string value = tok.substr(eq + 1);
      if (key == "beta") {
        plan.target_beta = parse_real(value, "beta");
        have_beta = true;
      } else if (key == "c_bounds") {
        const auto parts = split(value, ',');
        if (parts.size() != 2) throw FormatError("plan: c_bounds needs two values");
        plan.c_lower = parse_rational(parts[0]);
        plan.c_upper = parse_rational(parts[1]);
      } else if (key == "N") {
        level_line = true;
        level.horizon = parse_i64(value, "N");
      } else if (key == "digits") {
        have_digits = true;
        for (const auto& d : split(value, ',')) {
          if (!d.empty()) level.digits.push_back(parse_i64(d, "digit"));
        }
      } else if (key == "eta") {
        have_eta = true;
        level.eta = parse_rational(value);
      } else {
        throw FormatError("plan: unknown key '" + key + "'");
      }
    }
    if (level_line) {
      if (!have_digits) throw FormatError("plan: level without digits");
      if (!have_eta) level.eta = default_eta(plan.levels.size() + 1);
      plan.levels.push_back(std::move(level));
    } else if (have_digits || have_eta) {
      throw FormatError("plan: digits/eta given without N");
    }
  }
  if (!have_beta) throw FormatError("plan: missing beta=<real> header");
  if (plan.levels.empty()) throw FormatError("plan: no levels");
  validate_plan(plan);
  return plan;
}

LevelPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_plan(in);
}

void write_plan(std::ostream& out, const LevelPlan& plan) {
  out << "beta=" << format_real(plan.target_beta) << '\n';
  out << "c_bounds=" << to_pq_string(plan.c_lower) << ',' << to_pq_string(plan.c_upper) << '\n';
  for (const auto& level : plan.levels) {
    out << "N=" << level.horizon << " digits=";
    for (std::size_t i = 0; i < level.digits.size(); ++i) out << (i ? "," : "") << level.digits[i];
    out << " eta=" << to_pq_string(level.eta) << '\n';
  }
}

std::string format_plan(const LevelPlan& plan) {
  std::ostringstream os;
  write_plan(os, plan);
  return os.str();
}

void write_stage_csv(std::ostream& out, const CantorStage& stage) {
  out << "numerator,denominator,float\n";
  char buf[64];
  for (const auto& x : stage.left_endpoints) {
    std::snprintf(buf, sizeof buf, "%.12g", to_double(x));
    out << boost::multiprecision::numerator(x).str() << ',' << boost::multiprecision::denominator(x).str()
        << ',' << buf << '\n';
  }
}

}  // namespace salem
