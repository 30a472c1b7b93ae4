#include "salem/report.hpp"

#include "salem/errors.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unistd.h>

namespace salem::report {

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

void dump(const Json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        dump(item, out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      const bool scalars = std::none_of(v.begin(), v.end(), [](const Json& x) { return x.is_structured(); });
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          dump(v[i], out, indent + 2);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump(v[i], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      out += std::isfinite(x) ? format_real(x) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

Json real(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json decay_samples(const std::vector<DecaySample>& samples, const char* key) {
  Json a = Json::array();
  for (const auto& s : samples) a.push_back({{key, s.m}, {"abs", s.magnitude}});
  return a;
}

}  // namespace

std::string canonical_json(const Json& value) {
  std::string out;
  dump(value, out, 0);
  out += "\n";
  return out;
}

Json complex_json(std::complex<double> z) {
  return {{"re", real(z.real())}, {"im", real(z.imag())}, {"abs", real(std::abs(z))}};
}

Json to_json(const IntegerSet& set) {
  return {{"horizon", set.horizon()},
          {"elements", std::vector<std::int64_t>(set.elements().begin(), set.elements().end())}};
}

Json to_json(const DensityEstimate& d) {
  Json samples = Json::array();
  for (const auto& [n, c] : d.samples) samples.push_back({{"N", n}, {"count", c}});
  return {{"exponent", d.exponent}, {"residual", d.residual}, {"empty_set", d.empty_set}, {"samples", samples}};
}

Json to_json(const std::vector<SpectrumSample>& spectrum) {
  Json a = Json::array();
  for (const auto& s : spectrum) {
    Json row = complex_json(s.value);
    row["k"] = s.frequency;
    a.push_back(row);
  }
  return a;
}

Json to_json(const LevelPlan& plan) {
  Json levels = Json::array();
  for (std::size_t k = 1; k <= plan.depth(); ++k) {
    const auto& l = plan.levels[k - 1];
    levels.push_back({{"N", l.horizon},
                      {"digits", l.digits},
                      {"eta", to_pq_string(l.eta)},
                      {"c", plan.c_constant(k)}});
  }
  return {{"beta", plan.target_beta},
          {"c_bounds", {to_pq_string(plan.c_lower), to_pq_string(plan.c_upper)}},
          {"levels", levels}};
}

Json to_json(const CantorStage& stage) {
  Json ends = Json::array();
  for (const auto& x : stage.left_endpoints) ends.push_back(to_pq_string(x));
  return {{"depth", stage.depth},
          {"interval_length", to_pq_string(stage.interval_length)},
          {"count", stage.left_endpoints.size()},
          {"left_endpoints", ends}};
}

Json to_json(const DecayReport& r) {
  Json spectrum = Json::array();
  for (const auto& [u, z] : r.spectrum) {
    Json row = complex_json(z);
    row["u"] = u;
    spectrum.push_back(row);
  }
  return {{"alpha_hat", real(r.alpha_hat)},
          {"beta_target", r.beta_target},
          {"tolerance", r.tolerance},
          {"pass", r.pass},
          {"truncation_depth_used", r.truncation_depth_used},
          {"shallow", r.shallow},
          {"envelope", decay_samples(r.envelope, "u")},
          {"spectrum", spectrum}};
}

Json to_json(const NApproximation& a) { return {{"N", a.horizon}, {"cells", a.cells}}; }

Json to_json(const OrderEstimate& e) {
  return {{"alpha", real(e.alpha)},
          {"cap", e.cap},
          {"N", e.horizon},
          {"per_m_bounds", decay_samples(e.per_m_bounds, "m")}};
}

Json to_json(const CharacterizationReport& r) {
  Json stages = Json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"N", s.horizon}, {"count", s.count}, {"exponent", real(s.exponent)}, {"c", real(s.c)}});
  }
  return {{"stages", stages},
          {"beta", r.beta},
          {"beta_hat", real(r.beta_hat)},
          {"density_residual", real(r.density_residual)},
          {"constants_bounded", r.constants_bounded},
          {"order", to_json(r.order)},
          {"tolerance", r.tolerance},
          {"verdict", std::string(to_string(r.verdict))}};
}

Json to_json(const IntegerAP& w) {
  return {{"start", w.start}, {"difference", w.difference}, {"length", w.length}};
}

Json to_json(const RationalAP& w) {
  return {{"start", to_pq_string(w.start)}, {"difference", to_pq_string(w.difference)}, {"length", w.length}};
}

Json to_json(const DescentResult& r) {
  Json j = {{"status", to_string(r.status)}, {"coarsest_stage_checked", r.coarsest_stage_checked}};
  if (r.ap) {
    j["ap"] = {{"stage", r.ap->stage},
               {"base", r.ap->base},
               {"indices", r.ap->indices},
               {"point_ids", r.ap->point_ids}};
  } else {
    j["ap"] = nullptr;
  }
  return j;
}

Json to_json(const HypothesisReport& r) {
  return {{"alpha_hat", real(r.alpha_hat)},
          {"beta", r.beta},
          {"C", r.constant},
          {"density_ok", r.density_ok},
          {"beta_relation_ok", r.beta_relation_ok},
          {"fourier_ok", r.fourier_ok},
          {"bound_violations", r.bound_violations},
          {"failed", r.failed},
          {"hypotheses_hold", r.hypotheses_hold},
          {"ap_found", r.ap_found},
          {"density", to_json(r.density)}};
}

Json to_json(const TrialResult& t) {
  Json probs = Json::array();
  for (double p : t.probabilities) probs.push_back(real(p));
  return {{"trial_index", t.trial_index},
          {"seed", t.seed},
          {"beta", t.beta},
          {"level_sizes", t.level_sizes},
          {"probabilities", probs},
          {"white_counts", t.white_counts},
          {"extinct", t.extinct},
          {"stages", t.stages}};
}

Json to_json(const DimensionStats& s) {
  return {{"trials", s.trials},
          {"extinct", s.extinct},
          {"extinction_rate", s.extinction_rate},
          {"mean_dim", real(s.mean_dim)},
          {"std_dim", real(s.std_dim)},
          {"dims", s.dims}};
}

Json to_json(const LemmaCheckReport& r) {
  return {{"N1", r.n1},
          {"epsilon1", r.epsilon1},
          {"u_grid", {{"min", r.u_min}, {"max", r.u_max}, {"step", 1}}},
          {"trials", r.trials},
          {"satisfied", r.satisfied},
          {"satisfied_fraction", r.satisfied_fraction},
          {"worst_ratio", real(r.worst_ratio)}};
}

Json to_json(const StageSweepRow& row) {
  return {{"stage", row.stage},
          {"epsilon", row.epsilon},
          {"satisfied", row.satisfied},
          {"evaluated", row.evaluated},
          {"satisfied_fraction", row.satisfied_fraction}};
}

void write_spectrum_csv(std::ostream& out, const std::string& first_column,
                        const std::vector<std::pair<double, std::complex<double>>>& rows) {
  out << first_column << ",re,im,abs\n";
  for (const auto& [x, z] : rows) {
    out << format_real(x) << ',' << format_real(z.real()) << ',' << format_real(z.imag()) << ','
        << format_real(std::abs(z)) << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumSample>& spectrum,
                        const std::string& first_column) {
  std::vector<std::pair<double, std::complex<double>>> rows;
  for (const auto& s : spectrum) rows.emplace_back(s.frequency, s.value);
  write_spectrum_csv(out, first_column, rows);
}

void write_witness_csv(std::ostream& out, const std::vector<IntegerAP>& witnesses) {
  out << "start,difference,length\n";
  for (const auto& w : witnesses) out << w.start << ',' << w.difference << ',' << w.length << '\n';
}

void write_witness_csv(std::ostream& out, const std::vector<RationalAP>& witnesses) {
  out << "start,difference,length\n";
  for (const auto& w : witnesses) {
    out << to_pq_string(w.start) << ',' << to_pq_string(w.difference) << ',' << w.length << '\n';
  }
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename onto " + path);
  }
}

}  // namespace salem::report
