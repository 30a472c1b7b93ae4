#include "cli.hpp"

#include "salem/aps.hpp"
#include "salem/cantor.hpp"
#include "salem/core_sets.hpp"
#include "salem/equidist.hpp"
#include "salem/errors.hpp"
#include "salem/kernels.hpp"
#include "salem/measures.hpp"
#include "salem/randfrac.hpp"
#include "salem/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace salem::cli {

namespace {

using report::Json;

struct DomainFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string path;
  std::string format;
  bool strict = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& o, const std::string& default_format,
                        std::vector<std::string> formats) {
  o.format = default_format;
  cmd->add_option("-o,--output", o.path, "Write the report to this file instead of stdout");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  cmd->add_flag("--strict", o.strict, "Exit with status 1 when the check fails");
}

void emit(const OutputOptions& o, const std::string& content, std::ostream& out) {
  if (o.path.empty()) {
    out << content;
  } else {
    report::atomic_write(o.path, content);
  }
}

void emit_json(const OutputOptions& o, const Json& j, std::ostream& out) {
  emit(o, report::canonical_json(j), out);
}

template <typename Fn>
std::string render(Fn fn) {
  std::ostringstream s;
  fn(s);
  return s.str();
}

void strict_check(const OutputOptions& o, bool ok, const std::string& what) {
  if (o.strict && !ok) throw DomainFailure(what);
}

std::pair<Rational, Rational> parse_bounds(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw FormatError("c bounds must be '<p/q>,<p/q>'");
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

std::vector<std::pair<double, std::complex<double>>> rows_of(const std::vector<SpectrumSample>& s) {
  std::vector<std::pair<double, std::complex<double>>> rows;
  for (const auto& x : s) rows.emplace_back(x.frequency, x.value);
  return rows;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Json config_json(const RandomFractalConfig& c) {
  return {{"beta", c.beta},
          {"level_sizes", c.level_sizes},
          {"depth", c.depth},
          {"trials", c.trials},
          {"seed", c.master_seed}};
}

struct RandomOptions {
  double beta = 0.5;
  std::vector<std::int64_t> levels;
  std::size_t depth = 0;
  std::size_t trials = 50;
  std::uint64_t seed = 0;

  RandomFractalConfig config() const {
    RandomFractalConfig c;
    c.beta = beta;
    c.level_sizes = levels;
    c.depth = depth == 0 ? levels.size() : depth;
    c.trials = trials;
    c.master_seed = seed;
    return c;
  }
};

void add_random_options(CLI::App* cmd, RandomOptions& r, bool levels_required) {
  cmd->add_option("--beta", r.beta, "Construction exponent in [0, 1)")->capture_default_str();
  auto* levels = cmd->add_option("--levels", r.levels, "Level sizes N_1,N_2,... (comma separated)")
                     ->delimiter(',');
  if (levels_required) levels->required();
  cmd->add_option("--depth", r.depth, "Number of levels to use (default: all)");
  cmd->add_option("--trials", r.trials, "Number of independent trials")->capture_default_str();
  cmd->add_option("--seed", r.seed, "Master seed (required)")->required();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Salem-set toolkit: integer sets, Cantor-type measures, equidistribution, "
               "arithmetic progressions and random fractals",
               "salem"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::function<void()> action;
  const auto on = [&](CLI::App* cmd, std::function<void()> fn) {
    cmd->callback([&action, fn = std::move(fn)] { action = fn; });
  };

  // density
  {
    auto* cmd = app.add_subcommand("density", "Fractional density exponent of an integer set (log-log fit)");
    struct Params {
      OutputOptions o;
      std::string input;
      std::vector<std::int64_t> grid;
    };
    auto p = std::make_shared<Params>();
    cmd->add_option("-i,--input", p->input, "Integer-set file")->required();
    cmd->add_option("--grid", p->grid, "Checkpoints N (default: powers of two and the horizon)")->delimiter(',');
    add_output_options(cmd, p->o, "json", {"json", "csv"});
    on(cmd, [p, &out] {
      const auto set = load_integer_set(p->input);
      const auto checkpoints = p->grid.empty() ? dyadic_checkpoints(set.horizon()) : p->grid;
      const auto d = fractional_density(set, checkpoints);
      if (p->o.format == "csv") {
        emit(p->o, render([&](std::ostream& s) {
               s << "N,count\n";
               for (const auto& [n, c] : d.samples) s << n << ',' << c << '\n';
             }),
             out);
      } else {
        emit_json(p->o, report::to_json(d), out);
      }
    });
  }

  // dft
  {
    auto* cmd = app.add_subcommand("dft", "Normalized discrete Fourier transform of an indicator (sparse sum)");
    struct Params {
      OutputOptions o;
      std::string input;
      std::vector<std::int64_t> freqs;
    };
    auto p = std::make_shared<Params>();
    cmd->add_option("-i,--input", p->input, "Integer-set file")->required();
    cmd->add_option("--freqs", p->freqs, "Frequencies k in [0, N) (default: 0..N-1 up to N = 4096, "
                                      "else a geometric grid)")
        ->delimiter(',');
    add_output_options(cmd, p->o, "json", {"json", "csv"});
    on(cmd, [p, &out] {
      const auto set = load_integer_set(p->input);
      std::vector<std::int64_t> ks = p->freqs;
      if (ks.empty()) {
        if (set.horizon() <= 4096) {
          for (std::int64_t k = 0; k < set.horizon(); ++k) ks.push_back(k);
        } else {
          ks = geometric_integer_grid(1, set.horizon() / 2, 16);
        }
      }
      const auto spectrum = dft_char(set, ks);
      if (p->o.format == "csv") {
        emit(p->o, render([&](std::ostream& s) { report::write_spectrum_csv(s, "m", rows_of(spectrum)); }), out);
      } else {
        emit_json(p->o, {{"N", set.horizon()}, {"size", set.size()}, {"spectrum", report::to_json(spectrum)}}, out);
      }
    });
  }

  // weyl
  {
    auto* cmd = app.add_subcommand("weyl", "Normalized Weyl sums of a point list or an approximation");
    struct Params {
      OutputOptions o;
      std::string points_path;
      std::string approx_path;
      std::vector<std::int64_t> ms;
      double cap = 1.0;
    };
    auto p = std::make_shared<Params>();
    auto* pts = cmd->add_option("--points", p->points_path, "Point-list file (one p/q per line)");
    auto* apx = cmd->add_option("--approx", p->approx_path, "Approximation file");
    pts->excludes(apx);
    cmd->add_option("--m", p->ms, "Frequencies m (default: the order-estimation grid)")->delimiter(',');
    cmd->add_option("--cap", p->cap, "Cap for the decay exponent")->capture_default_str();
    add_output_options(cmd, p->o, "json", {"json", "csv"});
    on(cmd, [p, &out] {
      std::vector<SpectrumSample> spectrum;
      if (!p->approx_path.empty()) {
        const auto approx = load_approximation(p->approx_path);
        const auto grid = p->ms.empty() ? weyl_frequency_grid(approx.horizon) : p->ms;
        if (approx.cells.empty()) throw std::invalid_argument("approximation has no cells");
        const auto sums = kernels::cell_weyl_sums(approx.cells, approx.horizon, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) spectrum.push_back({static_cast<double>(grid[i]), sums[i]});
      } else if (!p->points_path.empty()) {
        const auto points = load_points(p->points_path);
        std::vector<std::int64_t> grid = p->ms;
        if (grid.empty()) {
          for (std::int64_t m = 1; m <= 64; ++m) grid.push_back(m);
        }
        for (auto m : grid) spectrum.push_back({static_cast<double>(m), weyl_sum(points, m)});
      } else {
        throw CLI::RequiredError("--points or --approx");
      }
      if (p->o.format == "csv") {
        emit(p->o, render([&](std::ostream& s) { report::write_spectrum_csv(s, "m", rows_of(spectrum)); }), out);
        return;
      }
      std::vector<DecaySample> samples;
      for (const auto& s : spectrum) {
        if (s.frequency >= 2) samples.push_back({s.frequency, std::abs(s.value)});
      }
      Json j = {{"spectrum", report::to_json(spectrum)}};
      j["alpha"] = samples.size() >= 4 ? Json(decay_exponent_fit(samples, p->cap)) : Json(nullptr);
      emit_json(p->o, j, out);
    });
  }

  // plan
  {
    auto* cmd = app.add_subcommand("plan", "Build a level plan from an integer set or the middle-thirds digits");
    struct Params {
      OutputOptions o;
      std::string input;
      std::string bounds;
      std::vector<std::int64_t> levels;
      double beta = 0.5;
      bool unit_eta = false;
      std::size_t ternary = 0;
    };
    auto p = std::make_shared<Params>();
    cmd->add_option("-i,--input", p->input, "Integer-set file supplying the digits");
    cmd->add_option("--levels", p->levels, "Level horizons N_1,N_2,... (non-decreasing)")->delimiter(',');
    cmd->add_option("--beta", p->beta, "Target exponent beta")->capture_default_str();
    cmd->add_option("--c-bounds", p->bounds, "Bounds on d_k / N_k^beta as '<p/q>,<p/q>'");
    cmd->add_flag("--unit-eta", p->unit_eta, "Use eta_k = 1 at every level");
    cmd->add_option("--ternary", p->ternary, "Emit the middle-thirds plan (N = 3, digits 0,2) with this many levels");
    add_output_options(cmd, p->o, "text", {"text", "json"});
    on(cmd, [p, &out] {
      LevelPlan plan;
      if (p->ternary > 0) {
        plan = repeated_plan(3, {0, 2}, p->ternary, p->unit_eta);
      } else {
        if (p->input.empty() || p->levels.empty()) throw CLI::RequiredError("--input and --levels (or --ternary)");
        PlanOptions opts;
        opts.unit_eta = p->unit_eta;
        if (!p->bounds.empty()) std::tie(opts.c_lower, opts.c_upper) = parse_bounds(p->bounds);
        plan = make_plan(load_integer_set(p->input), p->levels, p->beta, opts);
      }
      if (p->o.format == "json") {
        emit_json(p->o, report::to_json(plan), out);
      } else {
        emit(p->o, format_plan(plan), out);
      }
    });
  }

  // construct
  {
    auto* cmd = app.add_subcommand("construct", "Exact stage-k intervals of the Cantor-type set of a plan");
    struct Params {
      OutputOptions o;
      std::string plan_path;
      std::size_t depth = 1;
    };
    auto p = std::make_shared<Params>();
    cmd->add_option("--plan,--config", p->plan_path, "Plan file")->required();
    cmd->add_option("--depth", p->depth, "Stage k")->capture_default_str();
    add_output_options(cmd, p->o, "json", {"json", "csv"});
    on(cmd, [p, &out] {
      const auto plan = load_plan(p->plan_path);
      const auto stage = build_stage(plan, p->depth);
      if (p->o.format == "csv") {
        emit(p->o, render([&](std::ostream& s) { write_stage_csv(s, stage); }), out);
        return;
      }
      Json j = report::to_json(stage);
      j["overlaps"] = count_overlaps(stage);
      if (p->depth >= 2) {
        j["box_dimension"] = box_dimension(plan, p->depth);
        j["nesting_violations"] = count_nesting_violations(build_stage(plan, p->depth - 1), stage);
      }
      emit_json(p->o, j, out);
    });
  }

  // measure-decay
  {
    auto* cmd = app.add_subcommand("measure-decay",
                                   "Fourier-Stieltjes decay of the stagewise measure via the product formula");
    struct Params {
      OutputOptions o;
      std::string plan_path;
      std::size_t depth = 0;
      double threshold = 1e-3;
      double tolerance = 0.1;
      double beta = std::nan("");
      DecayGrid grid;
    };
    auto p = std::make_shared<Params>();
    cmd->add_option("--plan,--config", p->plan_path, "Plan file")->required();
    cmd->add_option("--truncation-depth", p->depth, "Truncation depth (default: plan depth)");
    cmd->add_option("--threshold", p->threshold, "Truncation threshold (0 = exact product)")->capture_default_str();
    cmd->add_option("--u-min", p->grid.u_min, "Smallest u")->capture_default_str();
    cmd->add_option("--u-max", p->grid.u_max, "Largest u")->capture_default_str();
    cmd->add_option("--per-octave", p->grid.per_octave, "Grid points per octave (0: every integer)")->capture_default_str();
    cmd->add_option("--beta", p->beta, "Target exponent (default: the plan's beta)");
    cmd->add_option("--tolerance", p->tolerance, "Pass iff alpha_hat >= beta - tolerance")->capture_default_str();
    add_output_options(cmd, p->o, "json", {"json", "csv"});
    on(cmd, [p, &out] {
      const auto plan = load_plan(p->plan_path);
      const StagewiseMeasure measure(plan, p->depth == 0 ? plan.depth() : p->depth, p->threshold,
                                     std::max(1e12, p->grid.u_max));
      const auto r = decay_check(measure, p->grid, std::isnan(p->beta) ? plan.target_beta : p->beta, p->tolerance);
      if (p->o.format == "csv") {
        emit(p->o, render([&](std::ostream& s) { report::write_spectrum_csv(s, "u", r.spectrum); }), out);
      } else {
        emit_json(p->o, report::to_json(r), out);
      }
      strict_check(p->o, r.pass, "decay check failed");
    });
  }

  // approximate
  {
    auto* cmd = app.add_subcommand("approximate", "N-approximation (grid cells meeting the set) of a plan stage");
    struct Params {
      OutputOptions o;
      std::string plan_path;
      std::size_t depth = 1;
      std::int64_t n = 0;
    };
    auto p = std::make_shared<Params>();
    cmd->add_option("--plan,--config", p->plan_path, "Plan file")->required();
    cmd->add_option("--depth", p->depth, "Stage k")->capture_default_str();
    cmd->add_option("-N,--N", p->n, "Grid resolution N")->required();
    add_output_options(cmd, p->o, "text", {"text", "json"});
    on(cmd, [p, &out] {
      const auto approx = n_approximation(target_from_stage(build_stage(load_plan(p->plan_path), p->depth)), p->n);
      if (p->o.format == "json") {
        emit_json(p->o, report::to_json(approx), out);
      } else {
        emit(p->o, format_approximation(approx), out);
      }
    });
  }

  // characterize
  {
    auto* cmd = app.add_subcommand("characterize",
                                   "Density and equidistribution-order verdict for a sequence of approximations");
    struct Params {
      OutputOptions o;
      std::vector<std::string> paths;
      double beta = 0.5;
      CharacterizeOptions opts;
      std::string bounds;
    };
    auto p = std::make_shared<Params>();
    cmd->add_option("--approx", p->paths, "Approximation files, increasing N")->required()->delimiter(',');
    cmd->add_option("--beta", p->beta, "Density exponent beta")->capture_default_str();
    cmd->add_option("--tolerance", p->opts.tolerance, "Verdict tolerance")->capture_default_str();
    cmd->add_option("--cap", p->opts.cap, "Cap for the order estimate")->capture_default_str();
    cmd->add_option("--c-bounds", p->bounds, "Bounds on count / N^beta as '<p/q>,<p/q>'");
    add_output_options(cmd, p->o, "json", {"json"});
    on(cmd, [p, &out] {
      if (!p->bounds.empty()) {
        const auto [lo, hi] = parse_bounds(p->bounds);
        p->opts.c_lower = to_double(lo);
        p->opts.c_upper = to_double(hi);
      }
      std::vector<NApproximation> approx;
      for (const auto& p : p->paths) approx.push_back(load_approximation(p));
      const auto r = characterize_salem(approx, p->beta, p->opts);
      emit_json(p->o, report::to_json(r), out);
      strict_check(p->o, r.verdict != Verdict::neither, "verdict: neither");
    });
  }

  // extract-integers
  {
    auto* cmd = app.add_subcommand("extract-integers",
                                   "Integer set assembled from a sequence of approximations");
    struct Params {
      OutputOptions o;
      std::vector<std::string> paths;
    };
    auto p = std::make_shared<Params>();
    cmd->add_option("--approx", p->paths, "Approximation files, increasing N")->required()->delimiter(',');
    add_output_options(cmd, p->o, "text", {"text", "json"});
    on(cmd, [p, &out] {
      std::vector<NApproximation> approx;
      for (const auto& p : p->paths) approx.push_back(load_approximation(p));
      const auto set = integers_from_approximations(approx);
      if (p->o.format == "json") {
        emit_json(p->o, report::to_json(set), out);
      } else {
        emit(p->o, format_integer_set(set), out);
      }
    });
  }

  // ap-find
  {
    auto* cmd = app.add_subcommand("ap-find", "Arithmetic progressions in an integer set or a rational point list");
    struct Params {
      OutputOptions o;
      std::string input;
      std::string points_path;
      std::string mode = "maximal";
      std::size_t n = 3;
    };
    auto p = std::make_shared<Params>();
    auto* in = cmd->add_option("-i,--input", p->input, "Integer-set file");
    auto* pts = cmd->add_option("--points", p->points_path, "Point-list file");
    in->excludes(pts);
    cmd->add_option("-n,--n", p->n, "Progression length (>= 3)")->capture_default_str();
    cmd->add_option("--mode", p->mode, "maximal: maximal runs; all: every n-term witness; first: one witness")
        ->check(CLI::IsMember({"maximal", "all", "first"}))
        ->capture_default_str();
    add_output_options(cmd, p->o, "json", {"json", "csv"});
    on(cmd, [p, &out] {
      const APSearch m = p->mode == "all" ? APSearch::all : p->mode == "first" ? APSearch::first : APSearch::maximal;
      std::size_t found = 0;
      if (!p->input.empty()) {
        const auto w = find_ap_integers(load_integer_set(p->input), p->n, m);
        found = w.size();
        if (p->o.format == "csv") {
          emit(p->o, render([&](std::ostream& s) { report::write_witness_csv(s, w); }), out);
        } else {
          Json a = Json::array();
          for (const auto& x : w) a.push_back(report::to_json(x));
          emit_json(p->o, {{"n", p->n}, {"mode", p->mode}, {"count", w.size()}, {"witnesses", a}}, out);
        }
      } else if (!p->points_path.empty()) {
        const auto pts = load_points(p->points_path);
        const auto w = find_ap_points(pts, p->n, m);
        found = w.size();
        if (p->o.format == "csv") {
          emit(p->o, render([&](std::ostream& s) { report::write_witness_csv(s, w); }), out);
        } else {
          Json a = Json::array();
          for (const auto& x : w) a.push_back(report::to_json(x));
          emit_json(p->o, {{"n", p->n}, {"mode", p->mode}, {"count", w.size()}, {"witnesses", a}}, out);
        }
      } else {
        throw CLI::RequiredError("--input or --points");
      }
      strict_check(p->o, found > 0, "no progression found");
    });
  }

  // ap-embed
  {
    auto* cmd = app.add_subcommand("ap-embed", "Dyadic embedding a -> a * sum 2^{-N_k} of an integer set into [0,1)");
    struct Params {
      OutputOptions o;
      std::string input;
      std::vector<std::int64_t> exponents;
      std::size_t depth = 0;
    };
    auto p = std::make_shared<Params>();
    cmd->add_option("-i,--input", p->input, "Integer-set file")->required();
    cmd->add_option("--exponents", p->exponents, "Increasing exponents N_1,N_2,...")->required()->delimiter(',');
    cmd->add_option("--depth", p->depth, "Number of exponents used (default: all)");
    add_output_options(cmd, p->o, "text", {"text", "json"});
    on(cmd, [p, &out] {
      const auto pts = dyadic_embed(load_integer_set(p->input), p->exponents, p->depth == 0 ? p->exponents.size() : p->depth);
      if (p->o.format == "json") {
        Json a = Json::array();
        for (const auto& x : pts) a.push_back(to_pq_string(x));
        emit_json(p->o, {{"points", a}}, out);
      } else {
        emit(p->o, format_points(pts), out);
      }
    });
  }

  // ap-descent
  {
    auto* cmd = app.add_subcommand("ap-descent", "Recover a progression among grid indices floor(x * base^k)");
    struct Params {
      OutputOptions o;
      std::string points_path;
      std::size_t n = 3;
      std::size_t k_max = 0;
      int base = 2;
    };
    auto p = std::make_shared<Params>();
    cmd->add_option("--points", p->points_path, "Point-list file")->required();
    cmd->add_option("-n,--n", p->n, "Progression length (>= 3)")->capture_default_str();
    cmd->add_option("--k-max", p->k_max, "Finest stage")->required();
    cmd->add_option("--base", p->base, "Grid base")->capture_default_str();
    add_output_options(cmd, p->o, "json", {"json"});
    on(cmd, [p, &out] {
      const auto r = grid_ap_descent(load_points(p->points_path), p->n, p->k_max, p->base);
      emit_json(p->o, report::to_json(r), out);
      strict_check(p->o, r.status == DescentStatus::found, "descent status: " + to_string(r.status));
    });
  }

  // thm32-check
  {
    auto* cmd = app.add_subcommand("thm32-check",
                                   "Check the density and Fourier-decay hypotheses that force 3-term progressions");
    struct Params {
      OutputOptions o;
      std::string input;
      double beta = 0.8;
      double c = 1.0;
    };
    auto p = std::make_shared<Params>();
    cmd->add_option("-i,--input", p->input, "Integer-set file")->required();
    cmd->add_option("--beta", p->beta, "Decay exponent beta in (2/3, 1]")->capture_default_str();
    cmd->add_option("-C,--C", p->c, "Constant C in |chi_hat(k)| <= C (kN)^{-beta/2}")->capture_default_str();
    add_output_options(cmd, p->o, "json", {"json"});
    on(cmd, [p, &out] {
      const auto r = check_thm32_hypotheses(load_integer_set(p->input), p->beta, p->c);
      emit_json(p->o, report::to_json(r), out);
      strict_check(p->o, r.hypotheses_hold, "hypotheses violated");
    });
  }

  // random-salem
  {
    auto* cmd = app.add_subcommand("random-salem", "Limsup random fractal trials and dimension statistics");
    struct Params {
      OutputOptions o;
      RandomOptions r;
      bool dump = false;
    };
    auto p = std::make_shared<Params>();
    add_random_options(cmd, p->r, true);
    cmd->add_flag("--dump", p->dump, "Include every trial's stage cells");
    add_output_options(cmd, p->o, "json", {"json", "csv"});
    on(cmd, [p, &out] {
      const auto config = p->r.config();
      const auto trials = generate_trials(config);
      const double m_final = static_cast<double>(trials.front().resolution(config.depth));
      if (p->o.format == "csv") {
        emit(p->o, render([&](std::ostream& s) {
               s << "trial,seed,final_count,extinct,dim\n";
               for (const auto& t : trials) {
                 const bool alive = !t.extinct;
                 s << t.trial_index << ',' << t.seed << ',' << (alive ? t.white_counts.back() : 0) << ','
                   << (alive ? 0 : 1) << ','
                   << (alive ? report::format_real(std::log(static_cast<double>(t.white_counts.back())) /
                                                   std::log(m_final))
                             : std::string("nan"))
                   << '\n';
               }
             }),
             out);
        return;
      }
      Json j = {{"config", config_json(config)}};
      if (config.depth >= 3) {
        const auto stats = dimension_experiment(config);
        j["mean_dim"] = report::to_json(stats)["mean_dim"];
        j["std_dim"] = report::to_json(stats)["std_dim"];
        j["extinct"] = stats.extinct;
        j["extinction_rate"] = stats.extinction_rate;
        j["dims"] = stats.dims;
        j["target_dim"] = 1.0 - config.beta;
      }
      if (p->dump) {
        Json a = Json::array();
        for (const auto& t : trials) a.push_back(report::to_json(t));
        j["trials"] = a;
      }
      emit_json(p->o, j, out);
    });
  }

  // lemma63
  {
    auto* cmd = app.add_subcommand("lemma63",
                                   "First-stage measure transform against Lebesgue: |mu1_hat - mu0_hat| sweeps");
    struct Params {
      OutputOptions o;
      RandomOptions r;
      std::int64_t n1 = 0;
      std::int64_t u_max = kDefaultLemmaUMax;
      double epsilon = 1.0;
    };
    auto p = std::make_shared<Params>();
    p->r.trials = 200;
    add_random_options(cmd, p->r, false);
    cmd->add_option("--N1", p->n1, "First-level size (alternative to --levels)");
    cmd->add_option("--epsilon", p->epsilon, "epsilon_1")->capture_default_str();
    cmd->add_option("--u-max", p->u_max, "Largest integer u (<= N_1)")->capture_default_str();
    add_output_options(cmd, p->o, "json", {"json"});
    on(cmd, [p, &out] {
      if (p->r.levels.empty()) {
        if (p->n1 <= 0) throw CLI::RequiredError("--N1 or --levels");
        p->r.levels = {p->n1};
      }
      const auto config = p->r.config();
      const auto rep = lemma63_experiment(config, p->epsilon, p->u_max);
      Json j = report::to_json(rep);
      j["beta"] = config.beta;
      j["seed"] = config.master_seed;
      if (config.depth > 1) {
        Json rows = Json::array();
        for (const auto& row : lemma63_stage_sweep(config, p->u_max)) rows.push_back(report::to_json(row));
        j["stage_sweep"] = rows;
      }
      emit_json(p->o, j, out);
      strict_check(p->o, rep.satisfied_fraction >= 0.9, "satisfied fraction below 0.9");
    });
  }

  // corollary64
  {
    auto* cmd = app.add_subcommand("corollary64",
                                   "Equidistribution order of the final-stage initial points of random trials");
    struct Params {
      OutputOptions o;
      RandomOptions r;
      double cap = 1.0;
      double tolerance = 0.15;
    };
    auto p = std::make_shared<Params>();
    add_random_options(cmd, p->r, true);
    cmd->add_option("--cap", p->cap, "Cap for the order estimate")->capture_default_str();
    cmd->add_option("--tolerance", p->tolerance, "Strict mode: |median alpha - (1 - beta)| <= tolerance")
        ->capture_default_str();
    add_output_options(cmd, p->o, "json", {"json", "csv"});
    on(cmd, [p, &out] {
      const auto config = p->r.config();
      const auto trials = generate_trials(config);
      std::vector<double> alphas;
      Json rows = Json::array();
      std::size_t extinct = 0;
      std::string csv = "trial,alpha\n";
      for (const auto& t : trials) {
        if (t.extinct) {
          ++extinct;
          continue;
        }
        const auto est = corollary64_check(t, p->cap);
        alphas.push_back(est.alpha);
        rows.push_back({{"trial", t.trial_index}, {"alpha", est.alpha}, {"cells", t.white_counts.back()}});
        csv += std::to_string(t.trial_index) + "," + report::format_real(est.alpha) + "\n";
      }
      const double med = median(alphas);
      if (p->o.format == "csv") {
        emit(p->o, csv, out);
      } else {
        emit_json(p->o,
                  {{"config", config_json(config)},
                   {"target_alpha", 1.0 - config.beta},
                   {"median_alpha", std::isfinite(med) ? Json(med) : Json(nullptr)},
                   {"extinct", extinct},
                   {"per_trial", rows}},
                  out);
      }
      strict_check(p->o, std::isfinite(med) && std::abs(med - (1.0 - config.beta)) <= p->tolerance,
                   "median alpha away from 1 - beta");
    });
  }

  if (!args.empty() && !args.front().empty() && args.front().front() != '-' &&
      app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "salem: unknown subcommand '" << args.front() << "'\n" << app.help();
    return kExitUsage;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const DomainFailure& e) {
    err << "salem: " << e.what() << '\n';
    return kExitDomain;
  } catch (const IoError& e) {
    err << "salem: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const CLI::ParseError& e) {
    err << "salem: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "salem: format error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "salem: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "salem: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace salem::cli
