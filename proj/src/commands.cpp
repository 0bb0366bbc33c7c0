#include "bandit/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "bandit/config.hpp"
#include "bandit/policy.hpp"
#include "bandit/report.hpp"
#include "bandit/simulator.hpp"

namespace bandit {
namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
}

int config_exit(const ConfigError& e) {
  return e.kind() == ConfigError::Kind::kParse ? kExitParse : kExitValidation;
}

void warn_regime(std::size_t k, std::int64_t horizon, std::ostream& log) {
  if (!in_theorem_regime(k, horizon))
    log << "warning: T=" << horizon << " < K^2.4 for K=" << k
        << "; the EUCBV guarantees assume T >= K^2.4\n";
}

}  // namespace

int cmd_run(const RunRequest& req, std::ostream& log) {
  if (req.config.has_value() == req.preset.has_value()) {
    log << "error: exactly one of --config or --preset is required\n";
    return kExitUsage;
  }
  ExperimentSpec spec;
  try {
    spec = req.config ? load_config(*req.config) : preset_spec(*req.preset);
    if (req.runs) spec.runs = *req.runs;
    if (req.horizon) spec.horizon = *req.horizon;
    if (req.seed) spec.master_seed = *req.seed;
    if (req.checkpoints) spec.checkpoints = *req.checkpoints;
    validate_spec(spec);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return config_exit(e);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  try {
    const Environment env = build_environment(spec);
    warn_regime(env.num_arms(), spec.horizon, log);
    const PolicyContext ctx{env.num_arms(), spec.horizon, env.optimal_index()};
    const RunOptions options{std::max<std::size_t>(1, req.threads), spec.checkpoints};

    std::vector<AggregateCurve> curves;
    for (const PolicySpec& p : spec.policies) {
      const auto start = std::chrono::steady_clock::now();
      PolicyFactory factory = [&](RngStream rng) { return make_policy(p, ctx, std::move(rng)); };
      curves.push_back(
          run_many(env, p.id, factory, spec.horizon, spec.runs, spec.master_seed, options));
      const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
      log << spec.name << ' ' << p.id << ": " << spec.runs << " runs, final regret "
          << format_number(curves.back().final_mean()) << " +- "
          << format_number(curves.back().final_stderr()) << " (" << std::fixed
          << std::setprecision(1) << took.count() << "s)\n"
          << std::defaultfloat;
    }

    ensure_dir(req.out_dir);
    std::ostringstream curves_csv, summary_csv;
    write_curves_csv(curves_csv, curves);
    write_summary_csv(summary_csv, curves);
    write_file(req.out_dir / (spec.name + "_curves.csv"), curves_csv.str());
    write_file(req.out_dir / (spec.name + "_summary.csv"), summary_csv.str());
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_bounds(const BoundsRequest& req, std::ostream& log) {
  if (req.delta.has_value() == req.preset.has_value()) {
    log << "error: exactly one of --delta or --preset is required\n";
    return kExitUsage;
  }
  BoundInputs inputs;
  try {
    if (req.preset) {
      ExperimentSpec spec = preset_spec(*req.preset);
      if (req.horizon) spec.horizon = *req.horizon;
      const Environment env = build_environment(spec);
      if (req.num_arms && *req.num_arms != env.num_arms()) {
        log << "error: --K " << *req.num_arms << " does not match preset " << *req.preset
            << " with " << env.num_arms() << " arms\n";
        return kExitValidation;
      }
      inputs = make_bound_inputs(env, spec.horizon, req.b);
    } else {
      if (!req.num_arms || !req.horizon) {
        log << "error: --K and --T are required with --delta\n";
        return kExitUsage;
      }
      if (*req.num_arms < 2) throw std::invalid_argument("K must be >= 2");
      if (*req.horizon < 1) throw std::invalid_argument("T must be >= 1");
      if (!(*req.delta > 0.0 && *req.delta <= 1.0))
        throw std::invalid_argument("delta must lie in (0, 1]");
      if (req.sigma2 < 0.0) throw std::invalid_argument("sigma2 must be >= 0");
      std::vector<double> gaps(*req.num_arms, *req.delta);
      gaps.back() = 0.0;
      const std::vector<double> variances(*req.num_arms, req.sigma2);
      inputs = make_bound_inputs(*req.horizon, gaps, variances, req.b);
    }
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    warn_regime(inputs.num_arms, inputs.horizon, log);
    const auto rows = comparison_table(inputs);

    double dominant = 0.0;
    for (std::size_t i = 0; i < inputs.num_arms; ++i)
      dominant = std::max(dominant, eucbv_dominant_term(inputs.horizon, inputs.num_arms,
                                                        inputs.gaps[i], inputs.variances[i]));
    std::ostringstream theorem;
    theorem << "quantity,value\n"
            << "K," << inputs.num_arms << '\n'
            << "T," << inputs.horizon << '\n'
            << "b," << format_number(inputs.b) << '\n'
            << "sigma_max_sq," << format_number(inputs.sigma_max_sq) << '\n'
            << "H1," << format_number(inputs.h1) << '\n'
            << "eucbv_dominant_term_max_per_arm," << format_number(dominant) << '\n'
            << "eucbv_gap_dependent_bound," 
            << format_number(eucbv_gap_dependent_bound(inputs, req.c0, req.c2)) << '\n'
            << "gap_independent_bound,"
            << format_number(gap_independent_bound(inputs.num_arms, inputs.horizon, req.c3))
            << '\n';

    const auto grid = lemma_grid(GridSize::kSmall);
    const auto gaps = lemma2_gap_grid(GridSize::kSmall);
    const auto l6_cases = lemma6_default_cases();
    std::ostringstream lemmas;
    write_lemma_report(lemmas, verify_lemma1(grid), verify_lemma2(grid, gaps),
                       verify_lemma6(l6_cases));

    std::ostringstream table;
    write_bounds_csv(table, rows);
    ensure_dir(req.out_dir);
    write_file(req.out_dir / "bounds.csv", table.str());
    write_file(req.out_dir / "theorem.csv", theorem.str());
    write_file(req.out_dir / "lemmas.txt", lemmas.str());
    log << "values hold up to unspecified constants (all set to 1 unless given)\n"
        << table.str() << theorem.str();
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_verify_lemmas(const LemmaRequest& req, std::ostream& log) {
  try {
    const auto grid = lemma_grid(req.grid);
    const auto gaps = lemma2_gap_grid(req.grid);
    const auto l6_cases = lemma6_default_cases();
    const Lemma1Report l1 = verify_lemma1(grid);
    const Lemma2Report l2 = verify_lemma2(grid, gaps, 1.0);
    const Lemma6Report l6 = verify_lemma6(l6_cases);
    std::ostringstream text;
    write_lemma_report(text, l1, l2, l6);
    log << text.str();
    if (req.out_dir) {
      ensure_dir(*req.out_dir);
      write_file(*req.out_dir / "lemmas.txt", text.str());
    }
    return l1.violations == 0 && l2.violations == 0 ? kExitOk : kExitRuntime;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace bandit
