// banditsim: run bandit experiments, evaluate regret bounds, check lemmas.

#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "bandit/commands.hpp"
#include "bandit/config.hpp"

namespace {

bandit::GridSize parse_grid(const std::string& s) {
  return s == "full" ? bandit::GridSize::kFull : bandit::GridSize::kSmall;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic multi-armed bandit simulator"};
  app.require_subcommand(1);

  bandit::RunRequest run;
  std::string run_out = "results";
  std::string config_path;
  std::string preset;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  auto* run_cmd = app.add_subcommand("run", "Run an experiment and write regret CSVs");
  auto* config_opt = run_cmd->add_option("--config", config_path, "Experiment config file");
  auto* preset_opt = run_cmd->add_option("--preset", preset, "Built-in experiment")
                         ->check(CLI::IsMember({"expt1", "expt2", "expt3", "expt4"}));
  config_opt->excludes(preset_opt);
  run_cmd->add_option("--runs", run.runs, "Replications per policy")->check(CLI::PositiveNumber);
  run_cmd->add_option("--horizon", run.horizon, "Horizon T")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--checkpoints", run.checkpoints,
                      "Curve points per run (0 = every timestep)");
  run_cmd->add_option("--out", run_out, "Output directory")->capture_default_str();
  run_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  bandit::BoundsRequest bounds;
  std::string bounds_out = "results";
  std::string bounds_preset;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate regret bounds and the lemma checks");
  bounds_cmd->add_option("--K", bounds.num_arms, "Number of arms");
  bounds_cmd->add_option("--T", bounds.horizon, "Horizon");
  auto* delta_opt = bounds_cmd->add_option("--delta", bounds.delta, "Gap of every sub-optimal arm");
  auto* bpreset_opt = bounds_cmd->add_option("--preset", bounds_preset, "Arms from a preset")
                          ->check(CLI::IsMember({"expt1", "expt2", "expt3", "expt4"}));
  delta_opt->excludes(bpreset_opt);
  bounds_cmd->add_option("--sigma2", bounds.sigma2, "Arm variance with --delta")
      ->capture_default_str();
  bounds_cmd->add_option("--b", bounds.b, "Small-gap threshold (>= sqrt(e/T))");
  bounds_cmd->add_option("--C0", bounds.c0, "Constant C0")->capture_default_str();
  bounds_cmd->add_option("--C2", bounds.c2, "Constant C2")->capture_default_str();
  bounds_cmd->add_option("--C3", bounds.c3, "Constant C3")->capture_default_str();
  bounds_cmd->add_option("--out", bounds_out, "Output directory")->capture_default_str();

  std::string grid = "small";
  std::string lemma_out;
  auto* lemma_cmd = app.add_subcommand("verify-lemmas", "Check Lemmas 1, 2 and 6 over a grid");
  lemma_cmd->add_option("--grid", grid, "Grid density")
      ->check(CLI::IsMember({"small", "full"}))
      ->capture_default_str();
  lemma_cmd->add_option("--out", lemma_out, "Also write lemmas.txt here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bandit::kExitUsage;
  }

  if (run_cmd->parsed()) {
    if (!config_path.empty()) run.config = config_path;
    if (!preset.empty()) run.preset = preset;
    run.out_dir = run_out;
    run.threads = threads;
    return bandit::cmd_run(run, std::cerr);
  }
  if (bounds_cmd->parsed()) {
    if (!bounds_preset.empty()) bounds.preset = bounds_preset;
    bounds.out_dir = bounds_out;
    return bandit::cmd_bounds(bounds, std::cout);
  }
  bandit::LemmaRequest lemmas;
  lemmas.grid = parse_grid(grid);
  if (!lemma_out.empty()) lemmas.out_dir = lemma_out;
  return bandit::cmd_verify_lemmas(lemmas, std::cout);
}
