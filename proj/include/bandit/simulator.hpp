#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bandit/env.hpp"
#include "bandit/policy.hpp"
#include "bandit/rng.hpp"

namespace bandit {

// Cumulative pseudo-regret of one replication, sampled at checkpoints.
// regret[j] is sum_i gap_i * z_i(checkpoint_t[j]); with every timestep as a
// checkpoint this is the full curve.
struct RunTrace {
  std::uint64_t run_index = 0;
  std::vector<std::int64_t> checkpoint_t;
  std::vector<double> regret;
  std::vector<std::int64_t> pulls;
  std::optional<std::size_t> survivor;

  double final_regret() const { return regret.empty() ? 0.0 : regret.back(); }
};

struct AggregateCurve {
  std::string policy;
  std::size_t runs = 0;
  std::vector<std::int64_t> checkpoint_t;
  std::vector<double> mean_regret;
  std::vector<double> stderr_regret;
  std::vector<double> mean_pulls;

  double final_mean() const { return mean_regret.back(); }
  double final_stderr() const { return stderr_regret.back(); }
};

// `count` timesteps ceil(j T / count), j = 1..count; every timestep when
// count == 0 or count >= T. The last entry is always T.
std::vector<std::int64_t> checkpoint_times(std::int64_t horizon, std::size_t count);

// Called after every pull with (t, arm, reward, cumulative pseudo-regret).
using StepObserver = std::function<void(std::int64_t, std::size_t, double, double)>;

// Plays `policy` against `env` for exactly `horizon` pulls. Throws
// std::invalid_argument when the policy was built for another K or T.
RunTrace run_once(const Environment& env, Policy& policy, std::int64_t horizon,
                  RngStream& rng, std::span<const std::int64_t> checkpoints,
                  const StepObserver& observer = nullptr);

using PolicyFactory = std::function<std::unique_ptr<Policy>(RngStream policy_rng)>;

struct RunOptions {
  std::size_t threads = 1;
  std::size_t checkpoints = 200;
};

// Mean and standard error (sample sd / sqrt(runs)) per checkpoint, reduced
// over traces in run_index order. Standard error is 0 for a single run.
AggregateCurve aggregate(std::string policy, std::span<const RunTrace> traces);

// Replication k draws rewards from derive_run_stream(master_seed, k) and gives
// the policy derive_stream(master_seed, k, kPolicy). Output does not depend on
// the thread count.
std::vector<RunTrace> run_replications(const Environment& env, const PolicyFactory& factory,
                                       std::int64_t horizon, std::size_t runs,
                                       std::uint64_t master_seed, const RunOptions& options);

AggregateCurve run_many(const Environment& env, const std::string& policy_name,
                        const PolicyFactory& factory, std::int64_t horizon,
                        std::size_t runs, std::uint64_t master_seed,
                        const RunOptions& options = {});

}  // namespace bandit
