#include "bandit/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace bandit {

std::vector<std::int64_t> checkpoint_times(std::int64_t horizon, std::size_t count) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  std::vector<std::int64_t> out;
  const auto c = static_cast<std::int64_t>(count);
  if (count == 0 || c >= horizon) {
    out.resize(static_cast<std::size_t>(horizon));
    for (std::int64_t t = 1; t <= horizon; ++t) out[static_cast<std::size_t>(t - 1)] = t;
    return out;
  }
  out.reserve(count);
  for (std::int64_t j = 1; j <= c; ++j) out.push_back((j * horizon + c - 1) / c);
  return out;
}

RunTrace run_once(const Environment& env, Policy& policy, std::int64_t horizon,
                  RngStream& rng, std::span<const std::int64_t> checkpoints,
                  const StepObserver& observer) {
  const std::size_t k = env.num_arms();
  if (policy.num_arms() != k) {
    throw std::invalid_argument("policy built for " + std::to_string(policy.num_arms()) +
                                " arms, environment has " + std::to_string(k));
  }
  if (policy.horizon() != horizon) {
    throw std::invalid_argument("policy built for horizon " +
                                std::to_string(policy.horizon()) + ", run asks for " +
                                std::to_string(horizon));
  }
  if (horizon < static_cast<std::int64_t>(k)) {
    throw std::invalid_argument("horizon must be at least the number of arms");
  }

  RunTrace trace;
  trace.pulls.assign(k, 0);
  trace.checkpoint_t.assign(checkpoints.begin(), checkpoints.end());
  trace.regret.reserve(checkpoints.size());

  const auto gaps = env.gaps();
  double regret = 0.0;
  std::size_t next_checkpoint = 0;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const std::size_t arm = policy.select(t);
    if (arm >= k) {
      throw std::logic_error(std::string(policy.name()) + " selected arm " +
                             std::to_string(arm) + " out of range");
    }
    const double reward = env.pull(arm, rng);
    policy.update(arm, reward);
    ++trace.pulls[arm];
    regret += gaps[arm];
    if (observer) observer(t, arm, reward, regret);
    while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == t) {
      trace.regret.push_back(regret);
      ++next_checkpoint;
    }
  }
  trace.survivor = policy.survivor();
  return trace;
}

AggregateCurve aggregate(std::string policy, std::span<const RunTrace> input) {
  if (input.empty()) throw std::invalid_argument("aggregate needs at least one run");
  // Reduce in run_index order so the result does not depend on input order.
  std::vector<const RunTrace*> traces;
  traces.reserve(input.size());
  for (const RunTrace& tr : input) traces.push_back(&tr);
  std::stable_sort(traces.begin(), traces.end(), [](const RunTrace* a, const RunTrace* b) {
    return a->run_index < b->run_index;
  });

  AggregateCurve out;
  out.policy = std::move(policy);
  out.runs = traces.size();
  out.checkpoint_t = traces.front()->checkpoint_t;
  const std::size_t c = out.checkpoint_t.size();
  const double n = static_cast<double>(traces.size());
  out.mean_regret.assign(c, 0.0);
  out.stderr_regret.assign(c, 0.0);
  for (const RunTrace* tr : traces) {
    if (tr->regret.size() != c) throw std::invalid_argument("traces have different checkpoints");
    for (std::size_t j = 0; j < c; ++j) out.mean_regret[j] += tr->regret[j];
  }
  for (double& m : out.mean_regret) m /= n;
  if (traces.size() > 1) {
    for (std::size_t j = 0; j < c; ++j) {
      double ss = 0.0;
      for (const RunTrace* tr : traces) {
        const double d = tr->regret[j] - out.mean_regret[j];
        ss += d * d;
      }
      out.stderr_regret[j] = std::sqrt(ss / (n - 1.0) / n);
    }
  }
  const std::size_t k = traces.front()->pulls.size();
  out.mean_pulls.assign(k, 0.0);
  for (const RunTrace* tr : traces) {
    for (std::size_t i = 0; i < k; ++i) out.mean_pulls[i] += static_cast<double>(tr->pulls[i]);
  }
  for (double& p : out.mean_pulls) p /= n;
  return out;
}

std::vector<RunTrace> run_replications(const Environment& env, const PolicyFactory& factory,
                                       std::int64_t horizon, std::size_t runs,
                                       std::uint64_t master_seed, const RunOptions& options) {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  const auto checkpoints = checkpoint_times(horizon, options.checkpoints);
  std::vector<RunTrace> traces(runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= runs) return;
      try {
        auto policy = factory(derive_stream(master_seed, k, StreamLane::kPolicy));
        RngStream rng = derive_run_stream(master_seed, k);
        traces[k] = run_once(env, *policy, horizon, rng, checkpoints);
        traces[k].run_index = k;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(runs);
        return;
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, runs));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return traces;
}

AggregateCurve run_many(const Environment& env, const std::string& policy_name,
                        const PolicyFactory& factory, std::int64_t horizon,
                        std::size_t runs, std::uint64_t master_seed,
                        const RunOptions& options) {
  const auto traces = run_replications(env, factory, horizon, runs, master_seed, options);
  return aggregate(policy_name, traces);
}

}  // namespace bandit
