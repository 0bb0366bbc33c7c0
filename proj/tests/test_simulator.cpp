#include <stdexcept>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bandit/baselines.hpp"
#include "bandit/simulator.hpp"

using namespace bandit;

namespace {

class FixedArm final : public Policy {
 public:
  FixedArm(std::size_t k, std::int64_t t, std::size_t arm) : Policy(k, t), arm_(arm) {}
  std::string_view name() const override { return "fixed"; }
  std::size_t select(std::int64_t) override { return arm_; }
  void update(std::size_t, double) override {}

 private:
  std::size_t arm_;
};

Environment expt1_env() {
  std::vector<ArmModel> arms(19, ArmModel::bernoulli(0.07));
  arms.push_back(ArmModel::bernoulli(0.1));
  return Environment(std::move(arms));
}

PolicyFactory factory_for(std::string id, const Environment& env, std::int64_t horizon) {
  const PolicyContext ctx{env.num_arms(), horizon, env.optimal_index()};
  return [id, ctx](RngStream rng) { return make_policy({id, {}}, ctx, std::move(rng)); };
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("checkpoint schedule") {
  CHECK(checkpoint_times(10, 0).size() == 10);
  CHECK(checkpoint_times(10, 50).size() == 10);
  const auto c = checkpoint_times(60000, 200);
  REQUIRE(c.size() == 200);
  CHECK(c.front() == 300);
  CHECK(c.back() == 60000);
  CHECK(std::is_sorted(c.begin(), c.end()));
  const auto odd = checkpoint_times(7, 3);
  CHECK(odd == std::vector<std::int64_t>{3, 5, 7});
}

TEST_CASE("oracle policy has zero regret") {
  const Environment env = expt1_env();
  OraclePolicy p(20, 5000, env.optimal_index());
  RngStream rng(1);
  const auto trace = run_once(env, p, 5000, rng, checkpoint_times(5000, 0));
  for (double r : trace.regret) REQUIRE(r == 0.0);
}

TEST_CASE("always pulling a gap-0.03 arm is linear") {
  const Environment env({ArmModel::bernoulli(0.07), ArmModel::bernoulli(0.1)});
  FixedArm p(2, 1000, 0);
  RngStream rng(1);
  const auto trace = run_once(env, p, 1000, rng, checkpoint_times(1000, 10));
  CHECK(trace.final_regret() == doctest::Approx(30.0).epsilon(1e-12));
  CHECK(trace.regret[4] == doctest::Approx(15.0).epsilon(1e-12));
}

TEST_CASE("round robin on experiment 1") {
  const Environment env = expt1_env();
  RoundRobinPolicy p(20, 20000);
  RngStream rng(2);
  const auto trace = run_once(env, p, 20000, rng, checkpoint_times(20000, 200));
  CHECK(std::abs(trace.final_regret() - 570.0) < 1e-9);
  for (std::int64_t z : trace.pulls) CHECK(z == 1000);
}

TEST_CASE("pseudo-regret identity and conservation") {
  const Environment env = expt1_env();
  auto p = factory_for("ucb1", env, 4000)(RngStream(3));
  RngStream rng(3);
  std::vector<double> full;
  const auto trace = run_once(env, *p, 4000, rng, checkpoint_times(4000, 0),
                              [&](std::int64_t, std::size_t, double, double r) { full.push_back(r); });
  CHECK(std::accumulate(trace.pulls.begin(), trace.pulls.end(), std::int64_t{0}) == 4000);
  double from_counts = 0.0;
  for (std::size_t i = 0; i < env.num_arms(); ++i)
    from_counts += env.gap(i) * static_cast<double>(trace.pulls[i]);
  CHECK(std::abs(from_counts - trace.final_regret()) < 1e-9);
  CHECK(full == trace.regret);
  CHECK(std::is_sorted(full.begin(), full.end()));
}

TEST_CASE("mismatched policy is rejected before the loop") {
  const Environment env = expt1_env();
  RoundRobinPolicy wrong_k(3, 100);
  RoundRobinPolicy wrong_t(20, 99);
  RngStream rng(1);
  const auto c = checkpoint_times(100, 0);
  CHECK_THROWS_AS(run_once(env, wrong_k, 100, rng, c), std::invalid_argument);
  CHECK_THROWS_AS(run_once(env, wrong_t, 100, rng, c), std::invalid_argument);
  RoundRobinPolicy short_t(20, 10);
  CHECK_THROWS_AS(run_once(env, short_t, 10, rng, checkpoint_times(10, 0)), std::invalid_argument);
}

TEST_CASE("a single run aggregates to itself") {
  const Environment env = expt1_env();
  const auto factory = factory_for("moss", env, 3000);
  const auto traces = run_replications(env, factory, 3000, 1, 5, {1, 50});
  const auto curve = aggregate("moss", traces);
  CHECK(curve.runs == 1);
  CHECK(curve.mean_regret == traces[0].regret);
  for (double s : curve.stderr_regret) CHECK(s == 0.0);
}

TEST_CASE("identical runs have zero standard error") {
  const Environment env = expt1_env();
  auto trace = run_replications(env, factory_for("ucbv", env, 2000), 2000, 1, 5, {1, 20})[0];
  std::vector<RunTrace> twins = {trace, trace};
  twins[1].run_index = 1;
  const auto curve = aggregate("ucbv", twins);
  for (double s : curve.stderr_regret) CHECK(s == 0.0);
}

TEST_CASE("parallel and serial replications agree bit for bit") {
  const Environment env = expt1_env();
  for (const char* id : {"eucbv", "ts-beta", "bayes-ucb"}) {
    CAPTURE(id);
    const auto factory = factory_for(id, env, 3000);
    const auto serial = run_many(env, id, factory, 3000, 12, 99, {1, 30});
    const auto parallel = run_many(env, id, factory, 3000, 12, 99, {4, 30});
    CHECK(serial.mean_regret == parallel.mean_regret);
    CHECK(serial.stderr_regret == parallel.stderr_regret);
  }
}

TEST_CASE("run k does not depend on how many runs were requested") {
  const Environment env = expt1_env();
  const auto factory = factory_for("ts-beta", env, 2000);
  const auto few = run_replications(env, factory, 2000, 3, 11, {1, 20});
  const auto many = run_replications(env, factory, 2000, 8, 11, {2, 20});
  for (std::size_t k = 0; k < 3; ++k) CHECK(few[k].regret == many[k].regret);
}

TEST_CASE("standard error uses the sample deviation over sqrt(n)") {
  std::vector<RunTrace> traces(3);
  const double finals[] = {1.0, 2.0, 6.0};
  for (std::size_t k = 0; k < 3; ++k) {
    traces[k].run_index = k;
    traces[k].checkpoint_t = {10};
    traces[k].regret = {finals[k]};
    traces[k].pulls = {1, 2};
  }
  const auto c = aggregate("x", traces);
  CHECK(c.final_mean() == doctest::Approx(3.0));
  // sample variance 7, se = sqrt(7 / 3)
  CHECK(c.final_stderr() == doctest::Approx(std::sqrt(7.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("EUCBV beats UCB1 on experiment 1 at reduced scale") {
  const Environment env = expt1_env();
  const auto e = run_many(env, "eucbv", factory_for("eucbv", env, 60000), 60000, 10, 1, {1, 10});
  const auto u = run_many(env, "ucb1", factory_for("ucb1", env, 60000), 60000, 10, 1, {1, 10});
  CHECK(e.final_mean() < u.final_mean());
}

TEST_CASE("errors inside a replication propagate") {
  const Environment env = expt1_env();
  PolicyFactory bad = [](RngStream) -> std::unique_ptr<Policy> {
    throw std::runtime_error("boom");
  };
  CHECK_THROWS_AS(run_replications(env, bad, 100, 4, 1, {2, 10}), std::runtime_error);
}

}  // TEST_SUITE
