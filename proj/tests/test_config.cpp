#include <doctest.h>

#include <string>

#include "bandit/config.hpp"

using namespace bandit;

namespace {

ConfigError config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError");
  return ConfigError(ConfigError::Kind::kParse, "");
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("preset expt1") {
  const ExperimentSpec s = preset_spec("expt1");
  CHECK(s.num_arms() == 20);
  CHECK(s.horizon == 60000);
  CHECK(s.runs == 100);
  const Environment env = build_environment(s);
  for (std::size_t i = 0; i < 19; ++i) CHECK(env.arm(i).mean() == 0.07);
  CHECK(env.arm(19).mean() == 0.1);
  CHECK(env.arm(0).kind() == ArmKind::kBernoulli);
  CHECK(s.policies.size() == 9);
}

TEST_CASE("preset expt2") {
  const ExperimentSpec s = preset_spec("expt2");
  CHECK(s.num_arms() == 100);
  CHECK(s.horizon == 300000);
  const Environment env = build_environment(s);
  CHECK(env.arm(0).mean() == 0.07);
  CHECK(env.arm(0).variance() == 0.01);
  CHECK(env.arm(66).mean() == 0.01);
  CHECK(env.arm(98).variance() == 0.25);
  CHECK(env.optimal_index() == 99);
}

TEST_CASE("random variances are frozen per env_seed and inside their range") {
  ExperimentSpec s = preset_spec("expt4");
  const Environment a = build_environment(s);
  const Environment b = build_environment(s);
  for (std::size_t i = 0; i < 49; ++i) {
    CHECK(a.arm(i).variance() == b.arm(i).variance());
    CHECK(a.arm(i).variance() >= 0.0);
    CHECK(a.arm(i).variance() <= 0.05);
  }
  for (std::size_t i = 49; i < 99; ++i) {
    CHECK(a.arm(i).variance() >= 0.19);
    CHECK(a.arm(i).variance() <= 0.24);
  }
  CHECK(a.arm(99).variance() == 0.25);
  s.env_seed += 1;
  CHECK(build_environment(s).arm(0).variance() != a.arm(0).variance());

  const Environment e3 = build_environment(preset_spec("expt3"));
  for (std::size_t i = 10; i < 99; ++i) {
    CHECK(e3.arm(i).variance() >= 0.2);
    CHECK(e3.arm(i).variance() <= 0.24);
  }
}

TEST_CASE("unknown preset") {
  CHECK_THROWS_AS(preset_spec("expt9"), ConfigError);
}

TEST_CASE("full config round trip") {
  const ExperimentSpec s = parse_config(R"(
# comment
[experiment]
name = small-run
horizon = 3e4     ; trailing comment
runs = 5
seed = 17
env_seed = 4
checkpoints = 50

[environment]
arm = bernoulli 0.2 x3
arm = gaussian 0.5 0.1..0.2 x2
arm = gaussian 0.6 0.25

[policy.eucbv]
rho = 0.25
[policy.ucb1]
)");
  CHECK(s.name == "small-run");
  CHECK(s.horizon == 30000);
  CHECK(s.runs == 5);
  CHECK(s.master_seed == 17);
  CHECK(s.env_seed == 4);
  CHECK(s.checkpoints == 50);
  CHECK(s.num_arms() == 6);
  REQUIRE(s.policies.size() == 2);
  CHECK(s.policies[0].id == "eucbv");
  CHECK(s.policies[0].params.at("rho") == 0.25);
  CHECK(s.policies[1].id == "ucb1");
  const Environment env = build_environment(s);
  CHECK(env.optimal_index() == 5);
  CHECK(env.arm(3).variance() >= 0.1);
  CHECK(env.arm(3).variance() <= 0.2);
}

TEST_CASE("preset with overrides") {
  const ExperimentSpec s = parse_config(
      "[experiment]\npreset = expt1\nruns = 7\n[policy.moss]\n");
  CHECK(s.name == "expt1");
  CHECK(s.num_arms() == 20);
  CHECK(s.runs == 7);
  REQUIRE(s.policies.size() == 1);
  CHECK(s.policies[0].id == "moss");
}

TEST_CASE("validation errors name the field") {
  auto e = config_error("[experiment]\npreset = expt1\nruns = 0\n");
  CHECK(e.kind() == ConfigError::Kind::kValidation);
  CHECK(e.field() == "experiment.runs");

  e = config_error("[experiment]\nhorizon = 5\n[environment]\narm = bernoulli 0.1 x10\n[policy.ucb1]\n");
  CHECK(e.field() == "experiment.horizon");

  e = config_error("[experiment]\nhorizon = 100\n[environment]\narm = bernoulli 1.5 x2\n[policy.ucb1]\n");
  CHECK(e.field() == "environment.arm");

  e = config_error("[experiment]\nhorizon = 100\n[environment]\narm = bernoulli 0.5 x2\n");
  CHECK(e.field() == "policy");
}

TEST_CASE("parse errors carry line numbers") {
  auto e = config_error("[experiment]\nhorizon = 100\nhorizn = 5\n");
  CHECK(e.kind() == ConfigError::Kind::kParse);
  CHECK(e.line() == 3);
  CHECK(e.field() == "experiment.horizn");

  e = config_error("[experiment]\nhorizon = 1e2.5\n");
  CHECK(e.line() == 2);

  e = config_error("\n\n[results]\n");
  CHECK(e.line() == 3);

  e = config_error("[experiment]\nhorizon = 100\n[policy.ucb1]\nrho = 1\n");
  CHECK(e.line() == 4);
  CHECK(e.field() == "policy.ucb1.rho");

  e = config_error("[experiment]\nhorizon = 100\n[policy.ucb9]\n");
  CHECK(e.line() == 3);

  e = config_error("horizon = 100\n");
  CHECK(e.line() == 1);

  e = config_error("[environment]\narm = poisson 0.3\n");
  CHECK(e.line() == 2);

  e = config_error("[experiment]\nruns = 2.5\n");
  CHECK(e.line() == 2);

  e = config_error("[experiment]\nruns = 2\nruns = 3\n");
  CHECK(e.line() == 3);
}

TEST_CASE("horizon is required without a preset") {
  auto e = config_error("[environment]\narm = bernoulli 0.5 x2\n[policy.ucb1]\n");
  CHECK(e.field() == "experiment.horizon");
}

}  // TEST_SUITE
