#include <doctest.h>

#include <vector>

#include "bandit/stats.hpp"

using namespace bandit;

namespace {

ArmStats from(std::initializer_list<double> rewards) {
  ArmStats s;
  for (double r : rewards) s.record(r);
  return s;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("record updates counts and sums") {
  const ArmStats one = record(ArmStats{}, 1.0);
  CHECK(one.pulls == 1);
  CHECK(one.reward_sum == 1.0L);
  CHECK(one.reward_sq_sum == 1.0L);
  const ArmStats three = from({0.0, 1.0, 1.0});
  CHECK(three.pulls == 3);
  CHECK(three.reward_sum == 2.0L);
  CHECK(three.reward_sq_sum == 2.0L);
}

TEST_CASE("mean estimates") {
  ArmStats s;
  s.pulls = 4;
  s.reward_sum = 1.0L;
  CHECK(mean_estimate(s) == 0.25);
  CHECK(mean_estimate(from({0.7})) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(mean_estimate(from({0.0, 1.0, 1.0})) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("variance estimates use divisor z") {
  CHECK(variance_estimate(from({0.0, 1.0})) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(variance_estimate(from({0.5, 0.5, 0.5})) == 0.0);
  CHECK(variance_estimate(from({0.0, 0.0, 1.0, 1.0, 1.0})) == doctest::Approx(0.24).epsilon(1e-14));
}

TEST_CASE("constant rewards give zero variance") {
  ArmStats s;
  for (int i = 0; i < 10000; ++i) s.record(0.5);
  CHECK(mean_estimate(s) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(variance_estimate(s) >= 0.0);
  CHECK(variance_estimate(s) < 1e-12);
}

TEST_CASE("unpulled arm has no estimate") {
  CHECK_THROWS_AS(mean_estimate(ArmStats{}), UndefinedEstimate);
  CHECK_THROWS_AS(variance_estimate(ArmStats{}), UndefinedEstimate);
}

}  // TEST_SUITE
