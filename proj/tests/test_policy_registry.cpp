#include <stdexcept>
#include <doctest.h>

#include <string>

#include "bandit/policy.hpp"

using namespace bandit;

TEST_SUITE("registry") {

TEST_CASE("every registered id builds a policy with that name") {
  const PolicyContext ctx{4, 1000, 2};
  for (std::string_view id : registered_policies()) {
    CAPTURE(id);
    auto p = make_policy({std::string(id), {}}, ctx, RngStream(1));
    REQUIRE(p != nullptr);
    CHECK(p->name() == id);
    CHECK(p->num_arms() == 4);
    CHECK(p->horizon() == 1000);
  }
}

TEST_CASE("the documented identifiers are all present") {
  for (std::string_view id : {"eucbv", "ucb1", "moss", "ocucb", "ucbv", "ucb-improved",
                              "ts-beta", "ts-gauss", "klucb-plus", "bayes-ucb", "dmed",
                              "median-elim"}) {
    bool found = false;
    for (std::string_view r : registered_policies()) found |= r == id;
    CHECK_MESSAGE(found, id);
  }
}

TEST_CASE("unknown ids and parameters are rejected") {
  CHECK_THROWS_AS(validate_policy_spec({"ucb2", {}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_policy_spec({"ucb1", {{"rho", 0.5}}}), std::invalid_argument);
  CHECK_NOTHROW(validate_policy_spec({"eucbv", {{"rho", 0.25}, {"psi", 3.0}}}));
  CHECK_THROWS_AS(policy_parameters("nope"), std::invalid_argument);
}

TEST_CASE("policy contract rejects degenerate problems") {
  CHECK_THROWS_AS(make_policy({"ucb1", {}}, {1, 100, 0}, RngStream(1)), std::invalid_argument);
  CHECK_THROWS_AS(make_policy({"ucb1", {}}, {3, 0, 0}, RngStream(1)), std::invalid_argument);
}

TEST_CASE("parameters reach the policy") {
  // A large rho keeps both arms alive longer than the default does.
  const PolicyContext ctx{2, 1000, 0};
  auto survivor_time = [&](double rho) {
    auto p = make_policy({"eucbv", {{"rho", rho}}}, ctx, RngStream(1));
    for (std::int64_t t = 1; t <= 1000; ++t) {
      const std::size_t arm = p->select(t);
      p->update(arm, arm == 0 ? 1.0 : 0.0);
      if (p->survivor()) return t;
    }
    return std::int64_t{1001};
  };
  CHECK(survivor_time(0.5) == 231);
  CHECK(survivor_time(0.5) < survivor_time(4.0));
}

}  // TEST_SUITE
