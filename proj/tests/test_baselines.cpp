#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bandit/baselines.hpp"

using namespace bandit;

namespace {

ArmStats raw(std::int64_t pulls, long double sum, long double sq) {
  ArmStats s;
  s.pulls = pulls;
  s.reward_sum = sum;
  s.reward_sq_sum = sq;
  return s;
}

// Plays `policy` on fixed Bernoulli means with one stream; returns pulls.
std::vector<std::int64_t> play(Policy& policy, const std::vector<double>& means,
                               std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<std::int64_t> pulls(means.size(), 0);
  for (std::int64_t t = 1; t <= policy.horizon(); ++t) {
    const std::size_t arm = policy.select(t);
    REQUIRE(arm < means.size());
    ++pulls[arm];
    policy.update(arm, rng.uniform() < means[arm] ? 1.0 : 0.0);
  }
  return pulls;
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("closed-form indices") {
  CHECK(baseline_index(IndexKind::kUcb1, raw(4, 2.0L, 2.0L), 1, 10, 2) == 0.5);
  CHECK(baseline_index(IndexKind::kUcbv, raw(10, 5.0L, 5.0L), 1000, 1000, 2) ==
        doctest::Approx(2.12386029196652).epsilon(1e-12));
  CHECK(baseline_index(IndexKind::kMoss, raw(5, 2.0L, 2.0L), 7, 1000, 10) ==
        doctest::Approx(1.17404551204099).epsilon(1e-12));
  CHECK(baseline_index(IndexKind::kOcucb, raw(5, 2.0L, 2.0L), 7, 1000, 10) ==
        doctest::Approx(2.29601654219176).epsilon(1e-12));
  CHECK(baseline_index(IndexKind::kKlucbPlusGauss, raw(5, 2.0L, 2.0L), 100, 1000, 10) ==
        doctest::Approx(0.947332830511197).epsilon(1e-12));
  CHECK(baseline_index(IndexKind::kBayesUcbGauss, raw(4, 2.0L, 2.0L), 100, 1000, 10) ==
        doctest::Approx(1.73208881232491).epsilon(1e-9));
}

TEST_CASE("UCB1 exploration term") {
  // t is an integer, so ln t = 4 is checked through the nearest t = 55.
  CHECK(0.5 + std::sqrt(2.0 * 4.0 / 4.0) == doctest::Approx(1.91421356237310).epsilon(1e-13));
  CHECK(baseline_index(IndexKind::kUcb1, raw(4, 2.0L, 2.0L), 55, 1000, 2) ==
        doctest::Approx(1.91550930502637).epsilon(1e-13));
}

TEST_CASE("MOSS exploration vanishes once z >= T/K") {
  CHECK(baseline_index(IndexKind::kMoss, raw(100, 40.0L, 40.0L), 500, 1000, 10) ==
        doctest::Approx(0.4).epsilon(1e-15));
  CHECK(baseline_index(IndexKind::kMoss, raw(200, 80.0L, 80.0L), 500, 1000, 10) ==
        doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("unpulled arm index is undefined") {
  CHECK_THROWS_AS(baseline_index(IndexKind::kUcb1, ArmStats{}, 10, 100, 2), UndefinedEstimate);
}

TEST_CASE("Bernoulli KL and its inversion") {
  CHECK(kl_bernoulli(0.3, 0.5) == doctest::Approx(0.0822828785050518).epsilon(1e-13));
  CHECK(kl_bernoulli(0.4, 0.4) == doctest::Approx(0.0));
  const double q = klucb_upper_bound(0.3, 0.5);
  CHECK(std::abs(q - 0.771382328607575) <= 1e-9);
  // kl(p, p + x) is below double resolution for x ~ 1e-9, so allow 1e-8.
  CHECK(std::abs(klucb_upper_bound(0.3, 0.0) - 0.3) <= 1e-8);
  CHECK(klucb_upper_bound(1.0, 0.2) == doctest::Approx(1.0));
  CHECK(klucb_upper_bound(0.0, 50.0) <= 1.0);
}

TEST_CASE("Bayes-UCB quantile level") {
  CHECK(bayes_ucb_level(100, 1000) == doctest::Approx(0.998552351726989).epsilon(1e-14));
  CHECK(bayes_ucb_level(1, 2) == 0.5);
}

TEST_CASE("index policies pull every arm once first") {
  for (IndexKind kind : {IndexKind::kUcb1, IndexKind::kUcbv, IndexKind::kMoss, IndexKind::kOcucb,
                         IndexKind::kKlucbPlusGauss, IndexKind::kBayesUcbGauss}) {
    IndexPolicy p(kind, 5, 100);
    for (std::int64_t t = 1; t <= 5; ++t) {
      const std::size_t arm = p.select(t);
      CHECK(arm == static_cast<std::size_t>(t - 1));
      p.update(arm, 0.5);
    }
  }
}

TEST_CASE("every baseline concentrates on a clearly better arm") {
  const std::vector<double> means = {0.2, 0.8, 0.3};
  constexpr std::int64_t kT = 3000;
  std::vector<std::unique_ptr<Policy>> roster;
  for (IndexKind kind : {IndexKind::kUcb1, IndexKind::kUcbv, IndexKind::kMoss, IndexKind::kOcucb,
                         IndexKind::kKlucbPlus, IndexKind::kKlucbPlusGauss,
                         IndexKind::kBayesUcbGauss})
    roster.push_back(std::make_unique<IndexPolicy>(kind, 3, kT));
  roster.push_back(std::make_unique<KlucbPlusPolicy>(3, kT));
  roster.push_back(std::make_unique<BayesUcbPolicy>(3, kT, RngStream(1)));
  roster.push_back(std::make_unique<ThompsonBetaPolicy>(3, kT, RngStream(2)));
  roster.push_back(std::make_unique<ThompsonGaussPolicy>(3, kT, RngStream(3)));
  roster.push_back(std::make_unique<UcbImprovedPolicy>(3, kT));
  roster.push_back(std::make_unique<DmedPolicy>(3, kT));
  roster.push_back(std::make_unique<MedianEliminationPolicy>(3, 200000, 0.3, 0.1));
  for (auto& p : roster) {
    CAPTURE(p->name());
    const auto pulls = play(*p, means, 7);
    CHECK(pulls[1] > p->horizon() / 2);
  }
}

TEST_CASE("TS-Beta with no data samples a flat prior") {
  // Two arms, both unobserved: the first choice is arm 1 exactly when
  // its Beta(1, 1) draw wins, i.e. about half of the time.
  int ones = 0;
  constexpr int kN = 4000;
  for (int i = 0; i < kN; ++i) {
    ThompsonBetaPolicy p(2, 10, RngStream(static_cast<std::uint64_t>(i)));
    ones += p.select(1) == 1;
  }
  CHECK(std::abs(ones / double(kN) - 0.5) < 0.04);
}

TEST_CASE("UCB-Improved eliminates in rounds and commits") {
  UcbImprovedPolicy p(3, 200000);
  const auto pulls = play(p, {0.1, 0.9, 0.1}, 3);
  REQUIRE(p.survivor().has_value());
  CHECK(*p.survivor() == 1);
  CHECK(pulls[0] < 2000);
}

TEST_CASE("Median Elimination halves the active set") {
  MedianEliminationPolicy p(5, 100000, 0.1, 0.1);
  CHECK(p.active().size() == 5);
  // e_1 = 0.025, d_1 = 0.05: ceil(4 / 0.025^2 * ln 60) = 26204
  CHECK(p.round_quota() == 26204);
  RngStream rng(1);
  std::int64_t t = 1;
  while (p.active().size() == 5) {
    const std::size_t arm = p.select(t++);
    p.update(arm, rng.uniform());
  }
  CHECK(p.active().size() == 3);
}

TEST_CASE("reference policies") {
  OraclePolicy o(4, 10, 2);
  RoundRobinPolicy r(4, 10);
  for (std::int64_t t = 1; t <= 10; ++t) {
    CHECK(o.select(t) == 2);
    CHECK(r.select(t) == static_cast<std::size_t>((t - 1) % 4));
  }
}

}  // TEST_SUITE
