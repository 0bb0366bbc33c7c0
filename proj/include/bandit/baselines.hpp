#pragma once

// Comparison policies. Index formulas (z = pulls, t = current timestep):
//
//   ucb1        r + sqrt(2 ln t / z)
//   ucbv        r + sqrt(2 v ln t / z) + 3 ln t / (2 z)
//   moss        r + sqrt(max(ln(T / (K z)), 0) / z)
//   ocucb       r + sqrt((alpha / z) ln(psi T / z)),  alpha = 3, psi = 2
//   klucb-plus  max{ q >= r : z kl(r, q) <= ln(t / z) }, Bernoulli kl,
//               solved by bisection to 1e-9
//   klucb-plus-gauss  r + sqrt(2 sigma2 ln(t / z) / z),  sigma2 = 0.25
//   bayes-ucb   quantile 1 - 1/(t ln T) of the Beta(1 + S, 1 + F) posterior
//   bayes-ucb-gauss   same level, N(S / (z + 1), 1 / (z + 1)) posterior
//
// Every log term is clamped at zero. Index policies pull each arm once
// before using their index; ties go to the lowest arm index.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bandit/policy.hpp"
#include "bandit/stats.hpp"

namespace bandit {

enum class IndexKind {
  kUcb1,
  kUcbv,
  kMoss,
  kOcucb,
  kKlucbPlus,
  kKlucbPlusGauss,
  kBayesUcbGauss,
};

struct IndexParams {
  double ocucb_alpha = 3.0;
  double ocucb_psi = 2.0;
  double gauss_sigma2 = 0.25;
};

// Bernoulli Kullback-Leibler divergence kl(p, q); arguments clamped to
// [1e-15, 1 - 1e-15].
double kl_bernoulli(double p, double q);

// Largest q in [p, 1] with kl(p, q) <= bound, bisection until the bracket is
// at most 1e-9 wide. p is clamped to [0, 1] first.
double klucb_upper_bound(double p, double bound);

// Index of one arm for the deterministic index policies.
// Throws UndefinedEstimate when stats.pulls == 0.
double baseline_index(IndexKind kind, const ArmStats& stats, std::int64_t t,
                      std::int64_t horizon, std::size_t num_arms,
                      const IndexParams& params = {});

// Posterior quantile level 1 - 1/(t ln T) used by both Bayes-UCB variants,
// floored at 1/2.
double bayes_ucb_level(std::int64_t t, std::int64_t horizon);

// Argmax over indices that never decrease in t while an arm's statistics are
// unchanged (KL-UCB+, Bayes-UCB). Each arm keeps its index evaluated at a
// later timestep as an upper bound, so most arms are skipped without being
// re-evaluated. The chosen arm is the exact argmax, lowest index on ties.
class LazyIndexArgmax {
 public:
  explicit LazyIndexArgmax(std::size_t num_arms) : entries_(num_arms) {}

  void invalidate(std::size_t arm) { entries_[arm].valid = false; }

  template <class IndexAt>
  std::size_t argmax(std::int64_t t, IndexAt&& index_at);

  std::size_t evaluations() const { return evaluations_; }

 private:
  struct Entry {
    bool valid = false;
    std::int64_t exact_t = 0;
    double exact = 0.0;
    std::int64_t upper_until = 0;
    double upper = 0.0;
  };

  template <class IndexAt>
  void evaluate(std::size_t arm, std::int64_t t, IndexAt& index_at);

  std::vector<Entry> entries_;
  std::size_t evaluations_ = 0;
};

// Index policy over one of the closed-form indices above.
class IndexPolicy final : public Policy {
 public:
  IndexPolicy(IndexKind kind, std::size_t num_arms, std::int64_t horizon,
              IndexParams params = {});

  std::string_view name() const override;
  std::size_t select(std::int64_t t) override;
  void update(std::size_t arm, double reward) override;

  const std::vector<ArmStats>& stats() const { return stats_; }

 private:
  IndexKind kind_;
  IndexParams params_;
  std::vector<ArmStats> stats_;
  std::vector<double> mean_;
  std::vector<double> var_;
  LazyIndexArgmax argmax_;
};

class KlucbPlusPolicy final : public Policy {
 public:
  KlucbPlusPolicy(std::size_t num_arms, std::int64_t horizon);
  std::string_view name() const override { return "klucb-plus"; }
  std::size_t select(std::int64_t t) override;
  void update(std::size_t arm, double reward) override;

 private:
  std::vector<ArmStats> stats_;
  LazyIndexArgmax argmax_;
};

// Beta-posterior Bayes-UCB. Non-binary rewards are turned into a Bernoulli
// outcome with success probability clamp(reward, 0, 1) using the policy stream.
class BayesUcbPolicy final : public Policy {
 public:
  BayesUcbPolicy(std::size_t num_arms, std::int64_t horizon, RngStream rng);
  std::string_view name() const override { return "bayes-ucb"; }
  std::size_t select(std::int64_t t) override;
  void update(std::size_t arm, double reward) override;

 private:
  RngStream rng_;
  std::vector<std::int64_t> successes_;
  std::vector<std::int64_t> failures_;
  LazyIndexArgmax argmax_;
};

// Thompson sampling with Beta(1, 1) priors and the same Bernoulli rounding.
class ThompsonBetaPolicy final : public Policy {
 public:
  ThompsonBetaPolicy(std::size_t num_arms, std::int64_t horizon, RngStream rng);
  std::string_view name() const override { return "ts-beta"; }
  std::size_t select(std::int64_t t) override;
  void update(std::size_t arm, double reward) override;

 private:
  RngStream rng_;
  std::vector<std::int64_t> successes_;
  std::vector<std::int64_t> failures_;
};

// Thompson sampling with N(0, 1) priors and unit observation noise:
// posterior N(S / (z + 1), 1 / (z + 1)).
class ThompsonGaussPolicy final : public Policy {
 public:
  ThompsonGaussPolicy(std::size_t num_arms, std::int64_t horizon, RngStream rng);
  std::string_view name() const override { return "ts-gauss"; }
  std::size_t select(std::int64_t t) override;
  void update(std::size_t arm, double reward) override;

 private:
  RngStream rng_;
  std::vector<double> sums_;
  std::vector<std::int64_t> pulls_;
};

// UCB-Improved: round-based elimination. In round m every active arm is
// pulled up to n_m = ceil(2 ln(T e_m^2) / e_m^2) total pulls, then arm i is
// dropped when r_i + w < max_j r_j - w with w = sqrt(ln(T e_m^2) / (2 n_m)),
// and e_m halves. After floor(0.5 log2(T / e)) rounds, or once one arm is
// left, the policy commits to the active arm with the best mean.
class UcbImprovedPolicy final : public Policy {
 public:
  UcbImprovedPolicy(std::size_t num_arms, std::int64_t horizon);
  std::string_view name() const override { return "ucb-improved"; }
  std::size_t select(std::int64_t t) override;
  void update(std::size_t arm, double reward) override;
  std::optional<std::size_t> survivor() const override { return committed_; }

  int round() const { return round_; }
  const std::vector<std::size_t>& active() const { return active_; }

 private:
  void start_round();
  void finish_round();

  std::vector<ArmStats> stats_;
  std::vector<std::size_t> active_;
  double epsilon_ = 1.0;
  int round_ = 0;
  int max_round_ = 0;
  std::int64_t quota_ = 0;
  std::optional<std::size_t> committed_;
};

// DMED for Bernoulli rewards. Arms are pulled from a current list in index
// order; when the list runs out it is rebuilt from every arm i with
//   z_i kl(r_i, r_max) <= ln(n / z_i)
// where n is the number of pulls so far. Means are clamped to [0, 1].
class DmedPolicy final : public Policy {
 public:
  DmedPolicy(std::size_t num_arms, std::int64_t horizon);
  std::string_view name() const override { return "dmed"; }
  std::size_t select(std::int64_t t) override;
  void update(std::size_t arm, double reward) override;

 private:
  void rebuild_list();

  std::vector<ArmStats> stats_;
  std::vector<std::size_t> list_;
  std::size_t cursor_ = 0;
  std::int64_t t_ = 0;
};

// Median Elimination (epsilon, delta). Round l samples every surviving arm
// ceil(4 / e_l^2 * ln(3 / d_l)) times, keeps the better half by round-local
// mean (ceil(|S| / 2) arms, lower index on ties), then e *= 3/4 and d /= 2,
// starting from e_1 = epsilon / 4 and d_1 = delta / 2. A single survivor is
// pulled until T.
class MedianEliminationPolicy final : public Policy {
 public:
  MedianEliminationPolicy(std::size_t num_arms, std::int64_t horizon, double epsilon = 0.1,
                          double delta = 0.1);
  std::string_view name() const override { return "median-elim"; }
  std::size_t select(std::int64_t t) override;
  void update(std::size_t arm, double reward) override;
  std::optional<std::size_t> survivor() const override;

  std::int64_t round_quota() const { return quota_; }
  const std::vector<std::size_t>& active() const { return active_; }

 private:
  void start_round();
  void finish_round();

  double epsilon_;
  double delta_;
  std::vector<std::size_t> active_;
  std::vector<std::int64_t> round_pulls_;
  std::vector<double> round_sums_;
  std::int64_t quota_ = 0;
};

// Reference policies used by tests and sanity checks.
class OraclePolicy final : public Policy {
 public:
  OraclePolicy(std::size_t num_arms, std::int64_t horizon, std::size_t optimal_arm)
      : Policy(num_arms, horizon), arm_(optimal_arm) {}
  std::string_view name() const override { return "oracle"; }
  std::size_t select(std::int64_t) override { return arm_; }
  void update(std::size_t, double) override {}

 private:
  std::size_t arm_;
};

class RoundRobinPolicy final : public Policy {
 public:
  using Policy::Policy;
  std::string_view name() const override { return "round-robin"; }
  std::size_t select(std::int64_t t) override {
    return static_cast<std::size_t>((t - 1) % static_cast<std::int64_t>(num_arms()));
  }
  void update(std::size_t, double) override {}
};

template <class IndexAt>
void LazyIndexArgmax::evaluate(std::size_t arm, std::int64_t t, IndexAt& index_at) {
  Entry& e = entries_[arm];
  e.exact = index_at(arm, t);
  e.exact_t = t;
  e.upper_until = t + std::max<std::int64_t>(1, t / 64);
  e.upper = index_at(arm, e.upper_until);
  e.valid = true;
  evaluations_ += 2;
}

template <class IndexAt>
std::size_t LazyIndexArgmax::argmax(std::int64_t t, IndexAt&& index_at) {
  const std::size_t n = entries_.size();
  std::optional<std::size_t> best;
  double best_value = 0.0;
  auto offer = [&](std::size_t arm) {
    const double v = entries_[arm].exact;
    if (!best || v > best_value || (v == best_value && arm < *best)) {
      best = arm;
      best_value = v;
    }
  };
  for (std::size_t arm = 0; arm < n; ++arm) {
    Entry& e = entries_[arm];
    if (!e.valid || t > e.upper_until) evaluate(arm, t, index_at);
    if (e.exact_t == t) offer(arm);
  }
  for (;;) {
    // Unresolved arm with the largest upper bound (lowest index on ties).
    std::optional<std::size_t> next;
    for (std::size_t arm = 0; arm < n; ++arm) {
      const Entry& e = entries_[arm];
      if (e.exact_t == t) continue;
      if (!next || e.upper > entries_[*next].upper) next = arm;
    }
    if (!next) break;
    const double u = entries_[*next].upper;
    if (best && (u < best_value || (u == best_value && *next > *best))) break;
    evaluate(*next, t, index_at);
    offer(*next);
  }
  return *best;
}

}  // namespace bandit
