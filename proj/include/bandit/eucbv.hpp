#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bandit/policy.hpp"
#include "bandit/stats.hpp"

namespace bandit {

// Round state of the EUCBV arm-elimination algorithm.
//
// Round m uses epsilon = 2^-m. Each active arm is owed a quota
//   n_m = ceil( ln(psi * T * eps^2) / (2 eps) )
// of pulls, and the round ends at timestep N_m (N_0 = K n_0, later
// N_{m+1} = t + |B| n_{m+1} with t the timestep of the reset). At most
// M = floor(0.5 * log2(T / e)) resets happen. Every log is natural except the
// log2 in M, and both log terms are clamped at zero.
struct EucbvState {
  std::size_t num_arms = 0;
  std::int64_t horizon = 0;
  double rho = 0.5;
  double psi = 0.0;

  int round = 0;           // m
  double epsilon = 1.0;    // 2^-m, halved exactly
  int max_round = 0;       // M
  std::int64_t quota = 0;  // n_m
  std::int64_t deadline = 0;  // N_m

  std::vector<std::size_t> active;  // B_m, ascending arm index
  std::vector<ArmStats> stats;      // eliminated arms keep frozen stats
  std::int64_t t = 0;               // pulls completed so far

  // Timestep at which each arm was removed, 0 while active.
  std::vector<std::int64_t> eliminated_at;
  // round_started_at[m] is the timestep of the reset into round m (0 for m = 0).
  std::vector<std::int64_t> round_started_at;

  // T < K^2.4: the regret guarantee does not apply. Not an error.
  bool below_theorem_regime = false;

  bool is_active(std::size_t arm) const { return eliminated_at[arm] == 0; }
};

// Throws std::invalid_argument for K < 2, T <= K or non-positive rho/psi.
// psi defaults to T / K^2.
EucbvState eucbv_init(std::size_t num_arms, std::int64_t horizon, double rho = 0.5,
                      std::optional<double> psi = std::nullopt);

// max(0, ln(psi * T * eps)), shared by every confidence radius of the round.
double eucbv_log_term(const EucbvState& state);

// Pull quota n for a round with the given epsilon.
std::int64_t eucbv_quota(double psi, std::int64_t horizon, double epsilon);

// sqrt( rho (v + 2) ln(psi T eps_m) / (4 z) ). Throws UndefinedEstimate when
// the arm was never pulled.
double eucbv_confidence(const ArmStats& stats, const EucbvState& state);

// Active arm with the largest mean + confidence, lowest index on ties.
std::size_t eucbv_select(const EucbvState& state);

// Drops every active arm whose upper bound is strictly below the best lower
// bound among active arms. Returns the removed arms.
std::vector<std::size_t> eucbv_eliminate(EucbvState& state);

// Starts round m + 1 when t >= N_m and m <= M. Returns true if it did.
bool eucbv_advance_round(EucbvState& state, std::int64_t t);

using RewardSource = std::function<double(std::size_t arm)>;

// Pulls every arm once (t = 1..K). No elimination happens here.
void eucbv_initial_pulls(EucbvState& state, const RewardSource& reward);

// One main-loop timestep: select, observe, record, eliminate, advance.
// Requires the initial pulls to be done. Returns the pulled arm.
std::size_t eucbv_step(EucbvState& state, const RewardSource& reward);

struct EucbvParams {
  double rho = 0.5;
  std::optional<double> psi;
};

// EUCBV behind the sequential Policy contract. The confidence radii are
// cached per arm and refreshed only when an arm's statistics or the round
// change, which yields the same decisions as eucbv_step.
class EucbvPolicy final : public Policy {
 public:
  EucbvPolicy(std::size_t num_arms, std::int64_t horizon, EucbvParams params = {});

  std::string_view name() const override { return "eucbv"; }
  std::size_t select(std::int64_t t) override;
  void update(std::size_t arm, double reward) override;
  std::optional<std::size_t> survivor() const override;

  const EucbvState& state() const { return state_; }

 private:
  void refresh(std::size_t arm);
  void refresh_all();
  void eliminate();

  EucbvState state_;
  std::vector<double> upper_;
  std::vector<double> lower_;
};

}  // namespace bandit
