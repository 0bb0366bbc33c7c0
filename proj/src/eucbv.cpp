#include "bandit/eucbv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bandit {
namespace {

double clamped_log(double x) { return x > 1.0 ? std::log(x) : 0.0; }

}  // namespace

EucbvState eucbv_init(std::size_t num_arms, std::int64_t horizon, double rho,
                      std::optional<double> psi) {
  if (num_arms < 2) {
    throw std::invalid_argument("eucbv: need K >= 2 arms");
  }
  if (horizon <= static_cast<std::int64_t>(num_arms)) {
    throw std::invalid_argument("eucbv: horizon T=" + std::to_string(horizon) +
                                " must exceed K=" + std::to_string(num_arms));
  }
  const double k = static_cast<double>(num_arms);
  const double t = static_cast<double>(horizon);
  const double psi_value = psi.value_or(t / (k * k));
  if (!(rho > 0.0)) throw std::invalid_argument("eucbv: rho must be > 0");
  if (!(psi_value > 0.0)) throw std::invalid_argument("eucbv: psi must be > 0");

  EucbvState s;
  s.num_arms = num_arms;
  s.horizon = horizon;
  s.rho = rho;
  s.psi = psi_value;
  s.round = 0;
  s.epsilon = 1.0;
  s.max_round = static_cast<int>(std::floor(0.5 * std::log2(t / std::numbers::e)));
  s.quota = eucbv_quota(s.psi, horizon, s.epsilon);
  s.deadline = static_cast<std::int64_t>(num_arms) * s.quota;
  s.active.reserve(num_arms);
  for (std::size_t i = 0; i < num_arms; ++i) s.active.push_back(i);
  s.stats.assign(num_arms, ArmStats{});
  s.eliminated_at.assign(num_arms, 0);
  s.round_started_at.assign(1, 0);
  s.below_theorem_regime = t < std::pow(k, 2.4);
  return s;
}

double eucbv_log_term(const EucbvState& state) {
  return clamped_log(state.psi * static_cast<double>(state.horizon) * state.epsilon);
}

std::int64_t eucbv_quota(double psi, std::int64_t horizon, double epsilon) {
  const double log_term = clamped_log(psi * static_cast<double>(horizon) * epsilon * epsilon);
  return static_cast<std::int64_t>(std::ceil(log_term / (2.0 * epsilon)));
}

double eucbv_confidence(const ArmStats& stats, const EucbvState& state) {
  const double v = variance_estimate(stats);
  return std::sqrt(state.rho * (v + 2.0) * eucbv_log_term(state) /
                   (4.0 * static_cast<double>(stats.pulls)));
}

std::size_t eucbv_select(const EucbvState& state) {
  if (state.active.size() == 1) return state.active.front();
  std::size_t best = state.active.front();
  double best_index = -std::numeric_limits<double>::infinity();
  for (std::size_t arm : state.active) {
    const ArmStats& s = state.stats[arm];
    const double index = mean_estimate(s) + eucbv_confidence(s, state);
    if (index > best_index) {
      best_index = index;
      best = arm;
    }
  }
  return best;
}

std::vector<std::size_t> eucbv_eliminate(EucbvState& state) {
  std::vector<std::size_t> removed;
  if (state.active.size() <= 1) return removed;
  const std::size_t n = state.active.size();
  std::vector<double> upper(n);
  double best_lower = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const ArmStats& s = state.stats[state.active[k]];
    const double mean = mean_estimate(s);
    const double conf = eucbv_confidence(s, state);
    upper[k] = mean + conf;
    best_lower = std::max(best_lower, mean - conf);
  }
  std::vector<std::size_t> kept;
  kept.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t arm = state.active[k];
    if (upper[k] < best_lower) {
      removed.push_back(arm);
      state.eliminated_at[arm] = state.t;
    } else {
      kept.push_back(arm);
    }
  }
  state.active = std::move(kept);
  return removed;
}

bool eucbv_advance_round(EucbvState& state, std::int64_t t) {
  if (t < state.deadline || state.round > state.max_round) return false;
  state.epsilon *= 0.5;
  state.quota = eucbv_quota(state.psi, state.horizon, state.epsilon);
  state.deadline = t + static_cast<std::int64_t>(state.active.size()) * state.quota;
  ++state.round;
  state.round_started_at.push_back(t);
  return true;
}

void eucbv_initial_pulls(EucbvState& state, const RewardSource& reward) {
  for (std::size_t arm = 0; arm < state.num_arms; ++arm) {
    state.stats[arm].record(reward(arm));
    ++state.t;
  }
}

std::size_t eucbv_step(EucbvState& state, const RewardSource& reward) {
  if (state.t < static_cast<std::int64_t>(state.num_arms)) {
    throw std::logic_error("eucbv_step: initial pulls not done");
  }
  if (state.t >= state.horizon) {
    throw std::logic_error("eucbv_step: horizon exhausted");
  }
  const std::size_t arm = eucbv_select(state);
  state.stats[arm].record(reward(arm));
  ++state.t;
  eucbv_eliminate(state);
  eucbv_advance_round(state, state.t);
  return arm;
}

EucbvPolicy::EucbvPolicy(std::size_t num_arms, std::int64_t horizon, EucbvParams params)
    : Policy(num_arms, horizon),
      state_(eucbv_init(num_arms, horizon, params.rho, params.psi)),
      upper_(num_arms, 0.0),
      lower_(num_arms, 0.0) {}

std::size_t EucbvPolicy::select(std::int64_t t) {
  if (t <= static_cast<std::int64_t>(state_.num_arms)) {
    return static_cast<std::size_t>(t - 1);
  }
  if (state_.active.size() == 1) return state_.active.front();
  std::size_t best = state_.active.front();
  double best_index = upper_[best];
  for (std::size_t arm : state_.active) {
    if (upper_[arm] > best_index) {
      best_index = upper_[arm];
      best = arm;
    }
  }
  return best;
}

void EucbvPolicy::update(std::size_t arm, double reward) {
  state_.stats[arm].record(reward);
  ++state_.t;
  const auto k = static_cast<std::int64_t>(state_.num_arms);
  if (state_.t < k) return;
  if (state_.t == k) {
    refresh_all();
    return;
  }
  refresh(arm);
  eliminate();
  if (eucbv_advance_round(state_, state_.t)) refresh_all();
}

std::optional<std::size_t> EucbvPolicy::survivor() const {
  if (state_.active.size() == 1) return state_.active.front();
  return std::nullopt;
}

void EucbvPolicy::refresh(std::size_t arm) {
  const ArmStats& s = state_.stats[arm];
  const double mean = mean_estimate(s);
  const double conf = eucbv_confidence(s, state_);
  upper_[arm] = mean + conf;
  lower_[arm] = mean - conf;
}

void EucbvPolicy::refresh_all() {
  for (std::size_t arm : state_.active) refresh(arm);
}

void EucbvPolicy::eliminate() {
  if (state_.active.size() <= 1) return;
  double best_lower = -std::numeric_limits<double>::infinity();
  for (std::size_t arm : state_.active) best_lower = std::max(best_lower, lower_[arm]);
  std::erase_if(state_.active, [&](std::size_t arm) {
    if (upper_[arm] < best_lower) {
      state_.eliminated_at[arm] = state_.t;
      return true;
    }
    return false;
  });
}

}  // namespace bandit
