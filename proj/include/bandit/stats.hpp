#pragma once

#include <cstdint>
#include <stdexcept>

namespace bandit {

// Thrown when an estimate is requested for an arm that was never pulled.
class UndefinedEstimate : public std::domain_error {
 public:
  UndefinedEstimate() : std::domain_error("estimate undefined: arm has zero pulls") {}
};

// Sufficient statistics of one arm: pull count z, sum of rewards and sum of
// squared rewards. Sums are kept in long double; the variance estimate is the
// biased (divisor z) sample variance, clamped at zero.
struct ArmStats {
  std::int64_t pulls = 0;
  long double reward_sum = 0.0L;
  long double reward_sq_sum = 0.0L;

  void record(double reward) {
    ++pulls;
    reward_sum += reward;
    reward_sq_sum += static_cast<long double>(reward) * reward;
  }
};

inline ArmStats record(ArmStats stats, double reward) {
  stats.record(reward);
  return stats;
}

double mean_estimate(const ArmStats& stats);
double variance_estimate(const ArmStats& stats);

}  // namespace bandit
