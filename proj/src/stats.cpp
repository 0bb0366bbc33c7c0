#include "bandit/stats.hpp"

namespace bandit {

double mean_estimate(const ArmStats& stats) {
  if (stats.pulls <= 0) throw UndefinedEstimate();
  return static_cast<double>(stats.reward_sum / stats.pulls);
}

double variance_estimate(const ArmStats& stats) {
  if (stats.pulls <= 0) throw UndefinedEstimate();
  const long double n = stats.pulls;
  const long double mean = stats.reward_sum / n;
  const long double v = stats.reward_sq_sum / n - mean * mean;
  return v > 0.0L ? static_cast<double>(v) : 0.0;
}

}  // namespace bandit
