#include "bandit/env.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bandit {

std::string_view to_string(ArmKind kind) {
  switch (kind) {
    case ArmKind::kBernoulli:
      return "bernoulli";
    case ArmKind::kGaussian:
      return "gaussian";
  }
  return "unknown";
}

ArmModel::ArmModel(ArmKind kind, double mean, double variance)
    : kind_(kind), mean_(mean), variance_(variance), stddev_(std::sqrt(variance)) {}

ArmModel ArmModel::bernoulli(double mean) {
  if (!(mean >= 0.0 && mean <= 1.0)) {
    throw std::invalid_argument("bernoulli mean must lie in [0, 1], got " +
                                std::to_string(mean));
  }
  return ArmModel(ArmKind::kBernoulli, mean, mean * (1.0 - mean));
}

ArmModel ArmModel::gaussian(double mean, double variance) {
  if (!std::isfinite(mean)) {
    throw std::invalid_argument("gaussian mean must be finite");
  }
  if (!(variance >= 0.0) || !std::isfinite(variance)) {
    throw std::invalid_argument("gaussian variance must be >= 0, got " +
                                std::to_string(variance));
  }
  return ArmModel(ArmKind::kGaussian, mean, variance);
}

double sample_reward(const ArmModel& arm, RngStream& rng) {
  switch (arm.kind()) {
    case ArmKind::kBernoulli:
      return rng.uniform() < arm.mean() ? 1.0 : 0.0;
    case ArmKind::kGaussian:
      return rng.normal(arm.mean(), arm.stddev());
  }
  return 0.0;
}

Environment::Environment(std::vector<ArmModel> arms) : arms_(std::move(arms)) {
  if (arms_.size() < 2) {
    throw std::invalid_argument("an environment needs at least 2 arms, got " +
                                std::to_string(arms_.size()));
  }
  for (std::size_t i = 1; i < arms_.size(); ++i) {
    // Strict comparison keeps the lowest index among co-maximal arms.
    if (arms_[i].mean() > arms_[optimal_index_].mean()) optimal_index_ = i;
  }
  const double best = arms_[optimal_index_].mean();
  gaps_.reserve(arms_.size());
  for (const auto& arm : arms_) gaps_.push_back(best - arm.mean());
}

double Environment::min_positive_gap() const {
  double result = std::numeric_limits<double>::infinity();
  for (double g : gaps_) {
    if (g > 0.0 && g < result) result = g;
  }
  return result;
}

double Environment::max_gap() const {
  double result = 0.0;
  for (double g : gaps_) result = std::max(result, g);
  return result;
}

Environment make_environment(std::span<const ArmSpec> spec) {
  std::vector<ArmModel> arms;
  arms.reserve(spec.size());
  for (const auto& s : spec) {
    arms.push_back(s.kind == ArmKind::kBernoulli ? ArmModel::bernoulli(s.mean)
                                                 : ArmModel::gaussian(s.mean, s.variance));
  }
  return Environment(std::move(arms));
}

}  // namespace bandit
