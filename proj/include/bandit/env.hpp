#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "bandit/rng.hpp"

namespace bandit {

enum class ArmKind { kBernoulli, kGaussian };

std::string_view to_string(ArmKind kind);

// Reward distribution of a single arm. Gaussian samples are not clipped to
// [0, 1]; the bounded-reward analysis does not cover them.
class ArmModel {
 public:
  static ArmModel bernoulli(double mean);
  static ArmModel gaussian(double mean, double variance);

  ArmKind kind() const { return kind_; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double stddev() const { return stddev_; }

 private:
  ArmModel(ArmKind kind, double mean, double variance);

  ArmKind kind_;
  double mean_;
  double variance_;
  double stddev_;
};

// Bernoulli: one uniform draw, 1 iff u < mean.
// Gaussian: one normal() call (two draws).
double sample_reward(const ArmModel& arm, RngStream& rng);

struct ArmSpec {
  ArmKind kind = ArmKind::kBernoulli;
  double mean = 0.0;
  // Ignored for Bernoulli arms.
  double variance = 0.0;
};

class Environment {
 public:
  explicit Environment(std::vector<ArmModel> arms);

  std::size_t num_arms() const { return arms_.size(); }
  const ArmModel& arm(std::size_t i) const { return arms_[i]; }
  std::span<const ArmModel> arms() const { return arms_; }
  std::size_t optimal_index() const { return optimal_index_; }
  double optimal_mean() const { return arms_[optimal_index_].mean(); }
  std::span<const double> gaps() const { return gaps_; }
  double gap(std::size_t i) const { return gaps_[i]; }

  double min_positive_gap() const;
  double max_gap() const;

  double pull(std::size_t i, RngStream& rng) const {
    return sample_reward(arms_[i], rng);
  }

 private:
  std::vector<ArmModel> arms_;
  std::vector<double> gaps_;
  std::size_t optimal_index_ = 0;
};

// Throws std::invalid_argument for K < 2, Bernoulli means outside [0, 1] or
// negative variances.
Environment make_environment(std::span<const ArmSpec> spec);

}  // namespace bandit
