#pragma once

// Experiment descriptions: the key-value config format and the built-in
// presets expt1..expt4.
//
//   # comment            ; comment
//   [experiment]
//   name = my-run
//   preset = expt1         optional; later keys and sections override it
//   horizon = 6e4
//   runs = 100
//   seed = 1               master seed for the reward and policy streams
//   env_seed = 1           seed for randomized arm variances
//   checkpoints = 200
//
//   [environment]
//   arm = bernoulli 0.07 x19
//   arm = gaussian 0.04 0.2..0.24 x89     variance drawn U[0.2, 0.24] per arm
//   arm = gaussian 0.05 0.25
//
//   [policy.eucbv]
//   rho = 0.5
//   [policy.ucb1]
//
// Arms are listed in order; an [environment] section replaces the preset's
// arms and any [policy.*] section replaces the preset's roster.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bandit/env.hpp"
#include "bandit/policy.hpp"

namespace bandit {

struct ArmGroup {
  ArmKind kind = ArmKind::kBernoulli;
  double mean = 0.0;
  double variance_lo = 0.0;  // equal to variance_hi for a fixed variance
  double variance_hi = 0.0;
  std::size_t count = 1;

  bool randomized() const { return variance_lo != variance_hi; }
};

struct ExperimentSpec {
  std::string name;
  std::vector<ArmGroup> arms;
  std::int64_t horizon = 0;
  std::size_t runs = 100;
  std::uint64_t master_seed = 1;
  std::uint64_t env_seed = 1;
  std::vector<PolicySpec> policies;
  std::size_t checkpoints = 200;

  std::size_t num_arms() const;
};

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { kParse, kValidation };

  ConfigError(Kind kind, std::string message, std::size_t line = 0, std::string field = {});

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }  // 0 when not tied to a line
  const std::string& field() const { return field_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::string field_;
};

std::span<const std::string_view> preset_ids();

// Throws ConfigError (validation) for an unknown id.
ExperimentSpec preset_spec(std::string_view id);

// Parses and validates; throws ConfigError.
ExperimentSpec parse_config(std::string_view text);
ExperimentSpec load_config(const std::filesystem::path& path);

// Throws ConfigError (validation) naming the offending field.
void validate_spec(const ExperimentSpec& spec);

// Randomized variances come from derive_stream(env_seed, 0, kEnvironment),
// one uniform() per randomized arm in listing order.
Environment build_environment(const ExperimentSpec& spec);

}  // namespace bandit
