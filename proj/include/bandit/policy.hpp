#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "bandit/rng.hpp"

namespace bandit {

// Sequential decision rule over K arms and a known horizon T.
//
// The caller alternates select(t) and update(arm, reward) for t = 1..T.
// select() depends only on the recorded rewards and, for randomized
// policies, on the policy's own stream.
class Policy {
 public:
  Policy(std::size_t num_arms, std::int64_t horizon);
  virtual ~Policy() = default;

  Policy(const Policy&) = delete;
  Policy& operator=(const Policy&) = delete;

  virtual std::string_view name() const = 0;

  // `t` is the 1-based index of the pull about to happen.
  virtual std::size_t select(std::int64_t t) = 0;
  virtual void update(std::size_t arm, double reward) = 0;

  // Arm an eliminating policy has committed to, once it has one.
  virtual std::optional<std::size_t> survivor() const { return std::nullopt; }

  std::size_t num_arms() const { return num_arms_; }
  std::int64_t horizon() const { return horizon_; }

 private:
  std::size_t num_arms_;
  std::int64_t horizon_;
};

using PolicyParams = std::map<std::string, double, std::less<>>;

struct PolicySpec {
  std::string id;
  PolicyParams params;
};

// What a policy may know about the problem besides K and T. Only the
// "oracle" reference policy reads `optimal_arm`.
struct PolicyContext {
  std::size_t num_arms = 0;
  std::int64_t horizon = 0;
  std::size_t optimal_arm = 0;
};

// Stable identifiers of every registered policy, in registry order.
std::span<const std::string_view> registered_policies();

// Parameter names accepted by `id`. Throws std::invalid_argument for an
// unknown id.
std::span<const std::string_view> policy_parameters(std::string_view id);

// Throws std::invalid_argument naming the offending id or parameter.
void validate_policy_spec(const PolicySpec& spec);

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const PolicyContext& ctx,
                                    RngStream rng);

}  // namespace bandit
