#include "bandit/policy.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <utility>

#include "bandit/baselines.hpp"
#include "bandit/eucbv.hpp"

namespace bandit {
namespace {

using namespace std::string_view_literals;

struct Registration {
  std::string_view id;
  std::span<const std::string_view> params;
};

constexpr std::array kNoParams = std::array<std::string_view, 0>{};
constexpr std::array kEucbvParams = {"rho"sv, "psi"sv};
constexpr std::array kOcucbParams = {"alpha"sv, "psi"sv};
constexpr std::array kGaussParams = {"sigma2"sv};
constexpr std::array kMedianParams = {"epsilon"sv, "delta"sv};

constexpr std::array kRegistry = {
    Registration{"eucbv", kEucbvParams},
    Registration{"ucb1", kNoParams},
    Registration{"ucbv", kNoParams},
    Registration{"moss", kNoParams},
    Registration{"ocucb", kOcucbParams},
    Registration{"ucb-improved", kNoParams},
    Registration{"klucb-plus", kNoParams},
    Registration{"klucb-plus-gauss", kGaussParams},
    Registration{"ts-beta", kNoParams},
    Registration{"ts-gauss", kNoParams},
    Registration{"bayes-ucb", kNoParams},
    Registration{"bayes-ucb-gauss", kNoParams},
    Registration{"dmed", kNoParams},
    Registration{"median-elim", kMedianParams},
    Registration{"oracle", kNoParams},
    Registration{"round-robin", kNoParams},
};

constexpr auto kIds = [] {
  std::array<std::string_view, kRegistry.size()> ids{};
  for (std::size_t i = 0; i < kRegistry.size(); ++i) ids[i] = kRegistry[i].id;
  return ids;
}();

const Registration& find_registration(std::string_view id) {
  for (const auto& r : kRegistry) {
    if (r.id == id) return r;
  }
  throw std::invalid_argument("unknown policy id '" + std::string(id) + "'");
}

double param_or(const PolicyParams& params, std::string_view key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

Policy::Policy(std::size_t num_arms, std::int64_t horizon)
    : num_arms_(num_arms), horizon_(horizon) {
  if (num_arms < 2) throw std::invalid_argument("policy needs at least 2 arms");
  if (horizon < 1) throw std::invalid_argument("policy horizon must be >= 1");
}

std::span<const std::string_view> registered_policies() { return kIds; }

std::span<const std::string_view> policy_parameters(std::string_view id) {
  return find_registration(id).params;
}

void validate_policy_spec(const PolicySpec& spec) {
  const auto& reg = find_registration(spec.id);
  for (const auto& [key, value] : spec.params) {
    if (std::find(reg.params.begin(), reg.params.end(), key) == reg.params.end()) {
      throw std::invalid_argument("policy '" + spec.id + "' has no parameter '" + key + "'");
    }
  }
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const PolicyContext& ctx,
                                    RngStream rng) {
  validate_policy_spec(spec);
  const std::size_t k = ctx.num_arms;
  const std::int64_t t = ctx.horizon;
  const std::string_view id = spec.id;
  const auto& p = spec.params;

  if (id == "eucbv") {
    EucbvParams params;
    params.rho = param_or(p, "rho", 0.5);
    if (auto it = p.find("psi"); it != p.end()) params.psi = it->second;
    return std::make_unique<EucbvPolicy>(k, t, params);
  }
  if (id == "ucb1") return std::make_unique<IndexPolicy>(IndexKind::kUcb1, k, t);
  if (id == "ucbv") return std::make_unique<IndexPolicy>(IndexKind::kUcbv, k, t);
  if (id == "moss") return std::make_unique<IndexPolicy>(IndexKind::kMoss, k, t);
  if (id == "ocucb") {
    IndexParams params;
    params.ocucb_alpha = param_or(p, "alpha", params.ocucb_alpha);
    params.ocucb_psi = param_or(p, "psi", params.ocucb_psi);
    return std::make_unique<IndexPolicy>(IndexKind::kOcucb, k, t, params);
  }
  if (id == "ucb-improved") return std::make_unique<UcbImprovedPolicy>(k, t);
  if (id == "klucb-plus") return std::make_unique<KlucbPlusPolicy>(k, t);
  if (id == "klucb-plus-gauss") {
    IndexParams params;
    params.gauss_sigma2 = param_or(p, "sigma2", params.gauss_sigma2);
    return std::make_unique<IndexPolicy>(IndexKind::kKlucbPlusGauss, k, t, params);
  }
  if (id == "ts-beta") return std::make_unique<ThompsonBetaPolicy>(k, t, rng);
  if (id == "ts-gauss") return std::make_unique<ThompsonGaussPolicy>(k, t, rng);
  if (id == "bayes-ucb") return std::make_unique<BayesUcbPolicy>(k, t, rng);
  if (id == "bayes-ucb-gauss") {
    return std::make_unique<IndexPolicy>(IndexKind::kBayesUcbGauss, k, t);
  }
  if (id == "dmed") return std::make_unique<DmedPolicy>(k, t);
  if (id == "median-elim") {
    return std::make_unique<MedianEliminationPolicy>(k, t, param_or(p, "epsilon", 0.1),
                                                     param_or(p, "delta", 0.1));
  }
  if (id == "oracle") return std::make_unique<OraclePolicy>(k, t, ctx.optimal_arm);
  if (id == "round-robin") return std::make_unique<RoundRobinPolicy>(k, t);
  throw std::invalid_argument("unknown policy id '" + spec.id + "'");
}

}  // namespace bandit
