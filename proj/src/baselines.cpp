#include "bandit/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace bandit {
namespace {

using FastDouble = boost::math::policies::policy<boost::math::policies::promote_double<false>>;

double clamped_log(double x) { return x > 1.0 ? std::log(x) : 0.0; }

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double normal_quantile(double level) {
  static const boost::math::normal_distribution<double, FastDouble> standard;
  return boost::math::quantile(standard, level);
}

double index_value(IndexKind kind, double mean, double var, std::int64_t pulls,
                   std::int64_t t, std::int64_t horizon, std::size_t num_arms,
                   const IndexParams& p) {
  const double z = static_cast<double>(pulls);
  const double td = static_cast<double>(t);
  switch (kind) {
    case IndexKind::kUcb1:
      return mean + std::sqrt(2.0 * clamped_log(td) / z);
    case IndexKind::kUcbv: {
      const double lt = clamped_log(td);
      return mean + std::sqrt(2.0 * var * lt / z) + 3.0 * lt / (2.0 * z);
    }
    case IndexKind::kMoss:
      return mean + std::sqrt(
                        clamped_log(static_cast<double>(horizon) /
                                    (static_cast<double>(num_arms) * z)) /
                        z);
    case IndexKind::kOcucb:
      return mean + std::sqrt(p.ocucb_alpha / z *
                              clamped_log(p.ocucb_psi * static_cast<double>(horizon) / z));
    case IndexKind::kKlucbPlus:
      return klucb_upper_bound(mean, clamped_log(td / z) / z);
    case IndexKind::kKlucbPlusGauss:
      return mean + std::sqrt(2.0 * p.gauss_sigma2 * clamped_log(td / z) / z);
    case IndexKind::kBayesUcbGauss: {
      const double level = bayes_ucb_level(t, horizon);
      return mean * z / (z + 1.0) + normal_quantile(level) / std::sqrt(z + 1.0);
    }
  }
  return mean;
}

// Bernoulli rounding of a reward using the policy stream. Exact 0/1 rewards
// consume no draw.
bool bernoulli_outcome(double reward, RngStream& rng) {
  if (reward == 1.0) return true;
  if (reward == 0.0) return false;
  return rng.uniform() < clamp01(reward);
}

std::size_t initial_pull(std::int64_t t, std::size_t num_arms) {
  return t <= static_cast<std::int64_t>(num_arms) ? static_cast<std::size_t>(t - 1)
                                                  : num_arms;
}

}  // namespace

double kl_bernoulli(double p, double q) {
  constexpr double kEps = 1e-15;
  p = std::clamp(p, kEps, 1.0 - kEps);
  q = std::clamp(q, kEps, 1.0 - kEps);
  return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
}

double klucb_upper_bound(double p, double bound) {
  p = clamp01(p);
  double lo = p;
  double hi = 1.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (kl_bernoulli(p, mid) > bound) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

double bayes_ucb_level(std::int64_t t, std::int64_t horizon) {
  const double level =
      1.0 - 1.0 / (static_cast<double>(t) * std::log(static_cast<double>(horizon)));
  return std::max(level, 0.5);
}

double baseline_index(IndexKind kind, const ArmStats& stats, std::int64_t t,
                      std::int64_t horizon, std::size_t num_arms, const IndexParams& params) {
  const double mean = mean_estimate(stats);
  const double var = kind == IndexKind::kUcbv ? variance_estimate(stats) : 0.0;
  return index_value(kind, mean, var, stats.pulls, t, horizon, num_arms, params);
}

// -- IndexPolicy --------------------------------------------------------------

IndexPolicy::IndexPolicy(IndexKind kind, std::size_t num_arms, std::int64_t horizon,
                         IndexParams params)
    : Policy(num_arms, horizon),
      kind_(kind),
      params_(params),
      stats_(num_arms),
      mean_(num_arms, 0.0),
      var_(num_arms, 0.0),
      argmax_(num_arms) {}

std::string_view IndexPolicy::name() const {
  switch (kind_) {
    case IndexKind::kUcb1:
      return "ucb1";
    case IndexKind::kUcbv:
      return "ucbv";
    case IndexKind::kMoss:
      return "moss";
    case IndexKind::kOcucb:
      return "ocucb";
    case IndexKind::kKlucbPlus:
      return "klucb-plus";
    case IndexKind::kKlucbPlusGauss:
      return "klucb-plus-gauss";
    case IndexKind::kBayesUcbGauss:
      return "bayes-ucb-gauss";
  }
  return "index";
}

std::size_t IndexPolicy::select(std::int64_t t) {
  const std::size_t k = num_arms();
  if (std::size_t arm = initial_pull(t, k); arm < k) return arm;
  return argmax_.argmax(t, [this](std::size_t arm, std::int64_t at) {
    return index_value(kind_, mean_[arm], var_[arm], stats_[arm].pulls, at, horizon(),
                       num_arms(), params_);
  });
}

void IndexPolicy::update(std::size_t arm, double reward) {
  stats_[arm].record(reward);
  mean_[arm] = mean_estimate(stats_[arm]);
  var_[arm] = variance_estimate(stats_[arm]);
  argmax_.invalidate(arm);
}

// -- KlucbPlusPolicy ----------------------------------------------------------

KlucbPlusPolicy::KlucbPlusPolicy(std::size_t num_arms, std::int64_t horizon)
    : Policy(num_arms, horizon), stats_(num_arms), argmax_(num_arms) {}

std::size_t KlucbPlusPolicy::select(std::int64_t t) {
  const std::size_t k = num_arms();
  if (std::size_t arm = initial_pull(t, k); arm < k) return arm;
  return argmax_.argmax(t, [this](std::size_t arm, std::int64_t at) {
    return baseline_index(IndexKind::kKlucbPlus, stats_[arm], at, horizon(), num_arms());
  });
}

void KlucbPlusPolicy::update(std::size_t arm, double reward) {
  stats_[arm].record(reward);
  argmax_.invalidate(arm);
}

// -- BayesUcbPolicy -----------------------------------------------------------

BayesUcbPolicy::BayesUcbPolicy(std::size_t num_arms, std::int64_t horizon, RngStream rng)
    : Policy(num_arms, horizon),
      rng_(rng),
      successes_(num_arms, 0),
      failures_(num_arms, 0),
      argmax_(num_arms) {}

std::size_t BayesUcbPolicy::select(std::int64_t t) {
  const std::size_t k = num_arms();
  if (std::size_t arm = initial_pull(t, k); arm < k) return arm;
  return argmax_.argmax(t, [this](std::size_t arm, std::int64_t at) {
    const double a = static_cast<double>(successes_[arm] + 1);
    const double b = static_cast<double>(failures_[arm] + 1);
    return boost::math::ibeta_inv(a, b, bayes_ucb_level(at, horizon()), FastDouble());
  });
}

void BayesUcbPolicy::update(std::size_t arm, double reward) {
  if (bernoulli_outcome(reward, rng_)) {
    ++successes_[arm];
  } else {
    ++failures_[arm];
  }
  argmax_.invalidate(arm);
}

// -- Thompson sampling --------------------------------------------------------

ThompsonBetaPolicy::ThompsonBetaPolicy(std::size_t num_arms, std::int64_t horizon,
                                       RngStream rng)
    : Policy(num_arms, horizon), rng_(rng), successes_(num_arms, 0), failures_(num_arms, 0) {}

std::size_t ThompsonBetaPolicy::select(std::int64_t) {
  std::size_t best = 0;
  double best_sample = -1.0;
  for (std::size_t arm = 0; arm < num_arms(); ++arm) {
    const double sample = rng_.beta(static_cast<double>(successes_[arm] + 1),
                                    static_cast<double>(failures_[arm] + 1));
    if (sample > best_sample) {
      best_sample = sample;
      best = arm;
    }
  }
  return best;
}

void ThompsonBetaPolicy::update(std::size_t arm, double reward) {
  if (bernoulli_outcome(reward, rng_)) {
    ++successes_[arm];
  } else {
    ++failures_[arm];
  }
}

ThompsonGaussPolicy::ThompsonGaussPolicy(std::size_t num_arms, std::int64_t horizon,
                                         RngStream rng)
    : Policy(num_arms, horizon), rng_(rng), sums_(num_arms, 0.0), pulls_(num_arms, 0) {}

std::size_t ThompsonGaussPolicy::select(std::int64_t) {
  std::size_t best = 0;
  double best_sample = -std::numeric_limits<double>::infinity();
  for (std::size_t arm = 0; arm < num_arms(); ++arm) {
    const double precision = static_cast<double>(pulls_[arm]) + 1.0;
    const double sample = rng_.normal(sums_[arm] / precision, 1.0 / std::sqrt(precision));
    if (sample > best_sample) {
      best_sample = sample;
      best = arm;
    }
  }
  return best;
}

void ThompsonGaussPolicy::update(std::size_t arm, double reward) {
  sums_[arm] += reward;
  ++pulls_[arm];
}

// -- UcbImprovedPolicy --------------------------------------------------------

UcbImprovedPolicy::UcbImprovedPolicy(std::size_t num_arms, std::int64_t horizon)
    : Policy(num_arms, horizon), stats_(num_arms) {
  active_.resize(num_arms);
  std::iota(active_.begin(), active_.end(), std::size_t{0});
  max_round_ = static_cast<int>(
      std::floor(0.5 * std::log2(static_cast<double>(horizon) / std::numbers::e)));
  start_round();
}

void UcbImprovedPolicy::start_round() {
  const double e2 = epsilon_ * epsilon_;
  quota_ = static_cast<std::int64_t>(
      std::ceil(2.0 * clamped_log(static_cast<double>(horizon()) * e2) / e2));
  quota_ = std::max<std::int64_t>(quota_, 1);
}

void UcbImprovedPolicy::finish_round() {
  const double e2 = epsilon_ * epsilon_;
  const double width = std::sqrt(clamped_log(static_cast<double>(horizon()) * e2) /
                                 (2.0 * static_cast<double>(quota_)));
  double best_lower = -std::numeric_limits<double>::infinity();
  for (std::size_t arm : active_) {
    best_lower = std::max(best_lower, mean_estimate(stats_[arm]) - width);
  }
  std::erase_if(active_, [&](std::size_t arm) {
    return mean_estimate(stats_[arm]) + width < best_lower;
  });
  epsilon_ *= 0.5;
  ++round_;
  if (active_.size() == 1 || round_ > max_round_) {
    std::size_t best = active_.front();
    for (std::size_t arm : active_) {
      if (mean_estimate(stats_[arm]) > mean_estimate(stats_[best])) best = arm;
    }
    committed_ = best;
    return;
  }
  start_round();
}

std::size_t UcbImprovedPolicy::select(std::int64_t) {
  if (committed_) return *committed_;
  for (;;) {
    std::size_t pick = num_arms();
    for (std::size_t arm : active_) {
      if (stats_[arm].pulls < quota_ &&
          (pick == num_arms() || stats_[arm].pulls < stats_[pick].pulls)) {
        pick = arm;
      }
    }
    if (pick < num_arms()) return pick;
    finish_round();
    if (committed_) return *committed_;
  }
}

void UcbImprovedPolicy::update(std::size_t arm, double reward) { stats_[arm].record(reward); }

// -- DmedPolicy ---------------------------------------------------------------

DmedPolicy::DmedPolicy(std::size_t num_arms, std::int64_t horizon)
    : Policy(num_arms, horizon), stats_(num_arms) {
  list_.resize(num_arms);
  std::iota(list_.begin(), list_.end(), std::size_t{0});
}

void DmedPolicy::rebuild_list() {
  std::vector<double> means(num_arms());
  std::size_t best = 0;
  for (std::size_t arm = 0; arm < num_arms(); ++arm) {
    means[arm] = clamp01(mean_estimate(stats_[arm]));
    if (means[arm] > means[best]) best = arm;
  }
  list_.clear();
  const double n = static_cast<double>(t_);
  for (std::size_t arm = 0; arm < num_arms(); ++arm) {
    const double z = static_cast<double>(stats_[arm].pulls);
    if (arm == best || z * kl_bernoulli(means[arm], means[best]) <= clamped_log(n / z)) {
      list_.push_back(arm);
    }
  }
  cursor_ = 0;
}

std::size_t DmedPolicy::select(std::int64_t) {
  if (cursor_ >= list_.size()) rebuild_list();
  return list_[cursor_++];
}

void DmedPolicy::update(std::size_t arm, double reward) {
  stats_[arm].record(reward);
  ++t_;
}

// -- MedianEliminationPolicy --------------------------------------------------

MedianEliminationPolicy::MedianEliminationPolicy(std::size_t num_arms, std::int64_t horizon,
                                                 double epsilon, double delta)
    : Policy(num_arms, horizon),
      epsilon_(epsilon / 4.0),
      delta_(delta / 2.0),
      round_pulls_(num_arms, 0),
      round_sums_(num_arms, 0.0) {
  if (!(epsilon > 0.0) || !(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("median-elim: need epsilon > 0 and 0 < delta < 1");
  }
  active_.resize(num_arms);
  std::iota(active_.begin(), active_.end(), std::size_t{0});
  start_round();
}

void MedianEliminationPolicy::start_round() {
  quota_ = static_cast<std::int64_t>(
      std::ceil(4.0 / (epsilon_ * epsilon_) * std::log(3.0 / delta_)));
  std::fill(round_pulls_.begin(), round_pulls_.end(), 0);
  std::fill(round_sums_.begin(), round_sums_.end(), 0.0);
}

void MedianEliminationPolicy::finish_round() {
  std::vector<std::size_t> order = active_;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return round_sums_[a] / static_cast<double>(round_pulls_[a]) >
           round_sums_[b] / static_cast<double>(round_pulls_[b]);
  });
  order.resize((order.size() + 1) / 2);
  std::sort(order.begin(), order.end());
  active_ = std::move(order);
  epsilon_ *= 0.75;
  delta_ *= 0.5;
  start_round();
}

std::size_t MedianEliminationPolicy::select(std::int64_t) {
  if (active_.size() == 1) return active_.front();
  for (;;) {
    std::size_t pick = num_arms();
    for (std::size_t arm : active_) {
      if (round_pulls_[arm] < quota_ &&
          (pick == num_arms() || round_pulls_[arm] < round_pulls_[pick])) {
        pick = arm;
      }
    }
    if (pick < num_arms()) return pick;
    finish_round();
    if (active_.size() == 1) return active_.front();
  }
}

void MedianEliminationPolicy::update(std::size_t arm, double reward) {
  ++round_pulls_[arm];
  round_sums_[arm] += reward;
}

std::optional<std::size_t> MedianEliminationPolicy::survivor() const {
  if (active_.size() == 1) return active_.front();
  return std::nullopt;
}

}  // namespace bandit
