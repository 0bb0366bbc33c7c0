#include "bandit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bandit/eucbv.hpp"
#include "bandit/stats.hpp"

namespace bandit {
namespace {

double clamped_log(double x) { return x > 1.0 ? std::log(x) : 0.0; }

int max_round(std::int64_t horizon) {
  return static_cast<int>(
      std::floor(0.5 * std::log2(static_cast<double>(horizon) / std::numbers::e)));
}

double regime_psi(std::size_t num_arms, std::int64_t horizon) {
  const double k = static_cast<double>(num_arms);
  return static_cast<double>(horizon) / (k * k);
}

double small_gap_term(std::size_t num_arms, std::int64_t horizon) {
  return std::pow(static_cast<double>(num_arms), 4) /
         std::pow(static_cast<double>(horizon), 0.25);
}

}  // namespace

BoundInputs make_bound_inputs(std::int64_t horizon, std::span<const double> gaps,
                              std::span<const double> variances, std::optional<double> b) {
  if (gaps.size() < 2) throw std::invalid_argument("bounds: need at least two arms");
  if (gaps.size() != variances.size())
    throw std::invalid_argument("bounds: gaps and variances differ in length");
  if (horizon < 1) throw std::invalid_argument("bounds: horizon must be >= 1");

  BoundInputs in;
  in.num_arms = gaps.size();
  in.horizon = horizon;
  in.gaps.assign(gaps.begin(), gaps.end());
  in.variances.assign(variances.begin(), variances.end());
  for (double g : in.gaps)
    if (!(g >= 0.0)) throw std::invalid_argument("bounds: gaps must be non-negative");
  for (double v : in.variances)
    if (!(v >= 0.0)) throw std::invalid_argument("bounds: variances must be non-negative");
  in.sigma_max_sq = *std::max_element(in.variances.begin(), in.variances.end());

  const double b_min = std::sqrt(std::numbers::e / static_cast<double>(horizon));
  in.b = b.value_or(b_min);
  if (in.b < b_min) throw std::invalid_argument("bounds: b must be >= sqrt(e / T)");

  in.hi.assign(in.num_arms, 0.0);
  for (std::size_t i = 0; i < in.num_arms; ++i) {
    if (in.gaps[i] <= 0.0) continue;
    const double inv_i = 1.0 / (in.gaps[i] * in.gaps[i]);
    in.h1 += inv_i;
    for (std::size_t j = 0; j < in.num_arms; ++j) {
      if (in.gaps[j] <= 0.0) continue;
      in.hi[i] += std::min(inv_i, 1.0 / (in.gaps[j] * in.gaps[j]));
    }
  }
  return in;
}

BoundInputs make_bound_inputs(const Environment& env, std::int64_t horizon,
                              std::optional<double> b) {
  std::vector<double> variances;
  variances.reserve(env.num_arms());
  for (const ArmModel& arm : env.arms()) variances.push_back(arm.variance());
  return make_bound_inputs(horizon, env.gaps(), variances, b);
}

double eucbv_dominant_term(std::int64_t horizon, std::size_t num_arms, double gap,
                           double variance) {
  if (gap <= 0.0) return 0.0;
  const double arg =
      static_cast<double>(horizon) * gap * gap / static_cast<double>(num_arms);
  return 320.0 * variance * clamped_log(arg) / gap;
}

double eucbv_gap_dependent_bound(const BoundInputs& in, double c0, double c2) {
  const double k4 = small_gap_term(in.num_arms, in.horizon);
  const double t = static_cast<double>(in.horizon);
  double total = 0.0;
  double largest_small_gap = 0.0;
  for (std::size_t i = 0; i < in.num_arms; ++i) {
    const double gap = in.gaps[i];
    if (gap > in.b) {
      total += c0 * k4 + gap + eucbv_dominant_term(in.horizon, in.num_arms, gap, in.variances[i]);
    } else if (gap > 0.0) {
      total += c2 * k4;
      largest_small_gap = std::max(largest_small_gap, gap);
    }
  }
  return total + largest_small_gap * t;
}

double gap_independent_bound(std::size_t num_arms, std::int64_t horizon, double c3) {
  const double k = static_cast<double>(num_arms);
  const double t = static_cast<double>(horizon);
  return c3 * std::pow(k, 5) / std::pow(t, 0.25) + 80.0 * std::sqrt(k * t);
}

std::vector<BoundRow> comparison_table(const BoundInputs& in) {
  double gap = 0.0;
  std::size_t hardest = 0;
  for (std::size_t i = 0; i < in.num_arms; ++i) {
    if (in.gaps[i] > 0.0 && (gap == 0.0 || in.gaps[i] < gap)) {
      gap = in.gaps[i];
      hardest = i;
    }
  }
  const double k = static_cast<double>(in.num_arms);
  const double t = static_cast<double>(in.horizon);
  const double s2 = in.sigma_max_sq;
  const double root_kt = std::sqrt(k * t);
  const double log_t = clamped_log(t);

  auto per_gap = [gap](double numerator) { return gap > 0.0 ? numerator / gap : 0.0; };
  const double hi = in.hi[hardest];

  return {
      {"eucbv", "K sigma_max^2 ln(T gap^2 / K) / gap",
       per_gap(k * s2 * clamped_log(t * gap * gap / k)), "sqrt(K T)", root_kt},
      {"ucb1", "K ln(T) / gap", per_gap(k * log_t), "sqrt(K T ln T)",
       std::sqrt(k * t * log_t)},
      {"ucbv", "K sigma_max^2 ln(T) / gap", per_gap(k * s2 * log_t), "sqrt(K T ln T)",
       std::sqrt(k * t * log_t)},
      {"ucb-improved", "K ln(T gap^2) / gap", per_gap(k * clamped_log(t * gap * gap)),
       "sqrt(K T ln K)", std::sqrt(k * t * clamped_log(k))},
      {"moss", "K^2 ln(T gap^2 / K) / gap", per_gap(k * k * clamped_log(t * gap * gap / k)),
       "sqrt(K T)", root_kt},
      {"ocucb", "K ln(T / H_i) / gap",
       per_gap(hi > 0.0 ? k * clamped_log(t / hi) : 0.0), "sqrt(K T)", root_kt},
  };
}

// ---------------------------------------------------------------------------

bool in_theorem_regime(std::size_t num_arms, std::int64_t horizon) {
  return static_cast<double>(horizon) >= std::pow(static_cast<double>(num_arms), 2.4);
}

std::vector<GridPoint> lemma_grid(GridSize size) {
  const int per_arm_count = size == GridSize::kSmall ? 12 : 60;
  constexpr double kMaxHorizon = 1e7;
  std::vector<GridPoint> grid;
  for (std::size_t k : {2u, 4u, 8u, 16u, 32u, 64u}) {
    const auto lo = static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(k), 2.4)));
    const double log_lo = std::log(static_cast<double>(lo));
    const double step = (std::log(kMaxHorizon) - log_lo) / (per_arm_count - 1);
    std::int64_t previous = 0;
    for (int j = 0; j < per_arm_count; ++j) {
      auto t = static_cast<std::int64_t>(std::llround(std::exp(log_lo + step * j)));
      t = std::clamp<std::int64_t>(t, lo, static_cast<std::int64_t>(kMaxHorizon));
      if (j == 0) t = lo;
      if (t == previous) continue;
      grid.push_back({k, t});
      previous = t;
    }
  }
  return grid;
}

std::vector<double> lemma2_gap_grid(GridSize size) {
  if (size == GridSize::kSmall) return {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0};
  constexpr int kCount = 40;
  std::vector<double> gaps;
  for (int j = 0; j < kCount; ++j)
    gaps.push_back(std::pow(10.0, -3.0 + 3.0 * j / (kCount - 1)));
  return gaps;
}

double lemma1_ratio(std::size_t num_arms, std::int64_t horizon, int m, double rho) {
  const double psi_t = regime_psi(num_arms, horizon) * static_cast<double>(horizon);
  return rho * m * std::numbers::ln2 / (std::log(psi_t) - 2.0 * m * std::numbers::ln2);
}

Lemma1Report verify_lemma1(std::span<const GridPoint> grid) {
  Lemma1Report report;
  for (const GridPoint& p : grid) {
    if (!in_theorem_regime(p.num_arms, p.horizon)) {
      ++report.skipped;
      continue;
    }
    for (int m = 0; m <= max_round(p.horizon); ++m) {
      const double ratio = lemma1_ratio(p.num_arms, p.horizon, m);
      ++report.points;
      if (!(ratio <= 1.5)) ++report.violations;
      if (ratio > report.max_ratio || report.points == 1) {
        report.max_ratio = ratio;
        report.worst = p;
        report.worst_m = m;
      }
    }
  }
  return report;
}

std::optional<Lemma2Point> lemma2_point(std::size_t num_arms, std::int64_t horizon, double gap,
                                        double vhat, double rho) {
  const double psi = regime_psi(num_arms, horizon);
  const int last = max_round(horizon);
  double eps = 1.0;
  for (int m = 0; m <= last; ++m, eps *= 0.5) {
    if (!(std::sqrt(4.0 * eps) < gap / 4.0)) continue;
    Lemma2Point p;
    p.round = m;
    p.epsilon = eps;
    p.quota = eucbv_quota(psi, horizon, eps);
    const double log_term = clamped_log(psi * static_cast<double>(horizon) * eps);
    p.confidence =
        std::sqrt(rho * (vhat + 2.0) * log_term / (4.0 * static_cast<double>(p.quota)));
    p.target = gap / 4.0;
    return p;
  }
  return std::nullopt;
}

Lemma2Report verify_lemma2(std::span<const GridPoint> grid, std::span<const double> gaps,
                           double vhat) {
  Lemma2Report report;
  for (const GridPoint& p : grid) {
    for (double gap : gaps) {
      if (!in_theorem_regime(p.num_arms, p.horizon)) {
        ++report.out_of_regime;
        continue;
      }
      const auto point = lemma2_point(p.num_arms, p.horizon, gap, vhat);
      if (!point || point->quota < 1) {
        ++report.out_of_regime;
        continue;
      }
      ++report.points;
      const double ratio = point->confidence / point->target;
      report.max_ratio = std::max(report.max_ratio, ratio);
      if (!(point->confidence < point->target)) ++report.violations;
    }
  }
  return report;
}

Lemma6Case lemma6_case(double c1, double c2, double variance, double gap,
                       std::int64_t horizon, std::size_t num_arms) {
  Lemma6Case c{c1, c2, variance, gap, horizon, num_arms};
  const double arg = static_cast<double>(horizon) * gap * gap / static_cast<double>(num_arms);
  const double factor = gap > 0.0 ? clamped_log(arg) / gap : 0.0;
  c.lhs_coefficient = c1 * (4.0 * variance + 4.0);
  c.rhs_coefficient = c2 * variance;
  c.lhs = c.lhs_coefficient * factor;
  c.rhs = c.rhs_coefficient * factor;
  c.precondition = 20.0 * c1 <= c2 && variance >= 0.0 && variance <= 0.25 && arg > 1.0;
  c.holds = c.lhs_coefficient <= c.rhs_coefficient;
  c.equality = c.lhs_coefficient == c.rhs_coefficient;
  return c;
}

Lemma6Report verify_lemma6(std::span<const Lemma6Case> inputs) {
  Lemma6Report report;
  for (const Lemma6Case& in : inputs) {
    Lemma6Case c = lemma6_case(in.c1, in.c2, in.variance, in.gap, in.horizon, in.num_arms);
    if (c.precondition && !c.holds) ++report.violations;
    if (c.equality) ++report.equalities;
    report.cases.push_back(c);
  }
  return report;
}

std::vector<Lemma6Case> lemma6_default_cases() {
  std::vector<Lemma6Case> cases;
  const auto add = [&](double c1, double c2, double variance) {
    Lemma6Case c;
    c.c1 = c1;
    c.c2 = c2;
    c.variance = variance;
    c.gap = 0.1;
    c.horizon = 100000;
    c.num_arms = 10;
    cases.push_back(c);
  };
  for (double c2 : {20.0, 40.0})
    for (double variance : {0.0, 0.05, 0.1, 1.0 / 9.0, 0.15, 0.2, 0.25}) add(1.0, c2, variance);
  return cases;
}

BernsteinTailReport check_bernstein_tail(const ArmModel& arm, std::int64_t pulls,
                                         double epsilon, double psi, std::int64_t horizon,
                                         double rho, std::size_t samples, RngStream& rng) {
  if (pulls < 1) throw std::invalid_argument("bernstein: pulls must be >= 1");
  if (samples < 1) throw std::invalid_argument("bernstein: samples must be >= 1");

  BernsteinTailReport r;
  r.samples = samples;
  const double log_term = clamped_log(psi * static_cast<double>(horizon) * epsilon);
  const double z = static_cast<double>(pulls);
  const double sigma2 = arm.variance();
  const double root_eps = std::sqrt(epsilon);
  r.confidence = std::sqrt(rho * (sigma2 + root_eps + 2.0) * log_term / (4.0 * z));
  r.bound = 2.0 / std::pow(psi * static_cast<double>(horizon) * epsilon, 1.5 * rho);

  std::size_t radius_hits = 0;
  std::size_t variance_hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    ArmStats stats;
    for (std::int64_t j = 0; j < pulls; ++j) stats.record(sample_reward(arm, rng));
    const double mean = mean_estimate(stats);
    const double vhat = variance_estimate(stats);
    if (mean > arm.mean() + r.confidence) ++r.exceedances;
    const double radius = std::sqrt(rho * (vhat + 2.0) * log_term / (4.0 * z));
    if (mean > arm.mean() + radius) ++radius_hits;
    if (vhat >= sigma2 + root_eps) ++variance_hits;
  }
  const double n = static_cast<double>(samples);
  r.frequency = static_cast<double>(r.exceedances) / n;
  r.empirical_radius_frequency = static_cast<double>(radius_hits) / n;
  r.variance_frequency = static_cast<double>(variance_hits) / n;
  r.standard_error = std::sqrt(r.bound * (1.0 - r.bound) / n);
  r.passed = r.frequency <= r.bound + 3.0 * r.standard_error;
  return r;
}

}  // namespace bandit
