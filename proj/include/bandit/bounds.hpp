#pragma once

// Regret bound calculators for EUCBV and the comparison table, plus numeric
// checks of the inequalities its analysis relies on. Constants the analysis
// leaves unnamed (C0, C2, C3) default to 1, so every value here holds only
// up to those constants.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bandit/env.hpp"
#include "bandit/rng.hpp"

namespace bandit {

struct BoundInputs {
  std::size_t num_arms = 0;
  std::int64_t horizon = 0;
  std::vector<double> gaps;
  std::vector<double> variances;
  double sigma_max_sq = 0.0;
  double b = 0.0;
  // Hardness sum_i 1/gap_i^2 and per-arm H_i = sum_j min(1/gap_i^2, 1/gap_j^2),
  // both over arms with a positive gap only (H_i = 0 for zero-gap arms).
  double h1 = 0.0;
  std::vector<double> hi;
};

// b defaults to sqrt(e / T). Throws std::invalid_argument when b < sqrt(e/T),
// when the lists differ in length, or K < 2.
BoundInputs make_bound_inputs(std::int64_t horizon, std::span<const double> gaps,
                              std::span<const double> variances,
                              std::optional<double> b = std::nullopt);
BoundInputs make_bound_inputs(const Environment& env, std::int64_t horizon,
                              std::optional<double> b = std::nullopt);

// 320 sigma^2 ln(T gap^2 / K) / gap, with the log clamped at 0.
double eucbv_dominant_term(std::int64_t horizon, std::size_t num_arms, double gap,
                           double variance);

// Gap-dependent EUCBV bound:
//   sum_{gap > b} [C0 K^4 / T^(1/4) + gap + dominant term]
//   + sum_{0 < gap <= b} C2 K^4 / T^(1/4) + max_{0 < gap <= b} gap T
// The analysis relates the constants as C0 = C1 + C2.
double eucbv_gap_dependent_bound(const BoundInputs& in, double c0 = 1.0, double c2 = 1.0);

// C3 K^5 / T^(1/4) + 80 sqrt(K T).
double gap_independent_bound(std::size_t num_arms, std::int64_t horizon, double c3 = 1.0);

struct BoundRow {
  std::string algorithm;
  std::string gap_dependent_form;
  double gap_dependent = 0.0;
  std::string gap_independent_form;
  double gap_independent = 0.0;
};

// Order-of-growth forms of the six compared algorithms with every constant set
// to 1. Gap = smallest positive gap; the OCUCB row uses H_i of that arm.
std::vector<BoundRow> comparison_table(const BoundInputs& in);

// ---------------------------------------------------------------------------
// Inequality checks. Regime: T >= K^2.4, psi = T / K^2, rho = 1/2.

enum class GridSize { kSmall, kFull };

struct GridPoint {
  std::size_t num_arms;
  std::int64_t horizon;
};

// K in {2, 4, 8, 16, 32, 64}, T log-spaced from ceil(K^2.4) to 1e7.
std::vector<GridPoint> lemma_grid(GridSize size);
std::vector<double> lemma2_gap_grid(GridSize size);

bool in_theorem_regime(std::size_t num_arms, std::int64_t horizon);

// rho m ln 2 / (ln(psi T) - 2 m ln 2).
double lemma1_ratio(std::size_t num_arms, std::int64_t horizon, int m, double rho = 0.5);

struct Lemma1Report {
  std::size_t points = 0;        // (K, T, m) triples evaluated
  std::size_t skipped = 0;       // (K, T) pairs outside T >= K^2.4
  std::size_t violations = 0;    // ratio > 3/2
  double max_ratio = 0.0;
  GridPoint worst{0, 0};
  int worst_m = 0;
};

Lemma1Report verify_lemma1(std::span<const GridPoint> grid);

struct Lemma2Point {
  int round = 0;              // m_i = min{m : sqrt(4 eps_m) < gap / 4}
  double epsilon = 0.0;
  std::int64_t quota = 0;     // n_{m_i}
  double confidence = 0.0;    // c_i with z = n_{m_i}
  double target = 0.0;        // gap / 4
};

// nullopt when no admissible round m_i <= M exists for this gap.
std::optional<Lemma2Point> lemma2_point(std::size_t num_arms, std::int64_t horizon, double gap,
                                        double vhat = 1.0, double rho = 0.5);

struct Lemma2Report {
  std::size_t points = 0;
  std::size_t out_of_regime = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  // confidence / target
};

Lemma2Report verify_lemma2(std::span<const GridPoint> grid, std::span<const double> gaps,
                           double vhat = 1.0);

struct Lemma6Case {
  double c1 = 0.0;
  double c2 = 0.0;
  double variance = 0.0;
  double gap = 0.0;
  std::int64_t horizon = 0;
  std::size_t num_arms = 0;
  // Coefficients after cancelling the common factor ln(T gap^2 / K) / gap.
  double lhs_coefficient = 0.0;  // c1 (4 sigma^2 + 4)
  double rhs_coefficient = 0.0;  // c2 sigma^2
  double lhs = 0.0;
  double rhs = 0.0;
  bool precondition = false;  // 20 c1 <= c2, sigma^2 in [0, 1/4], T gap^2 / K > 1
  bool holds = false;
  bool equality = false;
};

Lemma6Case lemma6_case(double c1, double c2, double variance, double gap,
                       std::int64_t horizon, std::size_t num_arms);

struct Lemma6Report {
  std::vector<Lemma6Case> cases;
  std::size_t violations = 0;  // precondition met but inequality fails
  std::size_t equalities = 0;
};

Lemma6Report verify_lemma6(std::span<const Lemma6Case> inputs);
std::vector<Lemma6Case> lemma6_default_cases();

struct BernsteinTailReport {
  double confidence = 0.0;  // c_bar with sigma^2 + sqrt(eps) in place of v
  double bound = 0.0;       // 2 / (psi T eps)^(3 rho / 2)
  std::size_t samples = 0;
  std::size_t exceedances = 0;
  double frequency = 0.0;       // P(r_hat > r + c_bar)
  double standard_error = 0.0;  // sqrt(bound (1 - bound) / samples)
  double empirical_radius_frequency = 0.0;  // same event with c_i built from v_hat
  double variance_frequency = 0.0;          // P(v_hat >= sigma^2 + sqrt(eps))
  bool passed = false;                      // frequency <= bound + 3 SE
};

// Draws `samples` independent batches of z rewards from `arm`.
BernsteinTailReport check_bernstein_tail(const ArmModel& arm, std::int64_t pulls,
                                         double epsilon, double psi, std::int64_t horizon,
                                         double rho, std::size_t samples, RngStream& rng);

}  // namespace bandit
