#pragma once

// Straight transcription of the EUCBV listing, kept independent of the
// library: rewards are stored per arm and every statistic is recomputed from
// scratch (two-pass variance) at every step.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace oracle {

struct Tapes {
  // tapes[i][k] is the reward of the (k+1)-th pull of arm i.
  std::vector<std::vector<double>> tapes;
};

struct ReferenceTrace {
  std::vector<std::size_t> arms;           // arm pulled at t = 1..T
  std::vector<std::int64_t> eliminated_at; // 0 if never eliminated
  std::vector<int> round_at;               // m after the pull at t
  std::vector<std::int64_t> pulls;
};

ReferenceTrace run_reference_eucbv(const Tapes& tapes, std::int64_t horizon,
                                   double rho = 0.5, double psi = 0.0 /* 0 = T/K^2 */);

// Two-pass (mean first, then squared deviations) population variance.
double two_pass_variance(const std::vector<double>& xs);

}  // namespace oracle
