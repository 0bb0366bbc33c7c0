#include "bandit/rng.hpp"

#include <cmath>
#include <numbers>

namespace bandit {

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u1 = uniform_open_zero();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::gamma(double shape) {
  if (shape < 1.0) {
    // Boost to shape + 1 and rescale by U^(1/shape).
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform_open_zero(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open_zero();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index,
                          std::uint64_t lane) {
  const std::uint64_t base = mix64(master_seed ^ 0x9E3779B97F4A7C15ULL);
  return mix64(base + index * 0xD1B54A32D192ED03ULL + lane * 0x8CB92BA72F3D8DD7ULL);
}

RngStream derive_run_stream(std::uint64_t master_seed, std::uint64_t run_index) {
  return derive_stream(master_seed, run_index, StreamLane::kRewards);
}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t run_index,
                        StreamLane lane) {
  return RngStream(
      derive_seed(master_seed, run_index, static_cast<std::uint64_t>(lane)));
}

}  // namespace bandit
