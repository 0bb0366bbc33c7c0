#pragma once

#include <cstdint>
#include <random>

namespace bandit {

// Reproducible random stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The conversions to uniform/normal/gamma variates are written out
// here rather than taken from <random>, because the standard distributions
// are implementation-defined and would break cross-platform golden outputs.
//
// Draw accounting (one draw = one engine call):
//   uniform()   1 draw, value in [0, 1) with 53 random bits
//   normal()    2 draws, Box-Muller cosine branch, the sine branch is discarded
//   gamma(a)    variable (Marsaglia-Tsang rejection)
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  // Uniform on (0, 1].
  double uniform_open_zero() { return 1.0 - uniform(); }
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  double gamma(double shape);
  double beta(double a, double b);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

// Seed of the stream for (master_seed, index, lane). Fixed formula:
//   mix64(mix64(master_seed ^ 0x9E3779B97F4A7C15) + index * 0xD1B54A32D192ED03
//         + lane * 0x8CB92BA72F3D8DD7)
// Lane 0 carries environment rewards, lane 1 the policy's own randomness,
// lane 2 is reserved for environment construction.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index,
                          std::uint64_t lane);

enum class StreamLane : std::uint64_t { kRewards = 0, kPolicy = 1, kEnvironment = 2 };

// Reward stream of replication `run_index`. Depends only on
// (master_seed, run_index), never on how many runs were requested.
RngStream derive_run_stream(std::uint64_t master_seed, std::uint64_t run_index);
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t run_index,
                        StreamLane lane);

}  // namespace bandit
