#pragma once

// Subcommands behind the banditsim executable. Each returns a process exit
// code; data goes to files, progress and diagnostics to `log`.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "bandit/bounds.hpp"

namespace bandit {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitParse = 3,
  kExitValidation = 4,
  kExitRuntime = 5,
};

struct RunRequest {
  std::optional<std::filesystem::path> config;
  std::optional<std::string> preset;
  std::optional<std::size_t> runs;
  std::optional<std::int64_t> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> checkpoints;
  std::filesystem::path out_dir = "results";
  std::size_t threads = 1;
};

// Writes <out>/<name>_curves.csv and <out>/<name>_summary.csv.
int cmd_run(const RunRequest& req, std::ostream& log);

struct BoundsRequest {
  std::optional<std::size_t> num_arms;
  std::optional<std::int64_t> horizon;
  std::optional<double> delta;         // uniform gap of the K-1 sub-optimal arms
  std::optional<std::string> preset;   // arms (and default K, T) from a preset
  double sigma2 = 0.25;                // variance of every arm in --delta mode
  std::optional<double> b;
  double c0 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;
  std::filesystem::path out_dir = "results";
};

// Writes <out>/bounds.csv, <out>/theorem.csv and <out>/lemmas.txt.
int cmd_bounds(const BoundsRequest& req, std::ostream& log);

struct LemmaRequest {
  GridSize grid = GridSize::kSmall;
  std::optional<std::filesystem::path> out_dir;
};

// Prints the lemma report; also writes <out>/lemmas.txt when out_dir is set.
// Exit code is non-zero when Lemma 1 or Lemma 2 has a violation.
int cmd_verify_lemmas(const LemmaRequest& req, std::ostream& log);

}  // namespace bandit
