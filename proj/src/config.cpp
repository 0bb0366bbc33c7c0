#include "bandit/config.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "bandit/rng.hpp"

namespace bandit {
namespace {

using Kind = ConfigError::Kind;

constexpr std::array<std::string_view, 4> kPresetIds = {"expt1", "expt2", "expt3", "expt4"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& field, const std::string& what) {
  throw ConfigError(Kind::kParse, "line " + std::to_string(line) + ": " + what, line, field);
}

double to_double(std::string_view token, std::size_t line, const std::string& field) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    parse_fail(line, field, "'" + std::string(token) + "' is not a number for " + field);
  return value;
}

// Accepts "60000" as well as "6e4"; the value must be a non-negative integer.
std::uint64_t to_count(std::string_view token, std::size_t line, const std::string& field) {
  std::uint64_t exact = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, exact);
  if (ec == std::errc() && ptr == end) return exact;
  const double value = to_double(token, line, field);
  if (value < 0.0 || value != std::floor(value) || value >= 0x1p63)
    parse_fail(line, field, field + " must be a non-negative integer, got '" +
                                std::string(token) + "'");
  return static_cast<std::uint64_t>(value);
}

ArmGroup parse_arm(std::string_view value, std::size_t line) {
  const std::string field = "environment.arm";
  auto tokens = split_ws(value);
  if (tokens.size() < 2)
    parse_fail(line, field, "arm needs '<bernoulli|gaussian> <mean> [variance] [xN]'");

  ArmGroup g;
  if (tokens.back().size() > 1 && tokens.back().front() == 'x') {
    const auto count = to_count(tokens.back().substr(1), line, field + " count");
    if (count == 0) parse_fail(line, field, "arm count must be >= 1");
    g.count = static_cast<std::size_t>(count);
    tokens.pop_back();
  }

  if (tokens[0] == "bernoulli") {
    if (tokens.size() != 2) parse_fail(line, field, "bernoulli arm takes only a mean");
    g.kind = ArmKind::kBernoulli;
    g.mean = to_double(tokens[1], line, field + " mean");
    g.variance_lo = g.variance_hi = g.mean * (1.0 - g.mean);
    return g;
  }
  if (tokens[0] == "gaussian") {
    if (tokens.size() != 3) parse_fail(line, field, "gaussian arm needs a mean and a variance");
    g.kind = ArmKind::kGaussian;
    g.mean = to_double(tokens[1], line, field + " mean");
    const std::string_view var = tokens[2];
    if (const auto dots = var.find(".."); dots != std::string_view::npos) {
      g.variance_lo = to_double(var.substr(0, dots), line, field + " variance");
      g.variance_hi = to_double(var.substr(dots + 2), line, field + " variance");
      if (g.variance_lo > g.variance_hi)
        parse_fail(line, field, "variance range must be ascending");
    } else {
      g.variance_lo = g.variance_hi = to_double(var, line, field + " variance");
    }
    return g;
  }
  parse_fail(line, field, "unknown arm kind '" + std::string(tokens[0]) + "'");
}

std::vector<PolicySpec> roster(std::initializer_list<std::string_view> ids) {
  std::vector<PolicySpec> out;
  for (std::string_view id : ids) out.push_back({std::string(id), {}});
  return out;
}

ArmGroup bern(double mean, std::size_t count) {
  return {ArmKind::kBernoulli, mean, mean * (1.0 - mean), mean * (1.0 - mean), count};
}

ArmGroup gauss(double mean, double lo, double hi, std::size_t count) {
  return {ArmKind::kGaussian, mean, lo, hi, count};
}

}  // namespace

ConfigError::ConfigError(Kind kind, std::string message, std::size_t line, std::string field)
    : std::runtime_error(std::move(message)), kind_(kind), line_(line), field_(std::move(field)) {}

std::size_t ExperimentSpec::num_arms() const {
  std::size_t k = 0;
  for (const ArmGroup& g : arms) k += g.count;
  return k;
}

std::span<const std::string_view> preset_ids() { return kPresetIds; }

ExperimentSpec preset_spec(std::string_view id) {
  ExperimentSpec s;
  s.name = std::string(id);
  s.runs = 100;
  if (id == "expt1") {
    s.horizon = 60000;
    s.arms = {bern(0.07, 19), bern(0.1, 1)};
    s.policies = roster({"ucbv", "eucbv", "klucb-plus", "moss", "dmed", "ucb1", "ts-beta",
                         "ocucb", "bayes-ucb"});
  } else if (id == "expt2") {
    s.horizon = 300000;
    s.arms = {gauss(0.07, 0.01, 0.01, 66), gauss(0.01, 0.25, 0.25, 33),
              gauss(0.09, 0.25, 0.25, 1)};
    s.policies = roster({"ucbv", "eucbv", "klucb-plus-gauss", "moss", "ucb-improved", "ucb1",
                         "ts-gauss", "ocucb", "bayes-ucb-gauss", "median-elim"});
  } else if (id == "expt3") {
    s.horizon = 400000;
    s.arms = {gauss(0.045, 0.01, 0.01, 10), gauss(0.04, 0.2, 0.24, 89),
              gauss(0.05, 0.25, 0.25, 1)};
    s.policies = roster({"ucbv", "eucbv", "moss", "ts-gauss", "ocucb", "bayes-ucb-gauss"});
  } else if (id == "expt4") {
    s.horizon = 400000;
    s.arms = {gauss(0.09, 0.0, 0.05, 49), gauss(0.09, 0.19, 0.24, 50),
              gauss(0.1, 0.25, 0.25, 1)};
    s.policies = roster({"ucbv", "eucbv", "moss", "ts-gauss", "ocucb", "bayes-ucb-gauss"});
  } else {
    throw ConfigError(Kind::kValidation, "unknown preset '" + std::string(id) +
                                             "' (expected expt1..expt4)", 0, "preset");
  }
  return s;
}

ExperimentSpec parse_config(std::string_view text) {
  ExperimentSpec spec;
  bool have_horizon = false;
  bool environment_seen = false;
  bool policies_seen = false;
  std::vector<ArmGroup> arms;
  std::vector<PolicySpec> policies;
  std::set<std::string, std::less<>> experiment_keys;

  enum class Section { kNone, kExperiment, kEnvironment, kPolicy };
  Section section = Section::kNone;
  std::set<std::string, std::less<>> sections_seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = raw.find_first_of("#;"); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(line_no, "section", "unterminated section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!sections_seen.insert(name).second)
        parse_fail(line_no, name, "duplicate section [" + name + "]");
      if (name == "experiment") {
        section = Section::kExperiment;
      } else if (name == "environment") {
        section = Section::kEnvironment;
        environment_seen = true;
      } else if (name.starts_with("policy.")) {
        section = Section::kPolicy;
        policies_seen = true;
        PolicySpec p{name.substr(7), {}};
        try {
          policy_parameters(p.id);
        } catch (const std::invalid_argument&) {
          parse_fail(line_no, name, "unknown policy '" + p.id + "'");
        }
        policies.push_back(std::move(p));
      } else {
        parse_fail(line_no, name, "unknown section [" + name + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail(line_no, "", "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) parse_fail(line_no, "", "missing key before '='");

    switch (section) {
      case Section::kNone:
        parse_fail(line_no, key, "key '" + key + "' outside of any section");
      case Section::kExperiment: {
        const std::string field = "experiment." + key;
        if (!experiment_keys.insert(key).second)
          parse_fail(line_no, field, "duplicate key " + field);
        if (key == "name") {
          spec.name = std::string(value);
        } else if (key == "preset") {
          if (experiment_keys.size() != 1 && !(experiment_keys.size() == 2 &&
                                               experiment_keys.contains("name")))
            parse_fail(line_no, field, "preset must precede the other experiment keys");
          try {
            ExperimentSpec base = preset_spec(value);
            if (!spec.name.empty()) base.name = spec.name;
            spec = std::move(base);
            have_horizon = true;
          } catch (const ConfigError& e) {
            parse_fail(line_no, field, e.what());
          }
        } else if (key == "horizon") {
          spec.horizon = static_cast<std::int64_t>(to_count(value, line_no, field));
          have_horizon = true;
        } else if (key == "runs") {
          spec.runs = static_cast<std::size_t>(to_count(value, line_no, field));
        } else if (key == "seed") {
          spec.master_seed = to_count(value, line_no, field);
        } else if (key == "env_seed") {
          spec.env_seed = to_count(value, line_no, field);
        } else if (key == "checkpoints") {
          spec.checkpoints = static_cast<std::size_t>(to_count(value, line_no, field));
        } else {
          parse_fail(line_no, field, "unknown key " + field);
        }
        break;
      }
      case Section::kEnvironment:
        if (key != "arm") parse_fail(line_no, "environment." + key, "unknown key environment." + key);
        arms.push_back(parse_arm(value, line_no));
        break;
      case Section::kPolicy: {
        PolicySpec& p = policies.back();
        const std::string field = "policy." + p.id + "." + key;
        bool known = false;
        for (std::string_view allowed : policy_parameters(p.id)) known |= allowed == key;
        if (!known) parse_fail(line_no, field, "unknown parameter " + field);
        if (p.params.contains(key)) parse_fail(line_no, field, "duplicate key " + field);
        p.params[key] = to_double(value, line_no, field);
        break;
      }
    }
  }

  if (environment_seen) spec.arms = std::move(arms);
  if (policies_seen) spec.policies = std::move(policies);
  if (!have_horizon) throw ConfigError(Kind::kValidation, "experiment.horizon is required", 0,
                                       "experiment.horizon");
  if (spec.name.empty()) spec.name = "experiment";
  validate_spec(spec);
  return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void validate_spec(const ExperimentSpec& spec) {
  const auto fail = [](const std::string& field, const std::string& what) {
    throw ConfigError(Kind::kValidation, field + ": " + what, 0, field);
  };
  for (char c : spec.name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
      fail("experiment.name", "only letters, digits, '-', '_' and '.' are allowed");
  if (spec.name.empty()) fail("experiment.name", "must not be empty");
  const std::size_t k = spec.num_arms();
  if (k < 2) fail("environment.arm", "at least two arms are required");
  for (const ArmGroup& g : spec.arms) {
    if (g.count < 1) fail("environment.arm", "arm count must be >= 1");
    if (g.kind == ArmKind::kBernoulli && !(g.mean >= 0.0 && g.mean <= 1.0))
      fail("environment.arm", "bernoulli mean must lie in [0, 1]");
    if (g.variance_lo < 0.0) fail("environment.arm", "variance must be >= 0");
  }
  if (spec.horizon < static_cast<std::int64_t>(k))
    fail("experiment.horizon", "must be >= number of arms (" + std::to_string(k) + ")");
  if (spec.runs < 1) fail("experiment.runs", "must be >= 1");
  if (spec.policies.empty()) fail("policy", "at least one policy is required");
  std::set<std::string, std::less<>> ids;
  for (const PolicySpec& p : spec.policies) {
    if (!ids.insert(p.id).second) fail("policy." + p.id, "listed twice");
    try {
      validate_policy_spec(p);
    } catch (const std::invalid_argument& e) {
      fail("policy." + p.id, e.what());
    }
  }
}

Environment build_environment(const ExperimentSpec& spec) {
  RngStream rng = derive_stream(spec.env_seed, 0, StreamLane::kEnvironment);
  std::vector<ArmModel> arms;
  arms.reserve(spec.num_arms());
  for (const ArmGroup& g : spec.arms) {
    for (std::size_t j = 0; j < g.count; ++j) {
      if (g.kind == ArmKind::kBernoulli) {
        arms.push_back(ArmModel::bernoulli(g.mean));
        continue;
      }
      double variance = g.variance_lo;
      if (g.randomized()) variance += (g.variance_hi - g.variance_lo) * rng.uniform();
      arms.push_back(ArmModel::gaussian(g.mean, variance));
    }
  }
  return Environment(std::move(arms));
}

}  // namespace bandit
