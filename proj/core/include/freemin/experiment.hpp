#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freemin/descent.hpp"
#include "freemin/divergence.hpp"

namespace freemin {

struct PotentialSpec {
  enum class Kind { zero, sine };
  Kind kind = Kind::zero;
  double frequency = 0.0;
  double amplitude = 0.0;
  bool operator==(const PotentialSpec&) const = default;
};

struct MeasureSpec {
  enum class Kind { uniform, power };
  Kind kind = Kind::uniform;
  double exponent = 0.0;
  bool operator==(const MeasureSpec&) const = default;
};

struct KernelSpec {
  enum class Kind { zero, log, tridiagonal };
  Kind kind = Kind::zero;
  double scale = 0.0;
  double epsilon = 0.0;
  double alpha = 0.0;
  bool operator==(const KernelSpec&) const = default;
};

/// One experiment, as read from a flat key-value config file.
struct ExperimentConfig {
  std::string name;
  DivergenceKind divergence = DivergenceKind::kl;
  bool shifted_metric = false;
  int n = 0;
  bool periodic = false;
  PotentialSpec potential;
  MeasureSpec mu;
  KernelSpec kernel;
  double dt = 1.0;
  int iterations = 0;
  std::uint64_t seed = 0;
  std::string output_dir = "./out";
  bool operator==(const ExperimentConfig&) const = default;
};

/// Parse the `key = value` config grammar (one pair per line, `#` starts a
/// comment). Unknown or duplicate keys and missing required keys raise
/// ConfigError with the offending line; invariant violations name the
/// invariant. Only output_dir is optional.
ExperimentConfig parse_config(const std::string& text);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Instantiate grid, measure, potential, and kernel per the config.
ProblemSpec build_problem(const ExperimentConfig& config);

/// The seeded starting density for the config.
Density initial_density(const ExperimentConfig& config);

/// Run the experiment and write <name>_trace.csv, <name>_final.txt and
/// <name>_meta.txt into output_dir. Returns the process exit status:
/// 0 success, 2 config error, 3 solver failure, 4 I/O failure; failures
/// also print a message to stderr.
int run_experiment(const ExperimentConfig& config);

/// Names of the six experiments shipped with the tool.
const std::vector<std::string>& preset_names();

/// Config text for a shipped preset; throws ConfigError for unknown names.
const std::string& preset_text(const std::string& name);

/// Human-readable table of the shipped presets, one line each.
std::string list_presets();

}  // namespace freemin
