#pragma once

// Experiment configuration: a `key = value` text file with an explicit
// schema version. Lists are comma separated; '#' starts a comment.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdfo/activation.hpp"
#include "sdfo/metrics.hpp"
#include "sdfo/problems.hpp"

namespace sdfo {

enum class ExperimentKind { E1Activations, E2Bases, E3NnApprox, E4FleVsFles };

std::string_view to_string(ExperimentKind k);
ExperimentKind parse_experiment(std::string_view text);

struct ExperimentConfig {
  int schema_version = 1;
  ExperimentKind experiment = ExperimentKind::E2Bases;
  ProblemSetId problem_set = ProblemSetId::Set38;
  std::vector<int> dims;
  std::vector<std::string> problems;  // empty: whole set
  std::vector<double> taus{1e-2, 1e-5};
  std::vector<std::uint64_t> seeds{0};
  std::string output_dir = "out";
  int threads = 1;
  // network training (E1, E3)
  int epochs = 300;
  double learning_rate = 1e-3;
  bool standardize_targets = true;
  // Hessian error norm (E2, E3)
  MatrixNorm hessian_norm = MatrixNorm::Spectral;
  std::vector<ActivationKind> activations{kAllActivations.begin(), kAllActivations.end()};
  // optimizer comparison (E4)
  std::vector<std::string> solvers{"fle",          "fles_natural", "fles_hat_sigmoid",
                                   "fles_rbf",     "fles_nn_relu", "fles_nn_silu"};
  int budget_factor = 100;  // budget = budget_factor * (n + 1)
};

/// Thrown with every problem found in a config, one per line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
/// Checks cross-field requirements; throws ConfigError naming the fields.
void validate_config(const ExperimentConfig& cfg);
/// Canonical text: fixed key order, shortest round-trip numbers.
std::string normalize_config(const ExperimentConfig& cfg);
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace sdfo
