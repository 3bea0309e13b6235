#pragma once

// Experiment drivers. Every cell (problem x dimension x seed x variant) gets
// its own seed derived from its identity, so any subset of cells reproduces
// the same per-cell numbers as the full run.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sdfo/config.hpp"
#include "sdfo/metrics.hpp"
#include "sdfo/problems.hpp"

namespace sdfo {

inline constexpr std::string_view kVersion = "0.1.0";

struct ResultBundle {
  std::string output_dir;
  std::map<std::string, std::string> files;  // file name -> contents
  nlohmann::json manifest;

  const std::string& file(const std::string& name) const;
};

std::uint64_t cell_seed(std::string_view problem, int dim, std::string_view tag, std::uint64_t seed);

/// Runs fn(0..count-1) on up to `threads` workers. The first exception is
/// rethrown after all workers stop.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

/// Problem instances selected by a config, by increasing dimension, then in
/// catalog order.
std::vector<TestProblem> select_problems(const ExperimentConfig& cfg);

/// Shared data for the approximation experiments: (n+1)(n+2)/2 training and
/// ceil of one fifth as many test points, uniform in B(x0; 1).
struct ApproxSample {
  std::vector<Vector> train_x;
  std::vector<double> train_f;
  std::vector<Vector> test_x;
  std::vector<double> test_f;
};
ApproxSample make_approx_sample(const TestProblem& p, std::uint64_t seed);

/// Column labels "1".."12": natural, tilde-cross x5, hat-diagonal x5, RBF.
const std::vector<std::string>& basis_labels();
std::string basis_description(int label);

using ProgressFn = std::function<void(std::string_view)>;

/// Runs the configured experiment and collects its CSV files in memory.
ResultBundle run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress = {});
/// Writes bundle files and manifest.json into bundle.output_dir.
void write_bundle(const ResultBundle& bundle);

/// Config stored in a manifest written by write_bundle.
ExperimentConfig config_from_manifest(const nlohmann::json& manifest);

/// Profile from a measures.csv table (instance, solver, split, tau, value).
std::vector<ProfileCurve> profile_from_measures(const std::string& measures_csv, double tau,
                                                const std::string& split);

}  // namespace sdfo
