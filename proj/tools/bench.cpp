#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdfo/config.hpp"
#include "sdfo/csv.hpp"
#include "sdfo/experiment.hpp"
#include "sdfo/metrics.hpp"
#include "sdfo/problems.hpp"

using namespace sdfo;

namespace {

int fail(const std::string& kind, const std::string& message,
         const std::vector<std::string>& issues = {}) {
  nlohmann::json e = {{"status", "error"}, {"error", kind}, {"message", message}};
  if (!issues.empty()) e["issues"] = issues;
  std::cerr << e.dump() << "\n";
  return kind == "config" ? 2 : 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json problem_json(const TestProblem& p) {
  std::vector<double> x0(p.x0().data(), p.x0().data() + p.dim());
  nlohmann::json j = {{"name", p.name()}, {"dim", p.dim()}, {"x0", x0}};
  if (p.known_minimum()) j["known_minimum"] = *p.known_minimum();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surrogate-model and derivative-free optimization benchmarks"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run an experiment from a config or manifest");
  std::string config_path, manifest_path, output_dir;
  int threads = 0;
  bool quiet = false;
  auto* cfg_opt = run_cmd->add_option("--config", config_path, "Experiment config file");
  run_cmd->add_option("--manifest", manifest_path, "Re-run from a manifest.json")
      ->excludes(cfg_opt);
  run_cmd->add_option("--output", output_dir, "Override the output directory");
  run_cmd->add_option("--threads", threads, "Override the worker count");
  run_cmd->add_flag("--quiet", quiet, "No progress output");

  auto* val_cmd = app.add_subcommand("validate", "Check a config and print its normalized form");
  std::string val_path;
  val_cmd->add_option("--config", val_path, "Experiment config file")->required();

  auto* list_cmd = app.add_subcommand("list-problems", "List test problems");
  std::string set_name, problem_name;
  int dim = 0;
  bool as_json = false;
  list_cmd->add_option("--set", set_name, "SET38, SET53 or SYNTHETIC");
  list_cmd->add_option("--problem", problem_name, "Single problem by name");
  list_cmd->add_option("--dim", dim, "Dimension for scalable problems");
  list_cmd->add_flag("--json", as_json, "Machine-readable catalog with x0");

  auto* prof_cmd = app.add_subcommand("profile", "Performance profile from measures.csv");
  std::string from_dir, split, out_path;
  double tau = 0.0;
  prof_cmd->add_option("--from", from_dir, "Experiment output directory")->required();
  prof_cmd->add_option("--tau", tau, "Convergence tolerance")->required();
  prof_cmd->add_option("--split", split, "train or test (E1); default: the only split present");
  prof_cmd->add_option("--out", out_path, "Write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what());
  }

  try {
    if (*run_cmd) {
      ExperimentConfig cfg;
      if (!manifest_path.empty())
        cfg = config_from_manifest(nlohmann::json::parse(read_file(manifest_path)));
      else if (!config_path.empty())
        cfg = load_config(config_path);
      else
        return fail("usage", "run needs --config or --manifest");
      if (!output_dir.empty()) cfg.output_dir = output_dir;
      if (threads > 0) cfg.threads = threads;
      ProgressFn progress;
      if (!quiet) progress = [](std::string_view msg) { std::cerr << msg << "\n"; };
      const ResultBundle b = run_experiment(cfg, progress);
      write_bundle(b);
      nlohmann::json summary = {{"status", "ok"},
                                {"output_dir", b.output_dir},
                                {"config_hash", b.manifest["config_hash"]},
                                {"wall_time_s", b.manifest["wall_time_s"]},
                                {"files", b.manifest["files"]}};
      std::cout << summary.dump(2) << "\n";
    } else if (*val_cmd) {
      const ExperimentConfig cfg = load_config(val_path);
      std::cout << normalize_config(cfg);
    } else if (*list_cmd) {
      std::vector<TestProblem> probs;
      std::optional<int> n;
      if (dim > 0) n = dim;
      if (!problem_name.empty()) {
        probs.push_back(find_problem(problem_name, n));
      } else {
        std::vector<ProblemSetId> sets{ProblemSetId::Set38, ProblemSetId::Set53,
                                       ProblemSetId::Synthetic};
        if (!set_name.empty()) sets = {parse_problem_set(set_name)};
        for (auto s : sets) {
          std::optional<int> d = n;
          if (s != ProblemSetId::Set53 && !d) d = 20;
          for (auto& p : catalog(s, d)) probs.push_back(std::move(p));
        }
      }
      if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : probs) arr.push_back(problem_json(p));
        std::cout << arr.dump(1) << "\n";
      } else {
        for (const auto& p : probs) std::cout << p.name() << " " << p.dim() << "\n";
      }
    } else if (*prof_cmd) {
      const std::string measures = read_file(from_dir + "/measures.csv");
      if (split.empty()) {
        const CsvTable t = parse_csv(measures);
        const auto c = t.column("split");
        for (const auto& r : t.rows) {
          if (split.empty()) split = r[c];
          if (r[c] != split) return fail("usage", "several splits present; pass --split");
        }
      }
      std::ostringstream os;
      write_profile_csv(os, profile_from_measures(measures, tau, split));
      if (out_path.empty()) {
        std::cout << os.str();
      } else {
        std::ofstream f(out_path, std::ios::binary);
        f << os.str();
        if (!f) return fail("io", "cannot write '" + out_path + "'");
      }
    }
  } catch (const ConfigError& e) {
    return fail("config", e.what(), e.issues());
  } catch (const std::exception& e) {
    return fail("runtime", e.what());
  }
  return 0;
}
