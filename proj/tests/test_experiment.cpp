#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sdfo/csv.hpp"
#include "sdfo/experiment.hpp"

using namespace sdfo;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small(ExperimentKind k, ProblemSetId set, std::vector<int> dims) {
  ExperimentConfig c;
  c.experiment = k;
  c.problem_set = set;
  c.dims = std::move(dims);
  c.epochs = 15;
  return c;
}

std::vector<std::vector<std::string>> rows_for(const CsvTable& t, const std::string& problem) {
  std::vector<std::vector<std::string>> out;
  const auto c = t.column("problem");
  for (const auto& r : t.rows)
    if (r[c] == problem) out.push_back(r);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cell seeds depend on every field") {
  const auto s = cell_seed("ARWHEAD", 20, "sample", 0);
  CHECK(s == cell_seed("ARWHEAD", 20, "sample", 0));
  std::set<std::uint64_t> all{s, cell_seed("ARWHEAD", 40, "sample", 0),
                              cell_seed("ARWHEAD", 20, "train", 0), cell_seed("ARWHEAD", 20, "sample", 1),
                              cell_seed("TRIDIA", 20, "sample", 0)};
  CHECK(all.size() == 5);
}

TEST_CASE("parallel_for visits each index once and rethrows") {
  for (int threads : {1, 3, 16}) {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, threads, [&](int i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, threads,
                                 [](int i) {
                                   if (i == 7) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
  }
  CHECK_NOTHROW(parallel_for(0, 4, [](int) {}));
}

TEST_CASE("problem selection") {
  ExperimentConfig c = small(ExperimentKind::E2Bases, ProblemSetId::Set38, {40, 20});
  const auto all = select_problems(c);
  REQUIRE(all.size() == 2 * problem_names(ProblemSetId::Set38).size());
  CHECK(all.front().dim() == 20);
  CHECK(all.back().dim() == 40);
  c.problems = {"TRIDIA", "ARWHEAD"};
  const auto some = select_problems(c);
  REQUIRE(some.size() == 4);
  CHECK(some[0].name() == "ARWHEAD");
  CHECK(some[1].name() == "TRIDIA");
  ExperimentConfig d = small(ExperimentKind::E4FleVsFles, ProblemSetId::Set53, {7});
  CHECK(select_problems(d).size() == problem_names(ProblemSetId::Set53).size());
}

TEST_CASE("approximation samples") {
  const auto p = find_problem("TRIDIA", 5);
  const ApproxSample s = make_approx_sample(p, 3);
  CHECK(s.train_x.size() == 21);
  CHECK(s.test_x.size() == 5);
  for (const auto& x : s.train_x) CHECK((x - p.x0()).norm() <= 1.0);
  CHECK(s.train_f[2] == p.evaluate(s.train_x[2]));
  CHECK(make_approx_sample(p, 3).train_x == s.train_x);
  CHECK(basis_labels().size() == 12);
  CHECK(basis_description(1) == "natural");
  CHECK(basis_description(10) == "hat_diagonal_sigmoid");
  CHECK(basis_description(12) == "rbf_gaussian");
  CHECK_THROWS(basis_description(13));
}

TEST_CASE("basis comparison on quadratics") {
  ExperimentConfig c = small(ExperimentKind::E2Bases, ProblemSetId::Synthetic, {3});
  c.seeds = {0, 1};
  const ResultBundle b = run_experiment(c);
  const CsvTable m = parse_csv(b.file("metrics.csv"));
  CHECK(m.header == std::vector<std::string>{"problem", "dim", "seed", "basis_label", "value_err",
                                             "grad_err", "hess_err", "status"});
  CHECK(m.rows.size() == 4 * 2 * 12);
  int natural = 0;
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    if (m.at(r, "basis_label") != "1") continue;
    ++natural;
    REQUIRE(m.at(r, "status") == "ok");
    CHECK(parse_double(m.at(r, "value_err")) <= 1e-6);
    CHECK(parse_double(m.at(r, "grad_err")) <= 1e-6);
    CHECK(parse_double(m.at(r, "hess_err")) <= 1e-6);
  }
  CHECK(natural == 8);
  const CsvTable box = parse_csv(b.file("box.csv"));
  CHECK(box.header == std::vector<std::string>{"basis_label", "metric", "value"});
  std::set<std::string> metrics;
  for (const auto& r : box.rows) metrics.insert(r[1]);
  CHECK(metrics == std::set<std::string>{"value", "gradient", "hessian"});
  CHECK(parse_csv(b.file("boxstats.csv")).rows.size() == 36);
  CHECK(parse_csv(b.file("basis_labels.csv")).rows.size() == 12);
  CHECK(b.manifest.at("files").size() == b.files.size());
}

TEST_CASE("solver comparison with a single solver") {
  ExperimentConfig c = small(ExperimentKind::E4FleVsFles, ProblemSetId::Synthetic, {4});
  c.solvers = {"fle"};
  c.taus = {1e-3};
  const ResultBundle b = run_experiment(c);
  const CsvTable prof = parse_csv(b.file("profile_tau0.001.csv"));
  CHECK(prof.header == std::vector<std::string>{"solver", "alpha", "rho"});
  REQUIRE(prof.rows.size() == 1);
  CHECK(prof.at(0, "solver") == "fle");
  CHECK(parse_double(prof.at(0, "alpha")) == 1.0);
  CHECK(parse_double(prof.at(0, "rho")) == 1.0);
  const auto meta = nlohmann::json::parse(b.file("runs_meta.json"));
  CHECK(meta.size() == 4);
  CHECK(meta[0].at("budget") == 500);
}

TEST_CASE("solver comparison: threads and subsets do not change results") {
  ExperimentConfig c = small(ExperimentKind::E4FleVsFles, ProblemSetId::Set38, {5});
  c.problems = {"ARWHEAD", "ENGVAL1", "TRIDIA"};
  c.budget_factor = 20;
  c.seeds = {0, 1};
  const ResultBundle one = run_experiment(c);
  c.threads = 4;
  const ResultBundle four = run_experiment(c);
  for (const auto& [name, text] : one.files) CHECK(four.file(name) == text);
  CHECK(one.manifest.at("config_hash") == four.manifest.at("config_hash"));

  c.problems = {"ENGVAL1"};
  const ResultBundle sub = run_experiment(c);
  const CsvTable a = parse_csv(one.file("runs.csv")), s = parse_csv(sub.file("runs.csv"));
  const auto ra = rows_for(a, "ENGVAL1");
  CHECK(!ra.empty());
  CHECK(ra == s.rows);
}

TEST_CASE("approximation experiments share samples and are reproducible") {
  ExperimentConfig c = small(ExperimentKind::E3NnApprox, ProblemSetId::Synthetic, {2});
  c.activations = {ActivationKind::Tanh, ActivationKind::ReLU};
  c.problems = {"SPHERE", "QUAD_DIAG"};
  const ResultBundle a = run_experiment(c);
  c.threads = 3;
  const ResultBundle b = run_experiment(c);
  CHECK(a.file("metrics.csv") == b.file("metrics.csv"));
  const CsvTable m = parse_csv(a.file("metrics.csv"));
  CHECK(m.rows.size() == 2 * 2);
  std::set<std::string> labels;
  for (std::size_t r = 0; r < m.rows.size(); ++r) labels.insert(m.at(r, "basis_label"));
  CHECK(labels == std::set<std::string>{"tanh", "relu"});
}

TEST_CASE("activation comparison outputs") {
  ExperimentConfig c = small(ExperimentKind::E1Activations, ProblemSetId::Synthetic, {2});
  c.activations = {ActivationKind::SiLU, ActivationKind::Sigmoid};
  c.seeds = {0, 1, 2};
  c.taus = {0.5};
  const ResultBundle b = run_experiment(c);
  const CsvTable tr = parse_csv(b.file("traces.csv"));
  CHECK(tr.rows.size() == 4u * 3 * 2 * (15 + 1));
  const CsvTable ms = parse_csv(b.file("measures.csv"));
  CHECK(ms.rows.size() == 4u * 2 * 2);  // problems x activations x splits
  for (const char* f : {"profile_train_tau0.5.csv", "profile_test_tau0.5.csv", "iterations.csv"})
    CHECK(b.files.count(f) == 1);
  // the best activation at every instance reaches the target
  const auto curves = profile_from_measures(b.file("measures.csv"), 0.5, "train");
  REQUIRE(curves.size() == 2);
  CHECK(profile_at(curves[0], 1.0) + profile_at(curves[1], 1.0) >= 1.0);
  CHECK_THROWS(profile_from_measures(b.file("measures.csv"), 0.25, "train"));
}

TEST_CASE("manifest rerun is byte identical") {
  const fs::path dir = fs::temp_directory_path() / "sdfo_manifest_test";
  fs::remove_all(dir);
  ExperimentConfig c = small(ExperimentKind::E4FleVsFles, ProblemSetId::Synthetic, {3});
  c.output_dir = (dir / "first").string();
  c.solvers = {"fle", "fles_rbf", "fles_nn_silu"};
  c.budget_factor = 15;
  write_bundle(run_experiment(c));
  const auto manifest = nlohmann::json::parse(slurp(dir / "first" / "manifest.json"));
  ExperimentConfig again = config_from_manifest(manifest);
  again.output_dir = (dir / "second").string();
  const ResultBundle b = run_experiment(again);
  write_bundle(b);
  CHECK(b.manifest.at("files") == manifest.at("files"));
  for (const auto& [name, text] : b.files) CHECK(slurp(dir / "first" / name) == text);

  auto bad = manifest;
  bad["config_hash"] = "0000000000000000";
  CHECK_THROWS_AS(config_from_manifest(bad), ConfigError);
  fs::remove_all(dir);
}
