#include <doctest.h>

#include <algorithm>

#include "sdfo/config.hpp"

using namespace sdfo;

namespace {

bool mentions(const ConfigError& e, const std::string& field) {
  for (const auto& s : e.issues())
    if (s.rfind(field + ":", 0) == 0) return true;
  return false;
}

std::vector<std::string> issues_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

bool has_issue(std::string_view text, const std::string& field) {
  const auto v = issues_of(text);
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.rfind(field + ":", 0) == 0; });
}

const char* kBase =
    "schema_version = 1\n"
    "experiment = E2_bases\n"
    "problem_set = SET38\n";

}  // namespace

TEST_CASE("minimal config with defaults") {
  const ExperimentConfig c = parse_config(std::string(kBase) + "dims = 20\n");
  CHECK(c.experiment == ExperimentKind::E2Bases);
  CHECK(c.problem_set == ProblemSetId::Set38);
  CHECK(c.dims == std::vector<int>{20});
  CHECK(c.taus == std::vector<double>{1e-2, 1e-5});
  CHECK(c.seeds == std::vector<std::uint64_t>{0});
  CHECK(c.solvers.size() == 6);
  CHECK(c.activations.size() == 5);
  CHECK(c.hessian_norm == MatrixNorm::Spectral);
}

TEST_CASE("full config") {
  const ExperimentConfig c = parse_config(
      "# comparison run\n"
      "schema_version = 1\n"
      "experiment = E4_fle_vs_fles   # trailing comment\n"
      "problem_set = SET38\n"
      "dims = 20, 40\n"
      "problems = ARWHEAD, TRIDIA\n"
      "taus = 1e-5\n"
      "seeds = 0, 1, 2\n"
      "output_dir = results/e4\n"
      "threads = 4\n"
      "solvers = fle, fles_rbf\n"
      "budget_factor = 50\n"
      "hessian_norm = frobenius\n");
  CHECK(c.dims == std::vector<int>{20, 40});
  CHECK(c.problems == std::vector<std::string>{"ARWHEAD", "TRIDIA"});
  CHECK(c.seeds.size() == 3);
  CHECK(c.output_dir == "results/e4");
  CHECK(c.threads == 4);
  CHECK(c.budget_factor == 50);
  CHECK(c.hessian_norm == MatrixNorm::Frobenius);
}

TEST_CASE("missing dimensions name the field") {
  try {
    parse_config(kBase);
    FAIL("accepted a scalable set without dims");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "dims"));
    CHECK(std::string(e.what()).find("dims") != std::string::npos);
  }
  // fixed-dimension set needs none
  CHECK_NOTHROW(parse_config("schema_version = 1\nexperiment = E4_fle_vs_fles\nproblem_set = SET53\n"));
}

TEST_CASE("invalid values are rejected") {
  const std::string b = std::string(kBase) + "dims = 20\n";
  CHECK(has_issue(b + "taus = 0\n", "taus"));
  CHECK(has_issue(b + "taus = 1e-2, 2\n", "taus"));
  CHECK(has_issue(b + "taus = -1\n", "taus"));
  CHECK(has_issue(b + "taus =\n", "taus"));
  CHECK(has_issue(b + "seeds = -1\n", "seeds"));
  CHECK(has_issue(b + "threads = 0\n", "threads"));
  CHECK(has_issue(b + "epochs = 0\n", "epochs"));
  CHECK(has_issue(b + "learning_rate = 0\n", "learning_rate"));
  CHECK(has_issue(b + "budget_factor = 0\n", "budget_factor"));
  CHECK(has_issue(b + "threads = two\n", "threads"));
  CHECK(has_issue(b + "problems = ROSENBROCK\n", "problems"));
  CHECK(has_issue(b + "solvers = newton\n", "solvers"));
  CHECK(has_issue(b + "activations = swish\n", "activations"));
  CHECK(has_issue(b + "hessian_norm = nuclear\n", "hessian_norm"));
  CHECK(has_issue(b + "standardize_targets = maybe\n", "standardize_targets"));
  CHECK(has_issue(b + "colour = blue\n", "colour"));
  CHECK(has_issue(b + "dims = 20\n", "dims"));  // duplicate
  CHECK(has_issue(std::string(kBase) + "dims = 1\n", "dims"));
  CHECK(has_issue("experiment = E2_bases\nproblem_set = SET38\ndims = 2\n", "schema_version"));
  CHECK(has_issue("schema_version = 2\nexperiment = E2_bases\nproblem_set = SET38\ndims = 2\n",
                  "schema_version"));
  CHECK(has_issue("schema_version = 1\nproblem_set = SET38\ndims = 2\n", "experiment"));
  CHECK(has_issue("schema_version = 1\nexperiment = E9\nproblem_set = SET38\ndims = 2\n", "experiment"));
  CHECK(has_issue("schema_version = 1\nexperiment = E2_bases\ndims = 2\n", "problem_set"));
  CHECK(has_issue(b + "E3\n", "line 5"));
  CHECK(has_issue("schema_version = 1\nexperiment = E3_nn_approx\nproblem_set = SET38\ndims = 20\nactivations = ,\n",
                  "activations"));
}

TEST_CASE("all issues are reported together") {
  const auto v = issues_of(std::string(kBase) + "dims = 20\ntaus = 0\nthreads = 0\n");
  CHECK(v.size() == 2);
}

TEST_CASE("normalized text round trips") {
  const ExperimentConfig c = parse_config(
      "schema_version=1\nexperiment=E1_activations\nproblem_set=SYNTHETIC\n"
      "dims=3,2\ntaus=0.1,1e-5\nseeds=4\nactivations=tanh,relu\nlearning_rate=0.003\n"
      "epochs=20\nstandardize_targets=false\n");
  const std::string text = normalize_config(c);
  CHECK(text.find("taus = 0.1, 1e-05\n") != std::string::npos);
  CHECK(text.find("activations = tanh, relu\n") != std::string::npos);
  const ExperimentConfig r = parse_config(text);
  CHECK(normalize_config(r) == text);
  CHECK(r.learning_rate == c.learning_rate);
  CHECK(r.standardize_targets == false);
  CHECK(config_hash(r) == config_hash(c));
}

TEST_CASE("config hash ignores threads and output directory only") {
  ExperimentConfig c = parse_config(std::string(kBase) + "dims = 20\n");
  const std::string h = config_hash(c);
  CHECK(h.size() == 16);
  c.threads = 8;
  c.output_dir = "elsewhere";
  CHECK(config_hash(c) == h);
  c.seeds = {1};
  CHECK(config_hash(c) != h);
}

TEST_CASE("experiment names") {
  for (auto k : {ExperimentKind::E1Activations, ExperimentKind::E2Bases, ExperimentKind::E3NnApprox,
                 ExperimentKind::E4FleVsFles})
    CHECK(parse_experiment(to_string(k)) == k);
  CHECK_THROWS(parse_experiment("E5"));
  CHECK_THROWS_AS(load_config("/nonexistent/config.cfg"), ConfigError);
}
