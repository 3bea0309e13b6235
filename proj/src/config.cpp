#include "sdfo/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "sdfo/optimizer.hpp"

namespace sdfo {

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::E1Activations:
      return "E1_activations";
    case ExperimentKind::E2Bases:
      return "E2_bases";
    case ExperimentKind::E3NnApprox:
      return "E3_nn_approx";
    case ExperimentKind::E4FleVsFles:
      return "E4_fle_vs_fles";
  }
  return "?";
}

ExperimentKind parse_experiment(std::string_view text) {
  for (auto k : {ExperimentKind::E1Activations, ExperimentKind::E2Bases, ExperimentKind::E3NnApprox,
                 ExperimentKind::E4FleVsFles})
    if (to_string(k) == text) return k;
  throw std::invalid_argument("unknown experiment '" + std::string(text) + "'");
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "\n" : "") + v[i];
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& s) {
  T v{};
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("not a boolean: '" + s + "'");
}

std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

template <class T, class F>
std::string join_list(const std::vector<T>& v, F f) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + f(v[i]);
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error("invalid config:\n" + join(issues)), issues_(std::move(issues)) {}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::vector<std::string> issues;
  std::map<std::string, std::string> seen;
  bool have_experiment = false, have_set = false;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string val = trim(std::string_view(line).substr(eq + 1));
    if (seen.count(key)) {
      issues.push_back(key + ": given twice");
      continue;
    }
    seen[key] = val;
    try {
      if (key == "schema_version") {
        cfg.schema_version = parse_number<int>(val);
      } else if (key == "experiment") {
        cfg.experiment = parse_experiment(val);
        have_experiment = true;
      } else if (key == "problem_set") {
        cfg.problem_set = parse_problem_set(val);
        have_set = true;
      } else if (key == "dims") {
        cfg.dims.clear();
        for (auto& s : split_list(val)) cfg.dims.push_back(parse_number<int>(s));
      } else if (key == "problems") {
        cfg.problems = split_list(val);
      } else if (key == "taus") {
        cfg.taus.clear();
        for (auto& s : split_list(val)) cfg.taus.push_back(parse_number<double>(s));
      } else if (key == "seeds") {
        cfg.seeds.clear();
        for (auto& s : split_list(val)) cfg.seeds.push_back(parse_number<std::uint64_t>(s));
      } else if (key == "output_dir") {
        cfg.output_dir = val;
      } else if (key == "threads") {
        cfg.threads = parse_number<int>(val);
      } else if (key == "epochs") {
        cfg.epochs = parse_number<int>(val);
      } else if (key == "learning_rate") {
        cfg.learning_rate = parse_number<double>(val);
      } else if (key == "standardize_targets") {
        cfg.standardize_targets = parse_bool(val);
      } else if (key == "hessian_norm") {
        if (val == "spectral")
          cfg.hessian_norm = MatrixNorm::Spectral;
        else if (val == "frobenius")
          cfg.hessian_norm = MatrixNorm::Frobenius;
        else
          throw std::invalid_argument("expected spectral or frobenius, got '" + val + "'");
      } else if (key == "activations") {
        cfg.activations.clear();
        for (auto& s : split_list(val)) cfg.activations.push_back(parse_activation(s));
      } else if (key == "solvers") {
        cfg.solvers = split_list(val);
        for (auto& s : cfg.solvers) parse_solver(s);
      } else if (key == "budget_factor") {
        cfg.budget_factor = parse_number<int>(val);
      } else {
        issues.push_back(key + ": unknown key");
      }
    } catch (const std::exception& e) {
      issues.push_back(key + ": " + e.what());
    }
  }
  if (!seen.count("schema_version")) issues.push_back("schema_version: missing");
  if (!have_experiment && !seen.count("experiment")) issues.push_back("experiment: missing");
  if (!have_set && !seen.count("problem_set")) issues.push_back("problem_set: missing");
  if (!issues.empty()) throw ConfigError(issues);
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> issues;
  if (cfg.schema_version != 1)
    issues.push_back("schema_version: unsupported version " + std::to_string(cfg.schema_version));
  if (cfg.problem_set != ProblemSetId::Set53 && cfg.dims.empty())
    issues.push_back("dims: required for problem set " + std::string(to_string(cfg.problem_set)));
  for (int d : cfg.dims)
    if (d < 2) issues.push_back("dims: dimension " + std::to_string(d) + " must be >= 2");
  if (cfg.taus.empty()) issues.push_back("taus: must not be empty");
  for (double t : cfg.taus)
    if (!(t > 0.0 && t <= 1.0)) issues.push_back("taus: " + fmt(t) + " is outside (0, 1]");
  if (cfg.seeds.empty()) issues.push_back("seeds: must not be empty");
  if (cfg.output_dir.empty()) issues.push_back("output_dir: must not be empty");
  if (cfg.threads < 1) issues.push_back("threads: must be >= 1");
  if (cfg.epochs < 1) issues.push_back("epochs: must be >= 1");
  if (!(cfg.learning_rate > 0.0)) issues.push_back("learning_rate: must be positive");
  if (cfg.budget_factor < 1) issues.push_back("budget_factor: must be >= 1");
  const bool nn = cfg.experiment == ExperimentKind::E1Activations ||
                  cfg.experiment == ExperimentKind::E3NnApprox;
  if (nn && cfg.activations.empty()) issues.push_back("activations: must not be empty");
  if (cfg.experiment == ExperimentKind::E4FleVsFles && cfg.solvers.empty())
    issues.push_back("solvers: must not be empty");
  const auto& names = problem_names(cfg.problem_set);
  for (auto& p : cfg.problems)
    if (std::find(names.begin(), names.end(), p) == names.end())
      issues.push_back("problems: '" + p + "' is not in " + std::string(to_string(cfg.problem_set)));
  if (!issues.empty()) throw ConfigError(issues);
}

std::string normalize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  auto str = [](const std::string& s) { return s; };
  os << "schema_version = " << cfg.schema_version << "\n";
  os << "experiment = " << to_string(cfg.experiment) << "\n";
  os << "problem_set = " << to_string(cfg.problem_set) << "\n";
  os << "dims = " << join_list(cfg.dims, [](int d) { return std::to_string(d); }) << "\n";
  os << "problems = " << join_list(cfg.problems, str) << "\n";
  os << "taus = " << join_list(cfg.taus, fmt) << "\n";
  os << "seeds = " << join_list(cfg.seeds, [](std::uint64_t s) { return std::to_string(s); }) << "\n";
  os << "output_dir = " << cfg.output_dir << "\n";
  os << "threads = " << cfg.threads << "\n";
  os << "epochs = " << cfg.epochs << "\n";
  os << "learning_rate = " << fmt(cfg.learning_rate) << "\n";
  os << "standardize_targets = " << (cfg.standardize_targets ? "true" : "false") << "\n";
  os << "hessian_norm = " << (cfg.hessian_norm == MatrixNorm::Spectral ? "spectral" : "frobenius")
     << "\n";
  os << "activations = "
     << join_list(cfg.activations, [](ActivationKind a) { return std::string(to_string(a)); })
     << "\n";
  os << "solvers = " << join_list(cfg.solvers, str) << "\n";
  os << "budget_factor = " << cfg.budget_factor << "\n";
  return os.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
  // threads and output_dir do not change results
  ExperimentConfig c = cfg;
  c.threads = 1;
  c.output_dir = ".";
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(normalize_config(c))));
  return buf;
}

}  // namespace sdfo
