#include "sdfo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sdfo/basis.hpp"
#include "sdfo/csv.hpp"
#include "sdfo/mlp.hpp"
#include "sdfo/optimizer.hpp"
#include "sdfo/poly_model.hpp"
#include "sdfo/rbf_model.hpp"
#include "sdfo/sampling.hpp"

namespace sdfo {

namespace {

using Row = std::vector<std::string>;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string shortest(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string clean(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  return s;
}

class Progress {
 public:
  Progress(const ProgressFn& fn, std::string what, int total)
      : fn_(fn), what_(std::move(what)), total_(total) {}
  void done(const std::string& cell) {
    if (!fn_) return;
    std::lock_guard lock(mu_);
    ++count_;
    fn_(what_ + " " + std::to_string(count_) + "/" + std::to_string(total_) + " " + cell);
  }

 private:
  const ProgressFn& fn_;
  std::string what_;
  int total_;
  int count_ = 0;
  std::mutex mu_;
};

struct Failure {
  std::string cell;
  std::string message;
};

std::string failures_csv(const std::vector<Failure>& f) {
  std::string out = csv_line({"cell", "message"});
  for (const auto& x : f) out += csv_line({x.cell, clean(x.message)});
  return out;
}

std::string tau_tag(double tau) { return "tau" + shortest(tau); }

std::string instance_id(const TestProblem& p) { return p.name() + ":" + std::to_string(p.dim()); }

// ---------------------------------------------------------------- networks

TrainResult train_network(const ExperimentConfig& cfg, const TestProblem& p,
                          const ApproxSample& s, ActivationKind act, std::uint64_t seed,
                          bool record) {
  const int n = p.dim();
  const SampleSet norm = shift_scale(p.x0(), s.train_x);
  Dataset train_set(DatasetRole::Train), test_set(DatasetRole::Test);
  for (std::size_t i = 0; i < s.train_x.size(); ++i) train_set.add(s.train_x[i], s.train_f[i], Provenance::Sample);
  for (std::size_t i = 0; i < s.test_x.size(); ++i) test_set.add(s.test_x[i], s.test_f[i], Provenance::Sample);
  MlpWeights w = init_weights(MlpConfig{n, act}, cell_seed(p.name(), n, "init", seed), p.x0(),
                              norm.delta);
  TrainConfig tc;
  tc.epochs = cfg.epochs;
  tc.learning_rate = cfg.learning_rate;
  tc.batch_size = minibatch_size(cfg.problem_set, n, train_set.size());
  tc.seed = cell_seed(p.name(), n, "train", seed);
  tc.standardize_targets = cfg.standardize_targets;
  tc.record_losses = record;
  return train(std::move(w), train_set, test_set, tc);
}

std::string activation_names(const ExperimentConfig& cfg, std::size_t a) {
  return std::string(to_string(cfg.activations[a]));
}

// ---------------------------------------------------------------- E1

void run_e1(const ExperimentConfig& cfg, const std::vector<TestProblem>& probs,
            const ProgressFn& progress, ResultBundle& out) {
  const std::size_t np = probs.size(), ns = cfg.seeds.size(), na = cfg.activations.size();
  const int cells = static_cast<int>(np * ns * na);
  std::vector<TrainTrace> traces(cells);
  Progress prog(progress, "E1", cells);
  auto idx = [&](std::size_t p, std::size_t s, std::size_t a) { return (p * ns + s) * na + a; };
  // one sample per (problem, seed), shared by every activation
  std::vector<ApproxSample> samples(np * ns);
  parallel_for(static_cast<int>(np * ns), cfg.threads, [&](int i) {
    samples[i] = make_approx_sample(probs[i / ns], cell_seed(probs[i / ns].name(),
                                                             probs[i / ns].dim(), "sample",
                                                             cfg.seeds[i % ns]));
  });
  parallel_for(cells, cfg.threads, [&](int c) {
    const std::size_t a = c % na, s = (c / na) % ns, p = c / (na * ns);
    traces[c] = train_network(cfg, probs[p], samples[p * ns + s], cfg.activations[a],
                              cfg.seeds[s], true)
                    .trace;
    prog.done(instance_id(probs[p]) + " " + activation_names(cfg, a));
  });

  std::string tr = csv_line({"problem", "dim", "activation", "seed", "epoch", "train_loss",
                             "test_loss", "lr"});
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t s = 0; s < ns; ++s)
      for (std::size_t a = 0; a < na; ++a) {
        const auto& t = traces[idx(p, s, a)];
        const Row head{probs[p].name(), std::to_string(probs[p].dim()), activation_names(cfg, a),
                       std::to_string(cfg.seeds[s])};
        auto row = [&](std::size_t e, double l1, double l2, const std::string& lr) {
          Row r = head;
          r.insert(r.end(), {std::to_string(e), format_double(l1), format_double(l2), lr});
          tr += csv_line(r);
        };
        row(0, t.initial_train, t.initial_test, "");
        for (std::size_t e = 0; e < t.epochs.size(); ++e)
          row(e + 1, t.epochs[e].train_loss, t.epochs[e].test_loss, format_double(t.epochs[e].lr));
      }
  out.files["traces.csv"] = tr;

  std::string it = csv_line({"problem", "dim", "activation", "seed", "split", "tau", "iterations"});
  std::string ms = csv_line({"instance", "solver", "split", "tau", "value"});
  for (const std::string split : {"train", "test"}) {
    for (double tau : cfg.taus) {
      for (std::size_t p = 0; p < np; ++p) {
        std::vector<std::vector<double>> per(na);  // per activation, over seeds
        for (std::size_t s = 0; s < ns; ++s) {
          std::vector<std::vector<double>> curves(na);
          double ll = std::numeric_limits<double>::infinity();
          for (std::size_t a = 0; a < na; ++a) {
            const auto& t = traces[idx(p, s, a)];
            curves[a] = split == "train" ? t.train_curve() : t.test_curve();
            for (double v : curves[a]) ll = std::min(ll, v);
          }
          for (std::size_t a = 0; a < na; ++a) {
            const auto k = iterations_to_tau(curves[a], curves[a][0], ll, tau);
            per[a].push_back(k ? double(*k) : std::numeric_limits<double>::infinity());
            it += csv_line({probs[p].name(), std::to_string(probs[p].dim()),
                            activation_names(cfg, a), std::to_string(cfg.seeds[s]), split,
                            format_double(tau), k ? std::to_string(*k) : "FAIL"});
          }
        }
        for (std::size_t a = 0; a < na; ++a) {
          const double m = median(per[a]);
          ms += csv_line({instance_id(probs[p]), activation_names(cfg, a), split,
                          format_double(tau), std::isfinite(m) ? format_double(m) : "FAIL"});
        }
      }
    }
  }
  out.files["iterations.csv"] = it;
  out.files["measures.csv"] = ms;
  for (const std::string split : {"train", "test"})
    for (double tau : cfg.taus) {
      std::ostringstream os;
      write_profile_csv(os, profile_from_measures(ms, tau, split));
      out.files["profile_" + split + "_" + tau_tag(tau) + ".csv"] = os.str();
    }
}

// ---------------------------------------------------------------- E2 / E3

struct ErrorCell {
  bool ok = false;
  ApproxErrors e;
  std::string message;
};

ApproxErrors errors_at(const TestProblem& p, double m, const Vector& g, const Matrix& h,
                       MatrixNorm norm) {
  const Vector& x0 = p.x0();
  return approx_errors(m, p.evaluate(x0), g, p.gradient(x0), h, p.hessian(x0), norm);
}

template <class Model>
ErrorCell model_errors(const TestProblem& p, const Model& model, MatrixNorm norm) {
  ErrorCell c;
  const Vector& x0 = p.x0();
  c.e = errors_at(p, model.value(x0), model.gradient(x0), model.hessian(x0), norm);
  c.ok = std::isfinite(c.e.value_err) && std::isfinite(c.e.grad_err) && std::isfinite(c.e.hess_err);
  if (!c.ok) c.message = "non-finite error";
  return c;
}

ErrorCell fit_label(const TestProblem& p, const SampleSet& y, const Vector& fy, int label,
                    MatrixNorm norm) {
  const int n = p.dim();
  try {
    if (label == 1) return model_errors(p, fit_poly(Basis::natural(n), y, fy), norm);
    if (label <= 6)
      return model_errors(p, fit_poly(Basis::tilde_cross(n, kAllActivations[label - 2]), y, fy), norm);
    if (label <= 11)
      return model_errors(p, fit_poly(Basis::hat_diagonal(n, kAllActivations[label - 7]), y, fy), norm);
    return model_errors(p, fit_rbf(y, fy, RbfKernel::Gaussian, 1.0), norm);
  } catch (const std::exception& e) {
    ErrorCell c;
    c.message = e.what();
    return c;
  }
}

struct ErrorTable {
  std::vector<std::string> labels;
  std::vector<Row> cell_ids;                // problem, dim, seed
  std::vector<std::vector<ErrorCell>> cells;  // [cell][label]
};

void emit_error_table(const ErrorTable& t, ResultBundle& out) {
  std::string metrics = csv_line(
      {"problem", "dim", "seed", "basis_label", "value_err", "grad_err", "hess_err", "status"});
  std::vector<Failure> fails;
  for (std::size_t c = 0; c < t.cells.size(); ++c)
    for (std::size_t l = 0; l < t.labels.size(); ++l) {
      const auto& e = t.cells[c][l];
      Row r = t.cell_ids[c];
      r.push_back(t.labels[l]);
      if (e.ok) {
        r.insert(r.end(), {format_double(e.e.value_err), format_double(e.e.grad_err),
                           format_double(e.e.hess_err), "ok"});
      } else {
        r.insert(r.end(), {"", "", "", "FAIL"});
        fails.push_back({t.cell_ids[c][0] + ":" + t.cell_ids[c][1] + ":" + t.cell_ids[c][2] +
                             ":" + t.labels[l],
                         e.message});
      }
      metrics += csv_line(r);
    }
  std::string box = csv_line({"basis_label", "metric", "value"});
  std::string stats = csv_line({"basis_label", "metric", "median", "lower", "upper", "whisker_lo",
                                "whisker_hi", "count", "excluded", "failed"});
  const std::vector<std::string> metric_names{"value", "gradient", "hessian"};
  for (std::size_t l = 0; l < t.labels.size(); ++l)
    for (std::size_t m = 0; m < 3; ++m) {
      std::vector<double> vals;
      int failed = 0;
      for (const auto& cell : t.cells) {
        const auto& e = cell[l];
        if (!e.ok) {
          ++failed;
          continue;
        }
        const double v = m == 0 ? e.e.value_err : m == 1 ? e.e.grad_err : e.e.hess_err;
        vals.push_back(v);
        box += csv_line({t.labels[l], metric_names[m], format_double(v)});
      }
      Row r{t.labels[l], metric_names[m]};
      const bool any = std::any_of(vals.begin(), vals.end(),
                                   [](double v) { return v >= 0.0 && v <= 5.0; });
      if (any) {
        const BoxStats b = boxplot_stats(vals);
        r.insert(r.end(), {format_double(b.median), format_double(b.lower), format_double(b.upper),
                           format_double(b.whisker_lo), format_double(b.whisker_hi),
                           std::to_string(b.count), std::to_string(b.excluded)});
      } else {
        r.insert(r.end(), {"nan", "nan", "nan", "nan", "nan", "0", std::to_string(vals.size())});
      }
      r.push_back(std::to_string(failed));
      stats += csv_line(r);
    }
  out.files["metrics.csv"] = metrics;
  out.files["box.csv"] = box;
  out.files["boxstats.csv"] = stats;
  out.files["failures.csv"] = failures_csv(fails);
}

void run_e2(const ExperimentConfig& cfg, const std::vector<TestProblem>& probs,
            const ProgressFn& progress, ResultBundle& out) {
  const std::size_t np = probs.size(), ns = cfg.seeds.size();
  const auto& labels = basis_labels();
  ErrorTable t;
  t.labels = labels;
  t.cells.resize(np * ns);
  Progress prog(progress, "E2", static_cast<int>(np * ns));
  parallel_for(static_cast<int>(np * ns), cfg.threads, [&](int c) {
    const auto& p = probs[c / ns];
    const std::uint64_t seed = cfg.seeds[c % ns];
    const ApproxSample s = make_approx_sample(p, cell_seed(p.name(), p.dim(), "sample", seed));
    const SampleSet y = shift_scale(p.x0(), s.train_x);
    const Vector fy = Eigen::Map<const Vector>(s.train_f.data(), s.train_f.size());
    auto& row = t.cells[c];
    for (std::size_t l = 0; l < labels.size(); ++l)
      row.push_back(fit_label(p, y, fy, static_cast<int>(l) + 1, cfg.hessian_norm));
    prog.done(instance_id(p));
  });
  for (std::size_t c = 0; c < np * ns; ++c)
    t.cell_ids.push_back({probs[c / ns].name(), std::to_string(probs[c / ns].dim()),
                          std::to_string(cfg.seeds[c % ns])});
  emit_error_table(t, out);
}

void run_e3(const ExperimentConfig& cfg, const std::vector<TestProblem>& probs,
            const ProgressFn& progress, ResultBundle& out) {
  const std::size_t np = probs.size(), ns = cfg.seeds.size(), na = cfg.activations.size();
  ErrorTable t;
  for (auto a : cfg.activations) t.labels.emplace_back(to_string(a));
  t.cells.assign(np * ns, std::vector<ErrorCell>(na));
  std::vector<ApproxSample> samples(np * ns);
  parallel_for(static_cast<int>(np * ns), cfg.threads, [&](int i) {
    const auto& p = probs[i / ns];
    samples[i] = make_approx_sample(p, cell_seed(p.name(), p.dim(), "sample", cfg.seeds[i % ns]));
  });
  const int cells = static_cast<int>(np * ns * na);
  Progress prog(progress, "E3", cells);
  parallel_for(cells, cfg.threads, [&](int c) {
    const std::size_t a = c % na, s = (c / na) % ns, p = c / (na * ns);
    const auto& prob = probs[p];
    ErrorCell& cell = t.cells[p * ns + s][a];
    try {
      const TrainResult r =
          train_network(cfg, prob, samples[p * ns + s], cfg.activations[a], cfg.seeds[s], false);
      const Vector& x0 = prob.x0();
      cell.e = errors_at(prob, forward(r.weights, x0), input_gradient(r.weights, x0),
                         input_hessian(r.weights, x0), cfg.hessian_norm);
      cell.ok = std::isfinite(cell.e.value_err) && std::isfinite(cell.e.grad_err) &&
                std::isfinite(cell.e.hess_err);
      if (!cell.ok) cell.message = "non-finite error";
    } catch (const std::exception& e) {
      cell.message = e.what();
    }
    prog.done(instance_id(prob) + " " + activation_names(cfg, a));
  });
  for (std::size_t c = 0; c < np * ns; ++c)
    t.cell_ids.push_back({probs[c / ns].name(), std::to_string(probs[c / ns].dim()),
                          std::to_string(cfg.seeds[c % ns])});
  emit_error_table(t, out);
}

// ---------------------------------------------------------------- E4

void run_e4(const ExperimentConfig& cfg, const std::vector<TestProblem>& probs,
            const ProgressFn& progress, ResultBundle& out) {
  const std::size_t np = probs.size(), ns = cfg.seeds.size(), nv = cfg.solvers.size();
  const int cells = static_cast<int>(np * ns * nv);
  std::vector<RunResult> runs(cells);
  std::vector<FleConfig> fcs(cells);
  Progress prog(progress, "E4", cells);
  parallel_for(cells, cfg.threads, [&](int c) {
    const std::size_t v = c % nv, s = (c / nv) % ns, p = c / (nv * ns);
    const auto& prob = probs[p];
    FleConfig fc = parse_solver(cfg.solvers[v]);
    fc.budget = static_cast<long>(cfg.budget_factor) * (prob.dim() + 1);
    fc.problem_set = cfg.problem_set;
    fcs[c] = fc;
    runs[c] = run(prob, fc, cell_seed(prob.name(), prob.dim(), "run", cfg.seeds[s]));
    prog.done(instance_id(prob) + " " + cfg.solvers[v]);
  });

  std::string hist = csv_line({"problem", "dim", "solver", "seed", "evals", "best_f"});
  nlohmann::json meta = nlohmann::json::array();
  std::string ms = csv_line({"instance", "solver", "split", "tau", "value"});
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t s = 0; s < ns; ++s) {
      double fl = std::numeric_limits<double>::infinity();
      for (std::size_t v = 0; v < nv; ++v) {
        const std::size_t c = (p * ns + s) * nv + v;
        const auto& r = runs[c];
        for (const auto& h : r.history)
          hist += csv_line({probs[p].name(), std::to_string(probs[p].dim()), cfg.solvers[v],
                            std::to_string(cfg.seeds[s]), std::to_string(h.evals),
                            format_double(h.best_f)});
        nlohmann::json m = r.meta_json();
        m["problem"] = probs[p].name();
        m["dim"] = probs[p].dim();
        m["solver"] = cfg.solvers[v];
        m["seed"] = cfg.seeds[s];
        m["config"] = fcs[c].to_json();
        meta.push_back(m);
        if (!r.history.empty()) fl = std::min(fl, r.history.back().best_f);
      }
      const double f0 = probs[p].evaluate(probs[p].x0());
      for (double tau : cfg.taus)
        for (std::size_t v = 0; v < nv; ++v) {
          const auto& r = runs[(p * ns + s) * nv + v];
          const auto k = evals_to_tau(r.history, f0, fl, tau);
          ms += csv_line({instance_id(probs[p]) + ":" + std::to_string(cfg.seeds[s]),
                          cfg.solvers[v], "all", format_double(tau),
                          k ? std::to_string(*k) : "FAIL"});
        }
    }
  out.files["runs.csv"] = hist;
  out.files["runs_meta.json"] = meta.dump(1) + "\n";
  out.files["measures.csv"] = ms;
  for (double tau : cfg.taus) {
    std::ostringstream os;
    write_profile_csv(os, profile_from_measures(ms, tau, "all"));
    out.files["profile_" + tau_tag(tau) + ".csv"] = os.str();
  }
}

}  // namespace

const std::string& ResultBundle::file(const std::string& name) const {
  auto it = files.find(name);
  if (it == files.end()) throw std::out_of_range("result has no file '" + name + "'");
  return it->second;
}

std::uint64_t cell_seed(std::string_view problem, int dim, std::string_view tag,
                        std::uint64_t seed) {
  std::string key(problem);
  key += ':' + std::to_string(dim) + ':' + std::string(tag) + ':' + std::to_string(seed);
  return fnv1a(key);
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int workers = std::max(1, std::min(threads, count));
  std::atomic<int> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    for (int i = next++; i < count && !stop; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

std::vector<TestProblem> select_problems(const ExperimentConfig& cfg) {
  std::vector<std::optional<int>> dims;
  if (cfg.problem_set == ProblemSetId::Set53)
    dims.push_back(std::nullopt);
  else {
    std::vector<int> ds = cfg.dims;
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    for (int d : ds) dims.push_back(d);
  }
  std::vector<TestProblem> out;
  for (auto d : dims)
    for (auto& p : catalog(cfg.problem_set, d))
      if (cfg.problems.empty() ||
          std::find(cfg.problems.begin(), cfg.problems.end(), p.name()) != cfg.problems.end())
        out.push_back(std::move(p));
  if (out.empty()) throw std::invalid_argument("no problems selected");
  return out;
}

ApproxSample make_approx_sample(const TestProblem& p, std::uint64_t seed) {
  const SampleSizes sz = standard_sizes(p.dim());
  ApproxSample s;
  s.train_x = sample_ball(p.x0(), 1.0, sz.train, seed);
  s.test_x = sample_ball(p.x0(), 1.0, sz.test, seed ^ 0x9e3779b97f4a7c15ULL);
  for (const auto& x : s.train_x) s.train_f.push_back(p.evaluate(x));
  for (const auto& x : s.test_x) s.test_f.push_back(p.evaluate(x));
  return s;
}

const std::vector<std::string>& basis_labels() {
  static const std::vector<std::string> labels{"1", "2", "3", "4",  "5",  "6",
                                               "7", "8", "9", "10", "11", "12"};
  return labels;
}

std::string basis_description(int label) {
  if (label == 1) return "natural";
  if (label >= 2 && label <= 6)
    return "tilde_cross_" + std::string(to_string(kAllActivations[label - 2]));
  if (label >= 7 && label <= 11)
    return "hat_diagonal_" + std::string(to_string(kAllActivations[label - 7]));
  if (label == 12) return "rbf_gaussian";
  throw std::invalid_argument("basis label must be 1..12");
}

ResultBundle run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  const auto probs = select_problems(cfg);
  ResultBundle out;
  out.output_dir = cfg.output_dir;
  switch (cfg.experiment) {
    case ExperimentKind::E1Activations:
      run_e1(cfg, probs, progress, out);
      break;
    case ExperimentKind::E2Bases:
      run_e2(cfg, probs, progress, out);
      break;
    case ExperimentKind::E3NnApprox:
      run_e3(cfg, probs, progress, out);
      break;
    case ExperimentKind::E4FleVsFles:
      run_e4(cfg, probs, progress, out);
      break;
  }
  if (cfg.experiment == ExperimentKind::E2Bases) {
    std::string legend = csv_line({"basis_label", "basis"});
    for (int l = 1; l <= 12; ++l) legend += csv_line({std::to_string(l), basis_description(l)});
    out.files["basis_labels.csv"] = legend;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  nlohmann::json files = nlohmann::json::object();
  for (const auto& [name, text] : out.files) files[name] = hex64(fnv1a(text));
  out.manifest = {{"schema_version", cfg.schema_version},
                  {"experiment", std::string(to_string(cfg.experiment))},
                  {"config", normalize_config(cfg)},
                  {"config_hash", config_hash(cfg)},
                  {"seeds", cfg.seeds},
                  {"version", std::string(kVersion)},
                  {"wall_time_s", wall},
                  {"files", files}};
  return out;
}

void write_bundle(const ResultBundle& bundle) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(bundle.output_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + bundle.output_dir + "'");
  auto put = [&](const std::string& name, const std::string& text) {
    const fs::path path = fs::path(bundle.output_dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  };
  for (const auto& [name, text] : bundle.files) put(name, text);
  put("manifest.json", bundle.manifest.dump(2) + "\n");
}

ExperimentConfig config_from_manifest(const nlohmann::json& manifest) {
  if (!manifest.contains("config") || !manifest["config"].is_string())
    throw ConfigError({"manifest: missing config text"});
  ExperimentConfig cfg = parse_config(manifest["config"].get<std::string>());
  if (manifest.contains("config_hash") && manifest["config_hash"] != config_hash(cfg))
    throw ConfigError({"manifest: config_hash does not match config"});
  return cfg;
}

std::vector<ProfileCurve> profile_from_measures(const std::string& measures_csv, double tau,
                                                const std::string& split) {
  const CsvTable t = parse_csv(measures_csv);
  const auto ci = t.column("instance"), cs = t.column("solver"), cp = t.column("split"),
             ct = t.column("tau"), cv = t.column("value");
  std::vector<std::string> instances, solvers;
  auto index_of = [](std::vector<std::string>& v, const std::string& s) {
    auto it = std::find(v.begin(), v.end(), s);
    if (it != v.end()) return static_cast<std::size_t>(it - v.begin());
    v.push_back(s);
    return v.size() - 1;
  };
  struct Entry {
    std::size_t p, s;
    std::optional<double> v;
  };
  std::vector<Entry> entries;
  for (const auto& r : t.rows) {
    if (r[cp] != split || parse_double(r[ct]) != tau) continue;
    std::optional<double> v;
    if (r[cv] != "FAIL") v = parse_double(r[cv]);
    entries.push_back({index_of(instances, r[ci]), index_of(solvers, r[cs]), v});
  }
  if (entries.empty())
    throw std::invalid_argument("no measures for tau " + shortest(tau) + " and split '" + split + "'");
  ProfileInput in(instances.size(), std::vector<std::optional<double>>(solvers.size()));
  std::vector<std::vector<bool>> seen(instances.size(), std::vector<bool>(solvers.size()));
  for (const auto& e : entries) {
    in[e.p][e.s] = e.v;
    seen[e.p][e.s] = true;
  }
  for (const auto& row : seen)
    for (bool b : row)
      if (!b) throw std::invalid_argument("measures table is not complete");
  return performance_profile(in, solvers);
}

}  // namespace sdfo
