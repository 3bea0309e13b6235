#include "sdfo/optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "sdfo/basis.hpp"
#include "sdfo/poly_model.hpp"
#include "sdfo/rbf_model.hpp"

namespace sdfo {

std::string_view to_string(SurrogateKind k) {
  switch (k) {
    case SurrogateKind::None:
      return "none";
    case SurrogateKind::Natural:
      return "natural";
    case SurrogateKind::HatSigmoid:
      return "hat_sigmoid";
    case SurrogateKind::RbfGaussian:
      return "rbf";
    case SurrogateKind::NnRelu:
      return "nn_relu";
    case SurrogateKind::NnSilu:
      return "nn_silu";
  }
  return "?";
}

SurrogateKind parse_surrogate(std::string_view text) {
  for (auto k : {SurrogateKind::None, SurrogateKind::Natural, SurrogateKind::HatSigmoid,
                 SurrogateKind::RbfGaussian, SurrogateKind::NnRelu, SurrogateKind::NnSilu})
    if (to_string(k) == text) return k;
  throw std::invalid_argument("unknown surrogate '" + std::string(text) + "'");
}

std::string_view to_string(Termination t) {
  return t == Termination::Budget ? "budget" : "step_size";
}

bool is_nn(SurrogateKind k) { return k == SurrogateKind::NnRelu || k == SurrogateKind::NnSilu; }

double FleConfig::zeta_value() const {
  if (zeta) return *zeta;
  return is_nn(surrogate) ? 0.2 : 1.0;
}

long FleConfig::budget_for(int n) const { return budget >= 0 ? budget : 100L * (n + 1); }

void FleConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string("FleConfig: ") + name + " must be positive");
  };
  positive(eps, "eps");
  positive(beta_bar, "beta_bar");
  positive(c, "c");
  positive(rho_c, "rho_c");
  positive(lambda_ds, "lambda_ds");
  positive(alpha0, "alpha0");
  positive(lambda_sw, "lambda_sw");
  positive(h, "h");
  positive(zeta_value(), "zeta");
  positive(nn_learning_rate, "nn_learning_rate");
  if (!(tau_bt < 1.0 && tau_bt > 0.0)) throw std::invalid_argument("FleConfig: tau_bt must lie in (0,1)");
  if (!(theta < 1.0 && theta > 0.0)) throw std::invalid_argument("FleConfig: theta must lie in (0,1)");
  if (!(c < 1.0)) throw std::invalid_argument("FleConfig: c must lie in (0,1)");
  if (lambda_ds < 1.0) throw std::invalid_argument("FleConfig: lambda_ds must be >= 1");
  if (nn_first_epochs < 1 || nn_epochs < 1) throw std::invalid_argument("FleConfig: epochs must be >= 1");
}

nlohmann::json FleConfig::to_json() const {
  return {{"algorithm", algorithm == Algorithm::Fle ? "fle" : "fle_s"},
          {"surrogate", std::string(to_string(surrogate))},
          {"eps", eps},
          {"beta_bar", beta_bar},
          {"tau_bt", tau_bt},
          {"c", c},
          {"rho_c", rho_c},
          {"lambda_ds", lambda_ds},
          {"theta", theta},
          {"alpha0", alpha0},
          {"lambda_sw", lambda_sw},
          {"h", h},
          {"zeta", zeta_value()},
          {"budget", budget},
          {"alpha_min", alpha_min},
          {"nn_learning_rate", nn_learning_rate},
          {"nn_first_epochs", nn_first_epochs},
          {"nn_epochs", nn_epochs}};
}

std::string solver_label(const FleConfig& cfg) {
  if (cfg.algorithm == Algorithm::Fle) return "fle";
  return "fles_" + std::string(to_string(cfg.surrogate));
}

FleConfig parse_solver(std::string_view label) {
  FleConfig c;
  if (label == "fle") return c;
  if (label.substr(0, 5) != "fles_") throw std::invalid_argument("unknown solver '" + std::string(label) + "'");
  c.algorithm = Algorithm::FleS;
  c.surrogate = parse_surrogate(label.substr(5));
  return c;
}

std::vector<FleConfig> standard_solvers() {
  std::vector<FleConfig> out(1);
  for (auto k : {SurrogateKind::Natural, SurrogateKind::HatSigmoid, SurrogateKind::RbfGaussian,
                 SurrogateKind::NnRelu, SurrogateKind::NnSilu}) {
    FleConfig c;
    c.algorithm = Algorithm::FleS;
    c.surrogate = k;
    out.push_back(c);
  }
  return out;
}

FdResult fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double fx,
                     double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_gradient: h must be positive");
  const Eigen::Index n = x.size();
  FdResult r;
  r.g.resize(n);
  r.points.reserve(n);
  r.values.reserve(n);
  Vector xi = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    xi[i] = x[i] + h;
    const double fi = f(xi);
    r.g[i] = (fi - fx) / h;
    r.points.push_back(xi);
    r.values.push_back(fi);
    xi[i] = x[i];
  }
  return r;
}

namespace {
bool curvature_ok(const Vector& s, const Vector& y, double eps) {
  const double sy = s.dot(y);
  return sy > 0.0 && sy >= eps * s.norm() * y.norm();
}
}  // namespace

Matrix bfgs_update(const Matrix& h, const Vector& s, const Vector& y, double eps) {
  if (!curvature_ok(s, y, eps)) return h;
  const double rho = 1.0 / s.dot(y);
  const Vector hy = h * y;
  // (I - rho s y^T) H (I - rho y s^T) + rho s s^T, expanded
  Matrix out = h;
  out.noalias() -= rho * (s * hy.transpose() + hy * s.transpose());
  out.noalias() += (rho * rho * y.dot(hy) + rho) * (s * s.transpose());
  return 0.5 * (out + out.transpose());
}

Matrix initial_h0(const Vector& s, const Vector& y) {
  const Eigen::Index n = s.size();
  const double ys = y.dot(s), yy = y.dot(y);
  if (!(ys > 0.0) || !(yy > 0.0)) return Matrix::Identity(n, n);
  return (ys / yy) * Matrix::Identity(n, n);
}

LineSearchResult backtracking(const std::function<double(const Vector&)>& f, const Vector& x,
                              double fx, const Vector& p, const Vector& g, double alpha,
                              const FleConfig& cfg) {
  LineSearchResult r;
  const double slope = g.dot(p);
  if (!(slope < 0.0)) {
    r.descent = false;
    return r;
  }
  const double floor = cfg.lambda_sw * cfg.rho(alpha);
  double beta = cfg.beta_bar;
  while (beta >= floor) {
    const Vector xt = x + beta * p;
    const double ft = f(xt);
    r.trials.push_back(xt);
    r.values.push_back(ft);
    if (ft <= fx + cfg.c * beta * slope) {
      r.accepted = true;
      r.beta = beta;
      return r;
    }
    beta *= cfg.tau_bt;
    ++r.backtracks;
  }
  return r;
}

FleSolver::FleSolver(const TestProblem& problem, FleConfig cfg, std::uint64_t seed)
    : p_(problem),
      cfg_(cfg),
      rng_(make_rng(seed, 0x666c65)),
      budget_(cfg.budget_for(problem.dim())),
      best_(std::numeric_limits<double>::infinity()),
      seed_(seed) {
  cfg_.validate();
  const int n = problem.dim();
  st_.x = problem.x0();
  st_.h = Matrix::Identity(n, n);
  st_.alpha = cfg_.alpha0;
  st_.f = eval(st_.x);
}

double FleSolver::eval(const Vector& x) {
  if (!x.allFinite()) return std::numeric_limits<double>::infinity();
  if (st_.evals >= std::max(budget_, 1L)) throw BudgetExhausted();
  double f = p_.evaluate(x);
  if (std::isnan(f)) f = std::numeric_limits<double>::infinity();
  ++st_.evals;
  if (f < best_) best_ = f;
  history_.push_back({st_.evals, best_});
  return f;
}

void FleSolver::add_point(const Vector& x, double f, Provenance tag) {
  if (cfg_.algorithm != Algorithm::FleS || !std::isfinite(f)) return;
  st_.data.add(x, f, tag);
}

void FleSolver::step() {
  ++st_.iteration;
  if (st_.mode == Mode::FullEval)
    fe_iteration();
  else
    le_iteration();
}

std::optional<Vector> FleSolver::surrogate_gradient() {
  const int n = p_.dim();
  const Vector& x = st_.x;
  std::optional<Vector> g;
  try {
    if (is_nn(cfg_.surrogate)) {
      const Dataset empty(DatasetRole::Test);
      TrainConfig tc;
      tc.learning_rate = cfg_.nn_learning_rate;
      tc.plateau = false;
      tc.record_losses = false;
      tc.batch_size = minibatch_size(cfg_.problem_set, n, st_.data.size());
      tc.seed = seed_ ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(nn_calls_ + 1));
      if (!net_) {
        const SampleSet ss = shift_scale(x, st_.data.points());
        MlpConfig mc{n, cfg_.surrogate == SurrogateKind::NnRelu ? ActivationKind::ReLU
                                                                : ActivationKind::SiLU};
        net_ = init_weights(mc, seed_, x, ss.delta);
        tc.epochs = cfg_.nn_first_epochs;
        tc.standardize_targets = true;
      } else {
        tc.epochs = cfg_.nn_epochs;
        tc.standardize_targets = false;
      }
      ++nn_calls_;
      net_ = train(std::move(*net_), st_.data, empty, tc, &adam_).weights;
      g = input_gradient(*net_, x);
    } else {
      if (st_.data.size() < quadratic_count(n)) return std::nullopt;
      const LocalSample local = select_local_sample(st_.data, x, n);
      switch (cfg_.surrogate) {
        case SurrogateKind::Natural:
          g = fit_poly(Basis::natural(n), local.set, local.values).gradient(x);
          break;
        case SurrogateKind::HatSigmoid:
          if (local.set.size() < 3 * n + 1) return std::nullopt;  // only n = 2
          g = fit_regression(Basis::hat_diagonal(n, Activation(ActivationKind::Sigmoid)), local.set,
                             local.values)
                  .gradient(x);
          break;
        case SurrogateKind::RbfGaussian:
          g = fit_rbf(local.set, local.values, RbfKernel::Gaussian).gradient(x);
          break;
        default:
          return std::nullopt;
      }
    }
  } catch (const PoisednessError&) {
    return std::nullopt;
  }
  if (g && !g->allFinite()) return std::nullopt;
  return g;
}

void FleSolver::fe_iteration() {
  ++fe_iters_;
  last_used_surrogate_ = false;
  const bool fles = cfg_.algorithm == Algorithm::FleS;
  const int n = p_.dim();
  auto f = [this](const Vector& v) { return eval(v); };

  Vector g;
  if (fles && cfg_.surrogate != SurrogateKind::None &&
      st_.data.size() >= cfg_.zeta_value() * quadratic_count(n)) {
    const Vector xb = sample_ball_point(st_.x, 0.1, rng_);
    add_point(xb, eval(xb), Provenance::BallExtra);
    if (auto gs = surrogate_gradient()) {
      g = std::move(*gs);
      last_used_surrogate_ = true;
      ++surrogate_iters_;
    } else {
      ++fd_fallbacks_;
    }
  }
  if (!last_used_surrogate_) {
    FdResult fd = fd_gradient(f, st_.x, st_.f, cfg_.h);
    add_point(st_.x, st_.f, Provenance::FdStencil);
    for (std::size_t i = 0; i < fd.points.size(); ++i)
      add_point(fd.points[i], fd.values[i], Provenance::FdStencil);
    g = std::move(fd.g);
  }

  if (st_.g_prev.size() > 0) {
    const Vector s = st_.x - st_.x_prev;
    const Vector y = g - st_.g_prev;
    if (!st_.h_initialized && curvature_ok(s, y, cfg_.eps)) {
      st_.h = initial_h0(s, y);
      st_.h_initialized = true;
    }
    st_.h = bfgs_update(st_.h, s, y, cfg_.eps);
  }

  const Vector p = -(st_.h * g);
  LineSearchResult ls = backtracking(f, st_.x, st_.f, p, g, st_.alpha, cfg_);
  if (!ls.trials.empty()) {
    if (is_nn(cfg_.surrogate)) {
      for (std::size_t i = 0; i < ls.trials.size(); ++i)
        add_point(ls.trials[i], ls.values[i], Provenance::LineSearchAll);
    } else {
      add_point(ls.trials.front(), ls.values.front(), Provenance::LineSearchFirst);
    }
  }

  st_.x_prev = st_.x;
  st_.g_prev = g;
  st_.last_fe_backtracks = ls.backtracks;
  if (ls.accepted) {
    st_.x = ls.trials.back();
    st_.f = ls.values.back();
  } else {
    st_.mode = Mode::LowEval;
    st_.unsuccessful_le = 0;
  }
}

void FleSolver::le_iteration() {
  ++le_iters_;
  last_used_surrogate_ = false;
  const Vector d = sample_sphere(p_.dim(), rng_);
  const double need = st_.f - cfg_.rho(st_.alpha);
  bool success = false;
  for (double sign : {1.0, -1.0}) {
    const Vector xt = st_.x + (sign * st_.alpha) * d;
    const double ft = eval(xt);
    add_point(xt, ft, Provenance::Poll);
    if (ft <= need) {
      st_.x = xt;
      st_.f = ft;
      success = true;
      break;
    }
  }
  if (success) {
    st_.alpha *= cfg_.lambda_ds;
    st_.unsuccessful_le = 0;
  } else {
    st_.alpha *= cfg_.theta;
    ++st_.unsuccessful_le;
    if (st_.unsuccessful_le > st_.last_fe_backtracks) {
      st_.mode = Mode::FullEval;
      st_.unsuccessful_le = 0;
    }
  }
}

RunResult run(const TestProblem& problem, const FleConfig& cfg, std::uint64_t seed,
              const IterationObserver& observer) {
  FleSolver solver(problem, cfg, seed);
  RunResult r;
  r.reason = Termination::Budget;
  try {
    while (true) {
      if (solver.state().alpha < cfg.alpha_min) {
        r.reason = Termination::StepSize;
        break;
      }
      const Mode mode = solver.state().mode;
      solver.step();
      if (observer)
        observer({solver.state().iteration, mode, &solver.state(), solver.last_used_surrogate()});
    }
  } catch (const BudgetExhausted&) {
    r.reason = Termination::Budget;
  }
  const FleState& st = solver.state();
  r.history = solver.history();
  r.x_final = st.x;
  r.f_final = st.f;
  r.evals = st.evals;
  r.budget = cfg.budget_for(problem.dim());
  r.fe_iterations = solver.fe_iterations();
  r.le_iterations = solver.le_iterations();
  r.surrogate_iterations = solver.surrogate_iterations();
  r.fd_fallbacks = solver.fd_fallbacks();
  r.dataset_size = st.data.size();
  return r;
}

void RunResult::write_csv(std::ostream& os) const {
  os << "evals,best_f\n";
  char buf[64];
  for (const auto& h : history) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g\n", h.evals, h.best_f);
    os << buf;
  }
}

nlohmann::json RunResult::meta_json() const {
  return {{"termination", std::string(to_string(reason))},
          {"evals", evals},
          {"budget", budget},
          {"f_final", f_final},
          {"fe_iterations", fe_iterations},
          {"le_iterations", le_iterations},
          {"surrogate_iterations", surrogate_iterations},
          {"fd_fallbacks", fd_fallbacks},
          {"dataset_size", dataset_size}};
}

}  // namespace sdfo
