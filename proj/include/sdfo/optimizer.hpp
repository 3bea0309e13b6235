#pragma once

// Full-Low Evaluation method: FD-BFGS full-eval iterations, direct-search
// low-eval iterations and the surrogate-gradient variant FLE-S.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sdfo/metrics.hpp"
#include "sdfo/mlp.hpp"
#include "sdfo/problems.hpp"
#include "sdfo/sampling.hpp"

namespace sdfo {

enum class Algorithm { Fle, FleS };
enum class SurrogateKind { None, Natural, HatSigmoid, RbfGaussian, NnRelu, NnSilu };
enum class Mode { FullEval, LowEval };
enum class Termination { Budget, StepSize };

std::string_view to_string(SurrogateKind k);
SurrogateKind parse_surrogate(std::string_view text);
std::string_view to_string(Termination t);
bool is_nn(SurrogateKind k);

struct FleConfig {
  Algorithm algorithm = Algorithm::Fle;
  SurrogateKind surrogate = SurrogateKind::None;
  double eps = 1e-10;         // curvature guard
  double beta_bar = 1.0;      // first backtracking step
  double tau_bt = 0.5;        // backtracking factor
  double c = 1e-4;            // Armijo constant
  double rho_c = 1e-4;        // forcing rho(a) = rho_c a^2
  double lambda_ds = 2.0;     // direct-search expansion
  double theta = 0.5;         // direct-search contraction
  double alpha0 = 1.0;
  double lambda_sw = 1.0;     // FE -> LE switch constant
  double h = 2.0 * 1.4901161193847656e-08;  // 2 sqrt(machine epsilon)
  std::optional<double> zeta;  // default 1 (poly/RBF) or 0.2 (NN)
  long budget = -1;            // -1: 100 (n + 1)
  double alpha_min = 1e-12;
  // network surrogate
  double nn_learning_rate = 1e-2;
  int nn_first_epochs = 5;
  int nn_epochs = 1;
  ProblemSetId problem_set = ProblemSetId::Synthetic;  // selects the minibatch rule

  double rho(double alpha) const { return rho_c * alpha * alpha; }
  double zeta_value() const;
  long budget_for(int n) const;
  void validate() const;
  nlohmann::json to_json() const;
};

/// Short solver identifier: fle, fles_none, fles_natural, ...
std::string solver_label(const FleConfig& cfg);
/// Inverse of solver_label.
FleConfig parse_solver(std::string_view label);
/// The six configurations compared in the optimization experiment.
std::vector<FleConfig> standard_solvers();

struct FdResult {
  Vector g;
  std::vector<Vector> points;
  std::vector<double> values;
};
/// Forward differences (f(x + h e_i) - f(x)) / h; exactly n calls to f.
FdResult fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double fx,
                     double h);

/// Inverse BFGS update when s^T y >= eps ||s|| ||y|| and s^T y > 0, else H.
Matrix bfgs_update(const Matrix& h, const Vector& s, const Vector& y, double eps);
/// (y^T s)/(y^T y) I, or I when y^T s <= 0.
Matrix initial_h0(const Vector& s, const Vector& y);

struct LineSearchResult {
  bool accepted = false;
  bool descent = true;  // false when g^T p >= 0 (no trial made)
  double beta = 0.0;
  int backtracks = 0;   // number of step reductions
  std::vector<Vector> trials;
  std::vector<double> values;
};
/// Armijo backtracking from beta_bar. Stops without acceptance once
/// beta < lambda_sw * rho(alpha), checked before each trial.
LineSearchResult backtracking(const std::function<double(const Vector&)>& f, const Vector& x,
                              double fx, const Vector& p, const Vector& g, double alpha,
                              const FleConfig& cfg);

struct FleState {
  Vector x;
  double f = 0.0;
  Vector x_prev;
  Vector g_prev;  // empty before the first full-eval iteration
  Matrix h;
  bool h_initialized = false;
  double alpha = 1.0;
  Mode mode = Mode::FullEval;
  Dataset data;
  int last_fe_backtracks = 0;
  int unsuccessful_le = 0;
  long evals = 0;
  int iteration = 0;
};

struct IterationInfo {
  int iteration;
  Mode mode;               // mode of the iteration just executed
  const FleState* state;   // after the iteration
  bool used_surrogate;
};

struct RunResult {
  std::vector<HistoryPoint> history;  // (cumulative evals, best f so far)
  Vector x_final;
  double f_final = 0.0;
  Termination reason = Termination::Budget;
  long evals = 0;
  long budget = 0;
  int fe_iterations = 0;
  int le_iterations = 0;
  int surrogate_iterations = 0;
  int fd_fallbacks = 0;
  int dataset_size = 0;

  void write_csv(std::ostream& os) const;
  nlohmann::json meta_json() const;
};

class BudgetExhausted : public std::exception {
 public:
  const char* what() const noexcept override { return "evaluation budget exhausted"; }
};

/// Owns one run's state. Each call to step() executes a single FE or LE
/// iteration; evaluations past the budget raise BudgetExhausted.
class FleSolver {
 public:
  FleSolver(const TestProblem& problem, FleConfig cfg, std::uint64_t seed);

  const FleState& state() const { return st_; }
  const FleConfig& config() const { return cfg_; }
  const std::vector<HistoryPoint>& history() const { return history_; }

  void step();
  void fe_iteration();
  void le_iteration();

  int fe_iterations() const { return fe_iters_; }
  int le_iterations() const { return le_iters_; }
  int surrogate_iterations() const { return surrogate_iters_; }
  int fd_fallbacks() const { return fd_fallbacks_; }
  bool last_used_surrogate() const { return last_used_surrogate_; }

 private:
  double eval(const Vector& x);
  std::optional<Vector> surrogate_gradient();
  void add_point(const Vector& x, double f, Provenance tag);

  const TestProblem& p_;
  FleConfig cfg_;
  Rng rng_;
  FleState st_;
  long budget_;
  double best_;
  std::vector<HistoryPoint> history_;
  int fe_iters_ = 0;
  int le_iters_ = 0;
  int surrogate_iters_ = 0;
  int fd_fallbacks_ = 0;
  bool last_used_surrogate_ = false;
  // network surrogate, kept warm across iterations
  std::optional<MlpWeights> net_;
  AdamState adam_;
  int nn_calls_ = 0;
  std::uint64_t seed_;
};

using IterationObserver = std::function<void(const IterationInfo&)>;

/// Runs from problem.x0 until the budget is spent or alpha < alpha_min.
/// The initial evaluation at x0 is always made, even with budget 0.
RunResult run(const TestProblem& problem, const FleConfig& cfg, std::uint64_t seed,
              const IterationObserver& observer = {});

}  // namespace sdfo
