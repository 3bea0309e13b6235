#pragma once

// Catalog of smooth unconstrained test objectives with exact derivatives.
//
// Scalable problems (SET38) follow the classic formulas of the corresponding
// CUTEst models; fixed-dimension problems (SET53) carry the CUTEst dimension.
// Starting points are the conventional ones of the reference formulas.
// SYNTHETIC holds convex quadratics with known minimizers used as oracles.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdfo/types.hpp"

namespace sdfo {

enum class ProblemSetId { Set38, Set53, Synthetic };

std::string_view to_string(ProblemSetId id);
ProblemSetId parse_problem_set(std::string_view text);

class TestProblem {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;
  using HessianFn = std::function<Matrix(const Vector&)>;

  TestProblem(std::string name, Vector x0, ValueFn value, GradientFn gradient, HessianFn hessian,
              std::optional<double> known_minimum = std::nullopt);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(x0_.size()); }
  const Vector& x0() const { return x0_; }
  // Optimal value when it is known in closed form (SYNTHETIC members).
  std::optional<double> known_minimum() const { return known_minimum_; }

  // Throw std::invalid_argument on dimension mismatch or non-finite input.
  double evaluate(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  // Exactly symmetric.
  Matrix hessian(const Vector& x) const;

 private:
  void check(const Vector& x) const;

  std::string name_;
  Vector x0_;
  ValueFn value_;
  GradientFn gradient_;
  HessianFn hessian_;
  std::optional<double> known_minimum_;
};

inline double evaluate(const TestProblem& p, const Vector& x) { return p.evaluate(x); }
inline Vector gradient(const TestProblem& p, const Vector& x) { return p.gradient(x); }
inline Matrix hessian(const TestProblem& p, const Vector& x) { return p.hessian(x); }

/// Members of a problem set with the dimension resolved.
///
/// SET38 and SYNTHETIC require `n` (n >= 2); SET53 members have fixed
/// dimensions and ignore `n`. Order is deterministic (alphabetical for the
/// CUTEst-named sets).
std::vector<TestProblem> catalog(ProblemSetId set, std::optional<int> n = std::nullopt);

/// Looks a problem up by name across all sets. `n` is required for scalable
/// problems.
TestProblem find_problem(std::string_view name, std::optional<int> n = std::nullopt);

/// Names in a set, without instantiating.
std::vector<std::string> problem_names(ProblemSetId set);

/// Convex quadratic 0.5 (x - c)^T Q (x - c) with exact derivatives.
TestProblem make_quadratic(std::string name, Matrix q, Vector minimizer, Vector x0);

}  // namespace sdfo
