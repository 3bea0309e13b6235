#include <doctest.h>

#include "oracles.hpp"
#include "sdfo/poly_model.hpp"
#include "sdfo/problems.hpp"

using namespace sdfo;

namespace {

Vector values(const TestProblem& p, const SampleSet& s) {
  Vector f(s.size());
  for (int i = 0; i < s.size(); ++i) f[i] = p.evaluate(s.to_original(s.points[i]));
  return f;
}

}  // namespace

TEST_CASE("one-dimensional quadratic by hand") {
  std::vector<Vector> raw;
  for (double t : {0.0, 0.5, 1.0}) raw.push_back(Vector::Constant(1, t));
  const SampleSet y = shift_scale(raw);
  const Vector fy = (Vector(3) << 0.0, 0.25, 1.0).finished();
  const PolyModel m = fit_interpolation(Basis::natural(1), y, fy);
  CHECK(m.mode == FitMode::Determined);
  CHECK(m.coeffs[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(m.coeffs[1]) < 1e-14);
  CHECK(m.coeffs[2] == doctest::Approx(2.0));
}

TEST_CASE("constant data gives a constant model") {
  const auto pts = sample_ball(Vector::Zero(3), 1.0, 10, 4);
  const SampleSet y = shift_scale(Vector::Zero(3), pts);
  const PolyModel m = fit_interpolation(Basis::natural(3), y, Vector::Constant(10, 4.5));
  CHECK(m.coeffs[0] == doctest::Approx(4.5));
  CHECK(m.coeffs.tail(9).norm() < 1e-10);
}

TEST_CASE("collinear points are not poised") {
  std::vector<Vector> raw;
  for (double t : {0.0, 0.5, 1.0}) raw.push_back((Vector(2) << t, 2 * t).finished());
  const SampleSet y = shift_scale(raw);
  CHECK_THROWS_AS(fit_interpolation(Basis::natural(2, 1), y, Vector::Ones(3)), PoisednessError);
  CHECK_THROWS_AS(fit_interpolation(Basis::natural(2), y, Vector::Ones(3)), std::invalid_argument);
}

TEST_CASE("regression on exact quadratic data") {
  const auto p = find_problem("QUAD_TRIDIAG", 3);
  const auto pts = sample_ball(p.x0(), 1.0, 25, 9);
  const SampleSet y = shift_scale(p.x0(), pts);
  const Vector fy = values(p, y);
  const PolyModel m = fit_regression(Basis::natural(3), y, fy);
  CHECK(m.mode == FitMode::Regression);
  const Matrix a = design_matrix(m.basis, y.points);
  CHECK((a * m.coeffs - fy).norm() <= 1e-10 * fy.norm());
  CHECK(fit_poly(Basis::natural(3), y, fy).mode == FitMode::Regression);
}

TEST_CASE("regression on a square system agrees with interpolation") {
  const auto p = find_problem("QUAD_RANK1", 4);
  const auto pts = sample_ball(p.x0(), 1.0, 15, 1);
  const SampleSet y = shift_scale(p.x0(), pts);
  Vector fy = values(p, y);
  for (int i = 0; i < fy.size(); ++i) fy[i] += std::sin(3.0 * i);  // not a quadratic
  const PolyModel a = fit_interpolation(Basis::natural(4), y, fy);
  const PolyModel b = fit_regression(Basis::natural(4), y, fy);
  CHECK((a.coeffs - b.coeffs).norm() <= 1e-10 * std::max(1.0, a.coeffs.norm()));
}

TEST_CASE("hat-diagonal on a quadratic-size sample regresses") {
  const int n = 4;
  const auto p = find_problem("ARWHEAD", n);
  const auto pts = sample_ball(p.x0(), 1.0, quadratic_count(n), 2);
  const SampleSet y = shift_scale(p.x0(), pts);
  const PolyModel m = fit_poly(Basis::hat_diagonal(n, ActivationKind::Sigmoid), y, values(p, y));
  CHECK(m.mode == FitMode::Regression);
  CHECK(m.coeffs.size() == 3 * n + 1);
}

TEST_CASE("chain rule scaling") {
  // m(z) = z^2/2 with delta = 2 is x^2/8: Hessian 1/4
  std::vector<Vector> raw;
  for (double t : {0.0, 1.0, 2.0}) raw.push_back(Vector::Constant(1, t));
  const SampleSet y = shift_scale(raw);
  REQUIRE(y.delta == 2.0);
  Vector fy(3);
  for (int i = 0; i < 3; ++i) fy[i] = 0.5 * y.points[i][0] * y.points[i][0];
  const PolyModel m = fit_interpolation(Basis::natural(1), y, fy);
  CHECK(m.hessian(Vector::Constant(1, 0.3))(0, 0) == doctest::Approx(0.25));
  CHECK(m.gradient(Vector::Constant(1, 1.0))[0] == doctest::Approx(0.25));
}

TEST_CASE("determined natural interpolation reproduces synthetic quadratics") {
  for (int n : {2, 5, 10}) {
    for (const auto& p : catalog(ProblemSetId::Synthetic, n)) {
      CAPTURE(p.name());
      CAPTURE(n);
      const auto pts = sample_ball(p.x0(), 1.0, quadratic_count(n), 100 + n);
      const SampleSet y = shift_scale(p.x0(), pts);
      const PolyModel m = fit_poly(Basis::natural(n), y, values(p, y));
      CHECK(m.mode == FitMode::Determined);
      Rng rng = make_rng(n);
      for (int k = 0; k < 3; ++k) {
        const Vector x = p.x0() + oracle::random_vector(n, rng);
        CHECK(std::abs(m.value(x) - p.evaluate(x)) <= 1e-6 * std::max(1.0, std::abs(p.evaluate(x))));
        CHECK(oracle::rel(m.gradient(x), p.gradient(x)) <= 1e-6);
        CHECK(oracle::rel(m.hessian(x), p.hessian(x)) <= 1e-6);
      }
    }
  }
}

TEST_CASE("model derivatives match central differences") {
  const int n = 3;
  const auto p = find_problem("SINQUAD", n);
  const auto pts = sample_ball(p.x0(), 1.0, 20, 5);
  const SampleSet y = shift_scale(p.x0(), pts);
  const Vector fy = values(p, y);
  std::vector<PolyModel> models{fit_poly(Basis::natural(n), y, fy),
                                fit_poly(Basis::tilde_cross(n, ActivationKind::SiLU), y, fy),
                                fit_poly(Basis::hat_diagonal(n, ActivationKind::Tanh), y, fy)};
  Rng rng = make_rng(3);
  for (const auto& m : models) {
    for (int k = 0; k < 20; ++k) {
      const Vector x = p.x0() + oracle::random_vector(n, rng);
      auto f = [&](const Vector& v) { return m.value(v); };
      auto g = [&](const Vector& v) { return m.gradient(v); };
      CHECK(oracle::rel(m.gradient(x), oracle::fd_grad(f, x)) <= 1e-6);
      CHECK(oracle::rel(m.hessian(x), oracle::fd_jac(g, x)) <= 1e-6);
    }
  }
}

TEST_CASE("json round trip") {
  const auto pts = sample_ball(Vector::Ones(2), 1.0, 6, 8);
  const SampleSet y = shift_scale(Vector::Ones(2), pts);
  Vector fy(6);
  for (int i = 0; i < 6; ++i) fy[i] = std::exp(pts[i][0]) + pts[i][1];
  const PolyModel m = fit_poly(Basis::tilde_cross(2, ActivationKind::ELU), y, fy);
  const PolyModel r = PolyModel::from_json(m.to_json());
  const Vector x = (Vector(2) << 0.7, 1.2).finished();
  CHECK(r.value(x) == m.value(x));
  CHECK(r.gradient(x) == m.gradient(x));
}
