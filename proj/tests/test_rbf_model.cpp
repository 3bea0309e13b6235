#include <doctest.h>

#include "oracles.hpp"
#include "sdfo/problems.hpp"
#include "sdfo/rbf_model.hpp"

using namespace sdfo;

namespace {

Matrix tail_matrix(const RbfModel& m) {
  Matrix p(m.centers.size(), m.dim() + 1);
  for (std::size_t i = 0; i < m.centers.size(); ++i) {
    p(i, 0) = 1.0;
    p.row(i).tail(m.dim()) = m.centers[i].transpose();
  }
  return p;
}

}  // namespace

TEST_CASE("affine data is reproduced by the tail alone") {
  const int n = 3;
  const Vector a = (Vector(3) << 1.5, -2, 0.25).finished();
  const auto pts = sample_ball(Vector::Zero(n), 1.0, 12, 21);
  const SampleSet y = shift_scale(Vector::Zero(n), pts);
  Vector fy(12);
  for (int i = 0; i < 12; ++i) fy[i] = 3.0 + a.dot(pts[i]);
  const RbfModel m = fit_rbf(y, fy);
  for (int i = 0; i < 12; ++i) CHECK(std::abs(m.value(pts[i]) - fy[i]) <= 1e-8 * std::abs(fy[i]));
  CHECK((tail_matrix(m).transpose() * m.lambda).norm() <= 1e-8);
  CHECK(m.lambda.norm() <= 1e-8);
  CHECK(oracle::rel(m.gradient(Vector::Constant(n, 0.1)), a) <= 1e-8);
}

TEST_CASE("zero data on a simplex") {
  std::vector<Vector> raw{Vector::Zero(2), (Vector(2) << 1, 0).finished(),
                          (Vector(2) << 0, 1).finished()};
  const RbfModel m = fit_rbf(shift_scale(raw), Vector::Zero(3));
  CHECK(m.lambda.isZero());
  CHECK(m.gamma.isZero());
}

TEST_CASE("duplicate centers are rejected") {
  std::vector<Vector> raw{Vector::Zero(2), (Vector(2) << 1, 0).finished(),
                          (Vector(2) << 0, 1).finished(), (Vector(2) << 1, 0).finished()};
  CHECK_THROWS_AS(fit_rbf(shift_scale(raw), (Vector(4) << 0, 1, 2, 1).finished()), PoisednessError);
}

TEST_CASE("seeded fits interpolate and satisfy the side conditions") {
  const auto probs = catalog(ProblemSetId::Set38, 5);
  for (int s = 0; s < 20; ++s) {
    const auto& p = probs[s % probs.size()];
    const auto pts = sample_ball(p.x0(), 1.0, quadratic_count(5), 500 + s);
    const SampleSet y = shift_scale(p.x0(), pts);
    Vector fy(y.size());
    for (int i = 0; i < y.size(); ++i) fy[i] = p.evaluate(pts[i]);
    const RbfModel m = fit_rbf(y, fy);
    const double scale = std::max(1.0, fy.cwiseAbs().maxCoeff());
    for (int i = 0; i < y.size(); ++i) CHECK(std::abs(m.value(pts[i]) - fy[i]) <= 1e-8 * scale);
    CHECK((tail_matrix(m).transpose() * m.lambda).norm() <= 1e-8 * std::max(1.0, m.lambda.norm()));
  }
}

TEST_CASE("kernel derivatives match central differences") {
  const int n = 3;
  const auto p = find_problem("ENGVAL1", n);
  const auto pts = sample_ball(p.x0(), 1.0, 10, 2);
  const SampleSet y = shift_scale(p.x0(), pts);
  Vector fy(10);
  for (int i = 0; i < 10; ++i) fy[i] = p.evaluate(pts[i]);
  Rng rng = make_rng(6);
  for (auto k : {RbfKernel::Gaussian, RbfKernel::Cubic, RbfKernel::Multiquadric,
                 RbfKernel::InverseMultiquadric}) {
    CAPTURE(to_string(k));
    const RbfModel m = fit_rbf(y, fy, k, 0.5);
    for (int t = 0; t < 20; ++t) {
      const Vector x = p.x0() + oracle::random_vector(n, rng);
      auto f = [&](const Vector& v) { return m.value(v); };
      auto g = [&](const Vector& v) { return m.gradient(v); };
      CHECK(oracle::rel(m.gradient(x), oracle::fd_grad(f, x)) <= 1e-6);
      const Matrix h = m.hessian(x);
      CHECK((h - h.transpose()).norm() <= 1e-12 * std::max(1.0, h.norm()));
      CHECK(oracle::rel(h, oracle::fd_jac(g, x)) <= 1e-6);
    }
  }
}

TEST_CASE("kernel formulas") {
  CHECK(rbf_h(RbfKernel::Gaussian, 2.0, 4.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(rbf_h(RbfKernel::Cubic, 2.0, 9.0) == 8.0);
  CHECK(rbf_h(RbfKernel::Multiquadric, 3.0, 16.0) == doctest::Approx(125.0));
  CHECK(rbf_h(RbfKernel::InverseMultiquadric, 3.0, 16.0) == doctest::Approx(0.2));
  for (auto k : {RbfKernel::Gaussian, RbfKernel::Cubic}) CHECK(parse_rbf_kernel(to_string(k)) == k);
}
