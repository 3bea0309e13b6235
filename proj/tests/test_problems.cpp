#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sdfo/problems.hpp"

using namespace sdfo;

namespace {

std::vector<TestProblem> everything(int n) {
  std::vector<TestProblem> all = catalog(ProblemSetId::Set38, n);
  for (auto& p : catalog(ProblemSetId::Set53)) all.push_back(std::move(p));
  for (auto& p : catalog(ProblemSetId::Synthetic, n)) all.push_back(std::move(p));
  return all;
}

}  // namespace

TEST_CASE("catalog sizes and dimensions") {
  const auto s38 = catalog(ProblemSetId::Set38, 20);
  CHECK(s38.size() >= 10);
  for (const auto& p : s38) {
    CHECK(p.dim() == 20);
    CHECK(p.x0().size() == 20);
  }
  const auto s53 = catalog(ProblemSetId::Set53);
  bool woods = false;
  for (const auto& p : s53) {
    CHECK(p.x0().size() == p.dim());
    if (p.name() == "WOODS") woods = p.dim() == 4;
  }
  CHECK(woods);
  CHECK(problem_names(ProblemSetId::Set38).size() == s38.size());
  std::set<std::string> names;
  for (const auto& p : s38) names.insert(p.name());
  CHECK(names.size() == s38.size());
}

TEST_CASE("scalable sets need a dimension") {
  CHECK_THROWS_AS(catalog(ProblemSetId::Set38), std::invalid_argument);
  CHECK_THROWS_AS(catalog(ProblemSetId::Synthetic, 1), std::invalid_argument);
  CHECK_THROWS(find_problem("NO_SUCH_PROBLEM", 3));
  CHECK_THROWS(find_problem("ARWHEAD"));
}

TEST_CASE("synthetic sphere") {
  const auto p = find_problem("SPHERE", 2);
  CHECK(p.x0() == Vector::Ones(2));
  CHECK(p.evaluate(Vector::Zero(2)) == 0.0);
  const Vector x = (Vector(2) << 3, 4).finished();
  CHECK(p.evaluate(x) == doctest::Approx(12.5));
  CHECK(p.gradient(x) == x);
  CHECK(p.hessian(Vector::Random(2)) == Matrix::Identity(2, 2));
}

TEST_CASE("hand-evaluated values") {
  CHECK(find_problem("ARWHEAD", 3).evaluate(Vector::Ones(3)) == doctest::Approx(6.0));
  const auto cube = find_problem("CUBE");
  CHECK(cube.evaluate(Vector::Ones(2)) == 0.0);
  CHECK(cube.gradient(Vector::Ones(2)).norm() == 0.0);
}

TEST_CASE("synthetic quadratics have a constant Hessian and known minimum") {
  for (int n : {2, 5, 10}) {
    for (const auto& p : catalog(ProblemSetId::Synthetic, n)) {
      CAPTURE(p.name());
      REQUIRE(p.known_minimum());
      CHECK(*p.known_minimum() == 0.0);
      Rng rng = make_rng(n);
      const Matrix h0 = p.hessian(p.x0());
      for (int k = 0; k < 5; ++k) CHECK((p.hessian(oracle::random_vector(n, rng, -3, 3)) - h0).norm() < 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> es(h0);
      CHECK(es.eigenvalues().minCoeff() > 0.0);
      CHECK(es.eigenvalues().maxCoeff() <= 10.0 + 1e-12);
    }
  }
}

TEST_CASE("derivatives match central differences at seeded points") {
  for (int n : {2, 7, 20}) {
    for (const auto& p : everything(n)) {
      CAPTURE(p.name());
      CAPTURE(p.dim());
      Rng rng = make_rng(fnv1a(p.name()), n);
      auto f = [&](const Vector& x) { return p.evaluate(x); };
      auto g = [&](const Vector& x) { return p.gradient(x); };
      for (int k = 0; k < 20; ++k) {
        const Vector x = p.x0() + oracle::random_vector(p.dim(), rng);
        CHECK(oracle::rel(p.gradient(x), oracle::fd_grad(f, x)) <= 1e-5);
        const Matrix h = p.hessian(x);
        CHECK((h - h.transpose()).norm() == 0.0);
        CHECK(oracle::rel(h, oracle::fd_jac(g, x)) <= 1e-4);
      }
    }
  }
}

TEST_CASE("dimension mismatch is rejected") {
  const auto p = find_problem("ARWHEAD", 4);
  CHECK_THROWS_AS(p.evaluate(Vector::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(p.gradient(Vector::Ones(5)), std::invalid_argument);
}
