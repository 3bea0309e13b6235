#include <doctest.h>

#include <limits>
#include <sstream>

#include "oracles.hpp"
#include "sdfo/metrics.hpp"

using namespace sdfo;

namespace {

// rho_s(alpha) straight from the definition, failures handled the same way
double brute_rho(const ProfileInput& t, std::size_t s, double alpha) {
  double worst = 0.0;
  bool any = false;
  for (const auto& row : t) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : row)
      if (v) best = std::min(best, *v);
    if (!std::isfinite(best)) continue;
    for (const auto& v : row)
      if (v) {
        worst = std::max(worst, *v / best);
        any = true;
      }
  }
  const double fail = 2.0 * (any ? worst : 1.0);
  int hit = 0;
  for (const auto& row : t) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : row)
      if (v) best = std::min(best, *v);
    const double r = (row[s] && std::isfinite(best)) ? *row[s] / best : fail;
    if (r <= alpha) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(t.size());
}

}  // namespace

TEST_CASE("relative errors") {
  CHECK(relative_error(0.0, 0.0) == 0.0);
  CHECK(relative_error(1.0, 0.0) == 1.0);
  CHECK(relative_error(2.0, 1.0) == 0.5);
  CHECK(relative_error(-1.0, 1.0) == 2.0);
  CHECK(relative_error(Vector(Vector::Zero(3)), Vector(Vector::Zero(3))) == 0.0);
  const Vector a = (Vector(2) << 3.0, 4.0).finished();
  CHECK(relative_error(Vector(Vector::Zero(2)), a) == 1.0);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 4.0;
  Matrix e = d;
  e(0, 0) = 0.0;
  CHECK(relative_error(e, d) == doctest::Approx(3.0 / 4.0));
  CHECK(relative_error(e, d, MatrixNorm::Frobenius) == doctest::Approx(3.0 / 5.0));
  const ApproxErrors ae = approx_errors(1.0, 1.0, a, a, d, d);
  CHECK(ae.value_err == 0.0);
  CHECK(ae.grad_err == 0.0);
  CHECK(ae.hess_err == 0.0);
  CHECK_THROWS(relative_error(Vector(Vector::Zero(2)), Vector(Vector::Zero(3))));
}

TEST_CASE("spectral norm agrees with eigenvalues for symmetric matrices") {
  Rng rng = make_rng(1);
  for (int t = 0; t < 10; ++t) {
    Matrix a = Matrix::NullaryExpr(5, 5, [&] { return std::uniform_real_distribution<>(-1, 1)(rng); });
    a = (a + a.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    CHECK(matrix_norm(a, MatrixNorm::Spectral) ==
          doctest::Approx(es.eigenvalues().cwiseAbs().maxCoeff()).epsilon(1e-12));
  }
}

TEST_CASE("iterations to tolerance") {
  const std::vector<double> trace{10, 6, 3, 1.5, 1.05, 1};
  CHECK(iterations_to_tau(trace, 10, 1, 0.5) == 2);   // need drop 4.5
  CHECK(iterations_to_tau(trace, 10, 1, 1.0) == 0);
  CHECK(iterations_to_tau(trace, 10, 1, 1e-2) == 4);  // need 8.91
  CHECK(iterations_to_tau(trace, 10, 0, 1e-2) == std::nullopt);
  CHECK_THROWS(iterations_to_tau(trace, 10, 1, 0.0));
  CHECK_THROWS(iterations_to_tau(trace, 10, 1, 1.5));
}

TEST_CASE("evaluations to tolerance") {
  const std::vector<HistoryPoint> h{{1, 5.0}, {4, 3.0}, {9, 1.2}, {15, 1.0}};
  CHECK(evals_to_tau(h, 5.0, 1.0, 0.1) == 9);
  CHECK(evals_to_tau(h, 5.0, 1.0, 1e-5) == 15);
  CHECK(evals_to_tau(h, 5.0, 0.0, 1e-5) == std::nullopt);
  // f0 == fL: every point passes
  CHECK(evals_to_tau(h, 5.0, 5.0, 1e-5) == 1);
}

TEST_CASE("profile from a hand table") {
  const ProfileInput t{{1.0, 2.0}, {4.0, 2.0}, {3.0, std::nullopt}};
  const auto r = performance_ratios(t);
  CHECK(r[0][0] == 1.0);
  CHECK(r[0][1] == 2.0);
  CHECK(r[1][0] == 2.0);
  CHECK(r[1][1] == 1.0);
  CHECK(r[2][0] == 1.0);
  CHECK(r[2][1] == 4.0);  // twice the largest finite ratio
  const auto c = performance_profile(t, {"a", "b"});
  REQUIRE(c.size() == 2);
  CHECK(c[0].alpha == std::vector<double>{1.0, 2.0, 4.0});
  CHECK(c[0].rho == std::vector<double>{2.0 / 3, 1.0, 1.0});
  CHECK(c[1].rho == std::vector<double>{1.0 / 3, 2.0 / 3, 1.0});
  CHECK(profile_at(c[1], 0.5) == 0.0);
  CHECK(profile_at(c[1], 3.0) == doctest::Approx(2.0 / 3));
  std::ostringstream os;
  write_profile_csv(os, c);
  CHECK(os.str().rfind("solver,alpha,rho\na,1,0.66666666666666663\n", 0) == 0);
}

TEST_CASE("profile rows where every solver fails") {
  const ProfileInput t{{std::nullopt, std::nullopt}, {1.0, 1.0}};
  const auto r = performance_ratios(t);
  CHECK(r[0][0] == 2.0);
  CHECK(r[0][1] == 2.0);
  CHECK_THROWS(performance_ratios({{0.0, 1.0}}));
  CHECK_THROWS(performance_ratios({}));
  CHECK_THROWS(performance_profile({{1.0}}, {"a", "b"}));
}

TEST_CASE("profile matches brute force on random tables") {
  Rng rng = make_rng(3);
  std::uniform_int_distribution<int> pick(1, 20);
  for (int trial = 0; trial < 50; ++trial) {
    const int np = 1 + pick(rng) % 12, ns = 1 + pick(rng) % 4;
    ProfileInput t(np);
    for (auto& row : t)
      for (int s = 0; s < ns; ++s) {
        const int v = pick(rng);
        row.push_back(v <= 3 ? std::nullopt : std::optional<double>(v));
      }
    std::vector<std::string> names(ns, "s");
    const auto c = performance_profile(t, names);
    for (int s = 0; s < ns; ++s) {
      CHECK(std::is_sorted(c[s].rho.begin(), c[s].rho.end()));
      CHECK(c[s].rho.back() == 1.0);
      for (double a : {0.5, 1.0, 1.3, 2.0, 3.7, 10.0, 100.0})
        CHECK(profile_at(c[s], a) == doctest::Approx(brute_rho(t, s, a)));
    }
    // at alpha = 1 the curves cover every solvable problem at least once
    double sum = 0.0;
    for (int s = 0; s < ns; ++s) sum += profile_at(c[s], 1.0);
    int solvable = 0;
    for (const auto& row : t)
      for (const auto& v : row)
        if (v) {
          ++solvable;
          break;
        }
    CHECK(sum * np >= solvable - 1e-9);
  }
}

TEST_CASE("profile is invariant under scaling a row") {
  const ProfileInput t{{1.0, 3.0, 2.0}, {5.0, 4.0, std::nullopt}};
  ProfileInput u = t;
  for (auto& v : u[1])
    if (v) *v *= 7.5;
  CHECK(performance_ratios(t) == performance_ratios(u));
}

TEST_CASE("box statistics") {
  const BoxStats a = boxplot_stats({5, 1, 3, 2, 4});
  CHECK(a.median == 3.0);
  CHECK(a.lower == 1.5);
  CHECK(a.upper == 4.5);
  CHECK(a.whisker_lo == 1.0);
  CHECK(a.whisker_hi == 5.0);
  CHECK(a.outliers.empty());
  CHECK(a.count == 5);

  const BoxStats b = boxplot_stats({0.1, 7.0});
  CHECK(b.count == 1);
  CHECK(b.excluded == 1);
  CHECK(b.median == 0.1);

  const BoxStats c = boxplot_stats({1, 1.1, 1.2, 1.3, 1.4, 1.5, 4.9});
  CHECK(c.outliers == std::vector<double>{4.9});
  CHECK(c.whisker_hi == 1.5);
  CHECK(c.upper == doctest::Approx(1.5));

  CHECK(boxplot_stats({1, 2, 3, 4}).lower == 1.5);
  CHECK_THROWS(boxplot_stats({-1.0, 6.0}));
  CHECK(median({4, 1, 2}) == 2.0);
  CHECK_THROWS(median({}));
}
