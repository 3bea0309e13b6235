#include "sdfo/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "sdfo/jet.hpp"

namespace sdfo {

std::string_view to_string(ProblemSetId id) {
  switch (id) {
    case ProblemSetId::Set38:
      return "SET38";
    case ProblemSetId::Set53:
      return "SET53";
    case ProblemSetId::Synthetic:
      return "SYNTHETIC";
  }
  return "?";
}

ProblemSetId parse_problem_set(std::string_view text) {
  if (text == "SET38") return ProblemSetId::Set38;
  if (text == "SET53") return ProblemSetId::Set53;
  if (text == "SYNTHETIC") return ProblemSetId::Synthetic;
  throw std::invalid_argument("unknown problem set '" + std::string(text) + "'");
}

TestProblem::TestProblem(std::string name, Vector x0, ValueFn value, GradientFn gradient,
                         HessianFn hessian, std::optional<double> known_minimum)
    : name_(std::move(name)),
      x0_(std::move(x0)),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)),
      known_minimum_(known_minimum) {
  if (x0_.size() < 1) throw std::invalid_argument("problem " + name_ + ": empty start point");
}

void TestProblem::check(const Vector& x) const {
  if (x.size() != x0_.size()) {
    std::ostringstream os;
    os << name_ << ": dimension mismatch (expected " << x0_.size() << ", got " << x.size() << ")";
    throw std::invalid_argument(os.str());
  }
  if (!x.allFinite()) throw std::invalid_argument(name_ + ": non-finite input");
}

double TestProblem::evaluate(const Vector& x) const {
  check(x);
  return value_(x);
}

Vector TestProblem::gradient(const Vector& x) const {
  check(x);
  return gradient_(x);
}

Matrix TestProblem::hessian(const Vector& x) const {
  check(x);
  Matrix h = hessian_(x);
  return 0.5 * (h + h.transpose());
}

namespace {

template <class T>
T sq(const T& a) {
  return a * a;
}

template <class T>
T quartic(const T& a) {
  return sq(sq(a));
}

// Builds a problem from a generic formula `f(const std::vector<T>&) -> T`;
// derivatives come from forward-mode jets, so they are exact up to rounding.
template <class F>
TestProblem make_ad_problem(std::string name, Vector x0, F f) {
  auto value = [f](const Vector& x) {
    std::vector<double> v(x.data(), x.data() + x.size());
    return f(v);
  };
  auto grad = [f](const Vector& x) {
    const Eigen::Index n = x.size();
    std::vector<Jet1> v;
    v.reserve(n);
    for (Eigen::Index i = 0; i < n; ++i) v.push_back(Jet1::variable(x[i], i, n));
    Jet1 r = f(v);
    return r.is_constant() ? Vector(Vector::Zero(n)) : r.g;
  };
  auto hess = [f](const Vector& x) {
    const Eigen::Index n = x.size();
    std::vector<Jet2> v;
    v.reserve(n);
    for (Eigen::Index i = 0; i < n; ++i) v.push_back(Jet2::variable(x[i], i, n));
    Jet2 r = f(v);
    return r.is_constant() ? Matrix(Matrix::Zero(n, n)) : r.h;
  };
  return TestProblem(std::move(name), std::move(x0), value, grad, hess);
}

#define SDFO_SCALAR_T using T = std::decay_t<decltype(x[0])>; \
  using std::sin; using std::cos; using std::exp; using std::sqrt; using std::log

// ---------------------------------------------------------------------------
// Scalable problems

TestProblem arglina(int n) {
  return make_ad_problem("ARGLINA", Vector::Ones(n), [](const auto& x) {
    SDFO_SCALAR_T;
    const std::size_t n = x.size();
    const double m = 2.0 * static_cast<double>(n);
    T s = 0.0;
    for (const auto& xi : x) s += xi;
    T f = 0.0;
    for (std::size_t i = 0; i < n; ++i) f += sq(x[i] - (2.0 / m) * s - 1.0);
    f += (m - static_cast<double>(n)) * sq(-(2.0 / m) * s - 1.0);
    return f;
  });
}

TestProblem arwhead(int n) {
  return make_ad_problem("ARWHEAD", Vector::Ones(n), [](const auto& x) {
    SDFO_SCALAR_T;
    const std::size_t n = x.size();
    T f = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) f += sq(sq(x[i]) + sq(x[n - 1])) - 4.0 * x[i] + 3.0;
    return f;
  });
}

TestProblem brownal(int n) {
  return make_ad_problem("BROWNAL", Vector::Constant(n, 0.5), [](const auto& x) {
    SDFO_SCALAR_T;
    const std::size_t n = x.size();
    T s = 0.0;
    T prod = 1.0;
    for (const auto& xi : x) {
      s += xi;
      prod *= xi;
    }
    T f = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) f += sq(x[i] + s - static_cast<double>(n + 1));
    f += sq(prod - 1.0);
    return f;
  });
}

TestProblem cosine(int n) {
  return make_ad_problem("COSINE", Vector::Ones(n), [](const auto& x) {
    SDFO_SCALAR_T;
    T f = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) f += cos(-0.5 * x[i + 1] + sq(x[i]));
    return f;
  });
}

TestProblem dixon3dq(int n) {
  return make_ad_problem("DIXON3DQ", Vector::Constant(n, -1.0), [](const auto& x) {
    SDFO_SCALAR_T;
    const std::size_t n = x.size();
    T f = sq(x[0] - 1.0);
    for (std::size_t i = 1; i + 1 < n; ++i) f += sq(x[i] - x[i + 1]);
    f += sq(x[n - 1] - 1.0);
    return f;
  });
}

TestProblem shifted_quartic(const char* name, int n) {
  return make_ad_problem(name, Vector::Constant(n, 2.0), [](const auto& x) {
    SDFO_SCALAR_T;
    T f = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) f += quartic(x[i] - static_cast<double>(i + 1));
    return f;
  });
}

TestProblem engval1(int n) {
  return make_ad_problem("ENGVAL1", Vector::Constant(n, 2.0), [](const auto& x) {
    SDFO_SCALAR_T;
    T f = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
      f += sq(sq(x[i]) + sq(x[i + 1])) - 4.0 * x[i] + 3.0;
    return f;
  });
}

TestProblem extrosnb(int n) {
  return make_ad_problem("EXTROSNB", Vector::Constant(n, -1.0), [](const auto& x) {
    SDFO_SCALAR_T;
    T f = sq(x[0] - 1.0);
    for (std::size_t i = 1; i < x.size(); ++i) f += 100.0 * sq(x[i] - sq(x[i - 1]));
    return f;
  });
}

TestProblem fletchcr(int n) {
  return make_ad_problem("FLETCHCR", Vector::Zero(n), [](const auto& x) {
    SDFO_SCALAR_T;
    T f = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
      f += 100.0 * sq(x[i + 1] - x[i] + 1.0 - sq(x[i]));
    return f;
  });
}

TestProblem freuroth(int n) {
  Vector x0 = Vector::Zero(n);
  x0[0] = 0.5;
  x0[1] = -2.0;
  return make_ad_problem("FREUROTH", x0, [](const auto& x) {
    SDFO_SCALAR_T;
    T f = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const T& u = x[i + 1];
      f += sq(-13.0 + x[i] + ((5.0 - u) * u - 2.0) * u);
      f += sq(-29.0 + x[i] + ((1.0 + u) * u - 14.0) * u);
    }
    return f;
  });
}

TestProblem morebv(int n) {
  const double h = 1.0 / (n + 1);
  Vector x0(n);
  for (int i = 0; i < n; ++i) {
    const double t = (i + 1) * h;
    x0[i] = t * (t - 1.0);
  }
  return make_ad_problem("MOREBV", x0, [h](const auto& x) {
    SDFO_SCALAR_T;
    const std::size_t n = x.size();
    T f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i + 1) * h;
      T r = 2.0 * x[i];
      if (i > 0) r -= x[i - 1];
      if (i + 1 < n) r -= x[i + 1];
      const T c = x[i] + t + 1.0;
      r += 0.5 * h * h * c * c * c;
      f += sq(r);
    }
    return f;
  });
}

TestProblem noncvxun(int n) {
  Vector x0(n);
  for (int i = 0; i < n; ++i) x0[i] = i + 1.0;
  return make_ad_problem("NONCVXUN", x0, [](const auto& x) {
    SDFO_SCALAR_T;
    const std::size_t n = x.size();
    T f = 0.0;
    for (std::size_t i1 = 1; i1 <= n; ++i1) {
      const std::size_t j = (2 * i1 - 1) % n;
      const std::size_t k = (3 * i1 - 1) % n;
      const T a = x[i1 - 1] + x[j] + x[k];
      f += sq(a) + 4.0 * cos(a);
    }
    return f;
  });
}

TestProblem nondia(int n) {
  return make_ad_problem("NONDIA", Vector::Constant(n, -1.0), [](const auto& x) {
    SDFO_SCALAR_T;
    T f = sq(x[0] - 1.0);
    for (std::size_t i = 1; i < x.size(); ++i) f += 100.0 * sq(x[0] - sq(x[i - 1]));
    return f;
  });
}

TestProblem nondquar(int n) {
  Vector x0(n);
  for (int i = 0; i < n; ++i) x0[i] = (i % 2 == 0) ? 1.0 : -1.0;
  return make_ad_problem("NONDQUAR", x0, [](const auto& x) {
    SDFO_SCALAR_T;
    const std::size_t n = x.size();
    T f = sq(x[0] - x[1]);
    for (std::size_t i = 0; i + 2 < n; ++i) f += quartic(x[i] + x[i + 1] + x[n - 1]);
    f += sq(x[n - 2] + x[n - 1]);
    return f;
  });
}

TestProblem power(int n) {
  return make_ad_problem("POWER", Vector::Ones(n), [](const auto& x) {
    SDFO_SCALAR_T;
    T s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * sq(x[i]);
    return sq(s);
  });
}

TestProblem qing(int n) {
  return make_ad_problem("QING", Vector::Ones(n), [](const auto& x) {
    SDFO_SCALAR_T;
    T f = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) f += sq(sq(x[i]) - static_cast<double>(i + 1));
    return f;
  });
}

TestProblem sinquad(int n) {
  return make_ad_problem("SINQUAD", Vector::Constant(n, 0.1), [](const auto& x) {
    SDFO_SCALAR_T;
    const std::size_t n = x.size();
    const T x1sq = sq(x[0]);
    T f = quartic(x[0] - 1.0);
    for (std::size_t i = 1; i + 1 < n; ++i) f += sq(sin(x[i] - x[n - 1]) - x1sq + sq(x[i]));
    f += sq(sq(x[n - 1]) - x1sq);
    return f;
  });
}

TestProblem tridia(int n) {
  return make_ad_problem("TRIDIA", Vector::Ones(n), [](const auto& x) {
    SDFO_SCALAR_T;
    T f = sq(x[0] - 1.0);
    for (std::size_t i = 1; i < x.size(); ++i)
      f += static_cast<double>(i + 1) * sq(2.0 * x[i] - x[i - 1]);
    return f;
  });
}

TestProblem trigon1(int n) {
  return make_ad_problem("TRIGON1", Vector::Constant(n, 1.0 / n), [](const auto& x) {
    SDFO_SCALAR_T;
    const std::size_t n = x.size();
    T cos_sum = 0.0;
    for (const auto& xi : x) cos_sum += cos(xi);
    T f = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      f += sq(static_cast<double>(n) - cos_sum + static_cast<double>(i + 1) * (1.0 - cos(x[i])) -
              sin(x[i]));
    return f;
  });
}

// ---------------------------------------------------------------------------
// Fixed-dimension problems

TestProblem bard() {
  return make_ad_problem("BARD", Vector::Ones(3), [](const auto& x) {
    SDFO_SCALAR_T;
    static constexpr double y[15] = {0.14, 0.18, 0.22, 0.25, 0.29, 0.32, 0.35, 0.39,
                                     0.37, 0.58, 0.73, 0.96, 1.34, 2.10, 4.39};
    T f = 0.0;
    for (int i = 1; i <= 15; ++i) {
      const double u = i, v = 16 - i, w = std::min(u, v);
      f += sq(y[i - 1] - (x[0] + u / (v * x[1] + w * x[2])));
    }
    return f;
  });
}

TestProblem biggs6() {
  Vector x0(6);
  x0 << 1.0, 2.0, 1.0, 1.0, 1.0, 1.0;
  return make_ad_problem("BIGGS6", x0, [](const auto& x) {
    SDFO_SCALAR_T;
    T f = 0.0;
    for (int i = 1; i <= 13; ++i) {
      const double t = 0.1 * i;
      const double y = std::exp(-t) - 5.0 * std::exp(-10.0 * t) + 3.0 * std::exp(-4.0 * t);
      f += sq(x[2] * exp(-t * x[0]) - x[3] * exp(-t * x[1]) + x[5] * exp(-t * x[4]) - y);
    }
    return f;
  });
}

TestProblem box3() {
  Vector x0(3);
  x0 << 0.0, 10.0, 20.0;
  return make_ad_problem("BOX3", x0, [](const auto& x) {
    SDFO_SCALAR_T;
    T f = 0.0;
    for (int i = 1; i <= 10; ++i) {
      const double t = 0.1 * i;
      f += sq(exp(-t * x[0]) - exp(-t * x[1]) - x[2] * (std::exp(-t) - std::exp(-10.0 * t)));
    }
    return f;
  });
}

TestProblem brybnd() {
  return make_ad_problem("BRYBND", Vector::Constant(10, -1.0), [](const auto& x) {
    SDFO_SCALAR_T;
    const int n = static_cast<int>(x.size());
    T f = 0.0;
    for (int i = 0; i < n; ++i) {
      T r = x[i] * (2.0 + 5.0 * sq(x[i])) + 1.0;
      for (int j = std::max(0, i - 5); j <= std::min(n - 1, i + 1); ++j) {
        if (j != i) r -= x[j] * (1.0 + x[j]);
      }
      f += sq(r);
    }
    return f;
  });
}

TestProblem cube() {
  Vector x0(2);
  x0 << -1.2, 1.0;
  return make_ad_problem("CUBE", x0, [](const auto& x) {
    SDFO_SCALAR_T;
    return T(sq(x[0] - 1.0) + 100.0 * sq(x[1] - x[0] * x[0] * x[0]));
  });
}

TestProblem denschnd() {
  return make_ad_problem("DENSCHND", Vector::Constant(3, 10.0), [](const auto& x) {
    SDFO_SCALAR_T;
    const T& a = x[0];
    const T& b = x[1];
    const T& c = x[2];
    return T(sq(sq(a) + b * b * b - quartic(c)) + sq(2.0 * a * b * c) +
             sq(2.0 * a * b - 3.0 * b * c + a * c));
  });
}

TestProblem denschne() {
  Vector x0(3);
  x0 << 2.0, 3.0, -8.0;
  return make_ad_problem("DENSCHNE", x0, [](const auto& x) {
    SDFO_SCALAR_T;
    return T(sq(x[0]) + sq(x[1] + sq(x[1])) + sq(exp(x[2]) - 1.0));
  });
}

// Dixon-Maany family with n = 3m and weights (alpha, beta, gamma, delta),
// exponents k1..k4.
TestProblem dixmaan(const char* name, double beta, double gamma, double delta, int k1, int k4) {
  const int n = 15;
  return make_ad_problem(name, Vector::Constant(n, 2.0), [=](const auto& x) {
    SDFO_SCALAR_T;
    const int m = n / 3;
    auto w = [&](int i1, int k) { return std::pow(static_cast<double>(i1) / n, k); };
    T f = 1.0;
    for (int i = 0; i < n; ++i) f += w(i + 1, k1) * sq(x[i]);
    if (beta != 0.0) {
      for (int i = 0; i + 1 < n; ++i) f += beta * sq(x[i]) * sq(x[i + 1] + sq(x[i + 1]));
    }
    for (int i = 0; i < 2 * m; ++i) f += gamma * sq(x[i]) * quartic(x[i + m]);
    for (int i = 0; i < m; ++i) f += delta * w(i + 1, k4) * x[i] * x[i + 2 * m];
    return f;
  });
}

TestProblem engval2() {
  Vector x0(3);
  x0 << 1.0, 2.0, 0.0;
  return make_ad_problem("ENGVAL2", x0, [](const auto& x) {
    SDFO_SCALAR_T;
    const T& a = x[0];
    const T& b = x[1];
    const T& c = x[2];
    T f = sq(sq(a) + sq(b) + sq(c) - 1.0);
    f += sq(sq(a) + sq(b) + sq(c - 2.0) - 1.0);
    f += sq(a + b + c - 1.0);
    f += sq(a + b - c + 1.0);
    f += sq(3.0 * sq(b) + a * a * a + sq(5.0 * c - a + 1.0) - 36.0);
    return f;
  });
}

TestProblem expfit() {
  return make_ad_problem("EXPFIT", Vector::Zero(2), [](const auto& x) {
    SDFO_SCALAR_T;
    const double h = 0.25;
    T f = 0.0;
    for (int i = 1; i <= 10; ++i) f += sq(x[0] * exp(x[1] * (i * h)) - i * h);
    return f;
  });
}

TestProblem hairy() {
  Vector x0(2);
  x0 << -5.0, -7.0;
  return make_ad_problem("HAIRY", x0, [](const auto& x) {
    SDFO_SCALAR_T;
    const T fur = sq(sin(7.0 * x[0])) * sq(cos(7.0 * x[1]));
    return T(30.0 * fur + 100.0 * sqrt(0.01 + sq(x[0] - x[1])) + 100.0 * sqrt(0.01 + sq(x[0])));
  });
}

TestProblem himmelbb() {
  Vector x0(2);
  x0 << -1.2, 1.0;
  return make_ad_problem("HIMMELBB", x0, [](const auto& x) {
    SDFO_SCALAR_T;
    const T& a = x[0];
    const T& b = x[1];
    const T om = 1.0 - a;
    const T om5 = sq(sq(om)) * om;
    return sq(a * b * om * (1.0 - b - a * om5));
  });
}

TestProblem himmelbg() {
  return make_ad_problem("HIMMELBG", Vector::Constant(2, 0.5), [](const auto& x) {
    SDFO_SCALAR_T;
    return T(exp(-x[0] - x[1]) * (2.0 * sq(x[0]) + 3.0 * sq(x[1])));
  });
}

TestProblem kowosb() {
  Vector x0(4);
  x0 << 0.25, 0.39, 0.415, 0.39;
  return make_ad_problem("KOWOSB", x0, [](const auto& x) {
    SDFO_SCALAR_T;
    static constexpr double y[11] = {0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                                     0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
    static constexpr double u[11] = {4.0,    2.0,    1.0,   0.5,    0.25,  0.167,
                                     0.125,  0.1,    0.0833, 0.0714, 0.0625};
    T f = 0.0;
    for (int i = 0; i < 11; ++i) {
      const double uu = u[i] * u[i];
      f += sq(y[i] - x[0] * (uu + u[i] * x[1]) / (uu + u[i] * x[2] + x[3]));
    }
    return f;
  });
}

TestProblem watson() {
  return make_ad_problem("WATSON", Vector::Zero(12), [](const auto& x) {
    SDFO_SCALAR_T;
    const int n = static_cast<int>(x.size());
    T f = 0.0;
    for (int i = 1; i <= 29; ++i) {
      const double t = i / 29.0;
      T s1 = 0.0;
      T s2 = 0.0;
      double tp = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j > 0) s1 += (j * tp / t) * x[j];
        s2 += tp * x[j];
        tp *= t;
      }
      f += sq(s1 - sq(s2) - 1.0);
    }
    f += sq(x[0]);
    f += sq(x[1] - sq(x[0]) - 1.0);
    return f;
  });
}

TestProblem woods() {
  Vector x0(4);
  x0 << -3.0, -1.0, -3.0, -1.0;
  return make_ad_problem("WOODS", x0, [](const auto& x) {
    SDFO_SCALAR_T;
    T f = 100.0 * sq(x[1] - sq(x[0])) + sq(1.0 - x[0]);
    f += 90.0 * sq(x[3] - sq(x[2])) + sq(1.0 - x[2]);
    f += 10.0 * sq(x[1] + x[3] - 2.0) + 0.1 * sq(x[1] - x[3]);
    return f;
  });
}

// ---------------------------------------------------------------------------
// Synthetic convex quadratics

TestProblem synthetic(std::string_view name, int n) {
  if (name == "SPHERE") {
    return make_quadratic("SPHERE", Matrix::Identity(n, n), Vector::Zero(n), Vector::Ones(n));
  }
  if (name == "QUAD_DIAG") {
    // eigenvalues log-spaced over [1, 10]
    Vector d(n);
    for (int i = 0; i < n; ++i) d[i] = std::pow(10.0, n > 1 ? double(i) / (n - 1) : 0.0);
    Vector c(n);
    for (int i = 0; i < n; ++i) c[i] = (i % 2 == 0) ? 0.5 : -0.5;
    return make_quadratic("QUAD_DIAG", d.asDiagonal(), c, Vector::Ones(n));
  }
  if (name == "QUAD_TRIDIAG") {
    Matrix q = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      q(i, i) = 3.0;
      if (i + 1 < n) q(i, i + 1) = q(i + 1, i) = -1.0;
    }
    Vector c(n);
    for (int i = 0; i < n; ++i) c[i] = 1.0 + 0.1 * i;
    return make_quadratic("QUAD_TRIDIAG", q, c, Vector::Zero(n));
  }
  if (name == "QUAD_RANK1") {
    const Vector u = Vector::Ones(n) / std::sqrt(double(n));
    Matrix q = Matrix::Identity(n, n) + 4.0 * u * u.transpose();
    Vector c(n);
    for (int i = 0; i < n; ++i) c[i] = -1.0 + 2.0 * i / std::max(1, n - 1);
    return make_quadratic("QUAD_RANK1", q, c, Vector::Constant(n, 2.0));
  }
  throw std::invalid_argument("unknown synthetic problem '" + std::string(name) + "'");
}

struct Entry {
  const char* name;
  ProblemSetId set;
  int fixed_dim;  // 0 when scalable
  TestProblem (*scalable)(int);
  TestProblem (*fixed)();
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"ARGLINA", ProblemSetId::Set38, 0, arglina, nullptr},
      {"ARWHEAD", ProblemSetId::Set38, 0, arwhead, nullptr},
      {"BROWNAL", ProblemSetId::Set38, 0, brownal, nullptr},
      {"COSINE", ProblemSetId::Set38, 0, cosine, nullptr},
      {"DIXON3DQ", ProblemSetId::Set38, 0, dixon3dq, nullptr},
      {"DQRTIC", ProblemSetId::Set38, 0, [](int n) { return shifted_quartic("DQRTIC", n); },
       nullptr},
      {"ENGVAL1", ProblemSetId::Set38, 0, engval1, nullptr},
      {"EXTROSNB", ProblemSetId::Set38, 0, extrosnb, nullptr},
      {"FLETCHCR", ProblemSetId::Set38, 0, fletchcr, nullptr},
      {"FREUROTH", ProblemSetId::Set38, 0, freuroth, nullptr},
      {"MOREBV", ProblemSetId::Set38, 0, morebv, nullptr},
      {"NONCVXUN", ProblemSetId::Set38, 0, noncvxun, nullptr},
      {"NONDIA", ProblemSetId::Set38, 0, nondia, nullptr},
      {"NONDQUAR", ProblemSetId::Set38, 0, nondquar, nullptr},
      {"POWER", ProblemSetId::Set38, 0, power, nullptr},
      {"QING", ProblemSetId::Set38, 0, qing, nullptr},
      {"QUARTC", ProblemSetId::Set38, 0, [](int n) { return shifted_quartic("QUARTC", n); },
       nullptr},
      {"SINQUAD", ProblemSetId::Set38, 0, sinquad, nullptr},
      {"TRIDIA", ProblemSetId::Set38, 0, tridia, nullptr},
      {"TRIGON1", ProblemSetId::Set38, 0, trigon1, nullptr},

      {"BARD", ProblemSetId::Set53, 3, nullptr, bard},
      {"BIGGS6", ProblemSetId::Set53, 6, nullptr, biggs6},
      {"BOX3", ProblemSetId::Set53, 3, nullptr, box3},
      {"BRYBND", ProblemSetId::Set53, 10, nullptr, brybnd},
      {"CUBE", ProblemSetId::Set53, 2, nullptr, cube},
      {"DENSCHND", ProblemSetId::Set53, 3, nullptr, denschnd},
      {"DENSCHNE", ProblemSetId::Set53, 3, nullptr, denschne},
      {"DIXMAANA1", ProblemSetId::Set53, 15, nullptr,
       [] { return dixmaan("DIXMAANA1", 0.0, 0.125, 0.125, 0, 0); }},
      {"DIXMAANE1", ProblemSetId::Set53, 15, nullptr,
       [] { return dixmaan("DIXMAANE1", 0.0, 0.125, 0.125, 1, 1); }},
      {"ENGVAL2", ProblemSetId::Set53, 3, nullptr, engval2},
      {"EXPFIT", ProblemSetId::Set53, 2, nullptr, expfit},
      {"HAIRY", ProblemSetId::Set53, 2, nullptr, hairy},
      {"HIMMELBB", ProblemSetId::Set53, 2, nullptr, himmelbb},
      {"HIMMELBG", ProblemSetId::Set53, 2, nullptr, himmelbg},
      {"KOWOSB", ProblemSetId::Set53, 4, nullptr, kowosb},
      {"WATSON", ProblemSetId::Set53, 12, nullptr, watson},
      {"WOODS", ProblemSetId::Set53, 4, nullptr, woods},
  };
  return entries;
}

const std::vector<std::string>& synthetic_names() {
  static const std::vector<std::string> names = {"SPHERE", "QUAD_DIAG", "QUAD_TRIDIAG",
                                                 "QUAD_RANK1"};
  return names;
}

int require_dim(std::optional<int> n, std::string_view what) {
  if (!n) throw std::invalid_argument(std::string(what) + " requires a dimension n");
  if (*n < 2) throw std::invalid_argument(std::string(what) + " requires n >= 2");
  return *n;
}

}  // namespace

TestProblem make_quadratic(std::string name, Matrix q, Vector minimizer, Vector x0) {
  if (q.rows() != q.cols() || q.rows() != minimizer.size() || q.rows() != x0.size())
    throw std::invalid_argument("make_quadratic: inconsistent shapes");
  q = 0.5 * (q + q.transpose());
  auto value = [q, minimizer](const Vector& x) {
    const Vector d = x - minimizer;
    return 0.5 * d.dot(q * d);
  };
  auto grad = [q, minimizer](const Vector& x) -> Vector { return q * (x - minimizer); };
  auto hess = [q](const Vector&) -> Matrix { return q; };
  return TestProblem(std::move(name), std::move(x0), value, grad, hess, 0.0);
}

std::vector<std::string> problem_names(ProblemSetId set) {
  if (set == ProblemSetId::Synthetic) return synthetic_names();
  std::vector<std::string> names;
  for (const auto& e : registry())
    if (e.set == set) names.emplace_back(e.name);
  return names;
}

std::vector<TestProblem> catalog(ProblemSetId set, std::optional<int> n) {
  std::vector<TestProblem> out;
  switch (set) {
    case ProblemSetId::Set38: {
      const int dim = require_dim(n, "SET38");
      for (const auto& e : registry())
        if (e.set == set) out.push_back(e.scalable(dim));
      break;
    }
    case ProblemSetId::Set53:
      for (const auto& e : registry())
        if (e.set == set) out.push_back(e.fixed());
      break;
    case ProblemSetId::Synthetic: {
      const int dim = require_dim(n, "SYNTHETIC");
      for (const auto& name : synthetic_names()) out.push_back(synthetic(name, dim));
      break;
    }
  }
  return out;
}

TestProblem find_problem(std::string_view name, std::optional<int> n) {
  for (const auto& e : registry()) {
    if (name != e.name) continue;
    if (e.fixed) return e.fixed();
    return e.scalable(require_dim(n, name));
  }
  for (const auto& s : synthetic_names())
    if (name == s) return synthetic(name, require_dim(n, name));
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

}  // namespace sdfo
