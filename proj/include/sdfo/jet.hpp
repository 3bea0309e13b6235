#pragma once

// Forward-mode differentiation scalars used to obtain exact gradients and
// Hessians of the closed-form test objectives.
//
// A jet with empty derivative storage is a constant; arithmetic treats the
// missing parts as zero so formulas can mix jets and plain doubles freely.

#include <cmath>
#include <type_traits>

#include "sdfo/types.hpp"

namespace sdfo {

/// Value and gradient.
struct Jet1 {
  double v = 0.0;
  Vector g;

  Jet1() = default;
  Jet1(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Jet1(double value, Vector grad) : v(value), g(std::move(grad)) {}

  static Jet1 variable(double value, Eigen::Index i, Eigen::Index n) {
    Jet1 j(value, Vector::Zero(n));
    j.g[i] = 1.0;
    return j;
  }
  bool is_constant() const { return g.size() == 0; }

  // s(a) given s(a.v), s'(a.v), s''(a.v)
  Jet1 chain(double f0, double f1, double /*f2*/) const {
    if (is_constant()) return Jet1(f0);
    return Jet1(f0, f1 * g);
  }
};

/// Value, gradient and Hessian.
struct Jet2 {
  double v = 0.0;
  Vector g;
  Matrix h;

  Jet2() = default;
  Jet2(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Jet2(double value, Vector grad, Matrix hess) : v(value), g(std::move(grad)), h(std::move(hess)) {}

  static Jet2 variable(double value, Eigen::Index i, Eigen::Index n) {
    Jet2 j(value, Vector::Zero(n), Matrix::Zero(n, n));
    j.g[i] = 1.0;
    return j;
  }
  bool is_constant() const { return g.size() == 0; }

  Jet2 chain(double f0, double f1, double f2) const {
    if (is_constant()) return Jet2(f0);
    Matrix hh = f1 * h;
    hh.noalias() += f2 * g * g.transpose();
    return Jet2(f0, f1 * g, std::move(hh));
  }
};

// ---- Jet1 arithmetic ----

inline Jet1 operator+(const Jet1& a, const Jet1& b) {
  if (a.is_constant()) return Jet1(a.v + b.v, b.g);
  if (b.is_constant()) return Jet1(a.v + b.v, a.g);
  return Jet1(a.v + b.v, a.g + b.g);
}
inline Jet1 operator-(const Jet1& a) {
  if (a.is_constant()) return Jet1(-a.v);
  return Jet1(-a.v, -a.g);
}
inline Jet1 operator-(const Jet1& a, const Jet1& b) { return a + (-b); }
inline Jet1 operator*(const Jet1& a, const Jet1& b) {
  if (a.is_constant() && b.is_constant()) return Jet1(a.v * b.v);
  if (a.is_constant()) return Jet1(a.v * b.v, a.v * b.g);
  if (b.is_constant()) return Jet1(a.v * b.v, b.v * a.g);
  return Jet1(a.v * b.v, a.v * b.g + b.v * a.g);
}
inline Jet1 reciprocal(const Jet1& a) {
  const double r = 1.0 / a.v;
  return a.chain(r, -r * r, 2.0 * r * r * r);
}
inline Jet1 operator/(const Jet1& a, const Jet1& b) {
  if (b.is_constant()) return a * Jet1(1.0 / b.v);
  return a * reciprocal(b);
}

// ---- Jet2 arithmetic ----

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  if (a.is_constant()) return Jet2(a.v + b.v, b.g, b.h);
  if (b.is_constant()) return Jet2(a.v + b.v, a.g, a.h);
  return Jet2(a.v + b.v, a.g + b.g, a.h + b.h);
}
inline Jet2 operator-(const Jet2& a) {
  if (a.is_constant()) return Jet2(-a.v);
  return Jet2(-a.v, -a.g, -a.h);
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return a + (-b); }
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  if (a.is_constant() && b.is_constant()) return Jet2(a.v * b.v);
  if (a.is_constant()) return Jet2(a.v * b.v, a.v * b.g, a.v * b.h);
  if (b.is_constant()) return Jet2(a.v * b.v, b.v * a.g, b.v * a.h);
  Matrix h = a.v * b.h + b.v * a.h;
  h.noalias() += a.g * b.g.transpose();
  h.noalias() += b.g * a.g.transpose();
  return Jet2(a.v * b.v, a.v * b.g + b.v * a.g, std::move(h));
}
inline Jet2 reciprocal(const Jet2& a) {
  const double r = 1.0 / a.v;
  return a.chain(r, -r * r, 2.0 * r * r * r);
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.is_constant()) return a * Jet2(1.0 / b.v);
  return a * reciprocal(b);
}

// Mixed double/jet overloads resolve through the implicit constructor; the
// compound forms keep the generic formulas readable.
template <class J>
  requires std::is_same_v<J, Jet1> || std::is_same_v<J, Jet2>
J& operator+=(J& a, const std::type_identity_t<J>& b) {
  a = a + b;
  return a;
}
template <class J>
  requires std::is_same_v<J, Jet1> || std::is_same_v<J, Jet2>
J& operator-=(J& a, const std::type_identity_t<J>& b) {
  a = a - b;
  return a;
}
template <class J>
  requires std::is_same_v<J, Jet1> || std::is_same_v<J, Jet2>
J& operator*=(J& a, const std::type_identity_t<J>& b) {
  a = a * b;
  return a;
}

// ---- elementary functions (found by ADL from generic objective code) ----

template <class J>
  requires std::is_same_v<J, Jet1> || std::is_same_v<J, Jet2>
J sin(const J& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return a.chain(s, c, -s);
}
template <class J>
  requires std::is_same_v<J, Jet1> || std::is_same_v<J, Jet2>
J cos(const J& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return a.chain(c, -s, -c);
}
template <class J>
  requires std::is_same_v<J, Jet1> || std::is_same_v<J, Jet2>
J exp(const J& a) {
  const double e = std::exp(a.v);
  return a.chain(e, e, e);
}
template <class J>
  requires std::is_same_v<J, Jet1> || std::is_same_v<J, Jet2>
J log(const J& a) {
  return a.chain(std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}
template <class J>
  requires std::is_same_v<J, Jet1> || std::is_same_v<J, Jet2>
J sqrt(const J& a) {
  const double s = std::sqrt(a.v);
  return a.chain(s, 0.5 / s, -0.25 / (s * a.v));
}
template <class J>
  requires std::is_same_v<J, Jet1> || std::is_same_v<J, Jet2>
J pow(const J& a, double p) {
  const double v = std::pow(a.v, p);
  return a.chain(v, p * std::pow(a.v, p - 1.0), p * (p - 1.0) * std::pow(a.v, p - 2.0));
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet1& x) { return x.v; }
inline double value_of(const Jet2& x) { return x.v; }

}  // namespace sdfo
