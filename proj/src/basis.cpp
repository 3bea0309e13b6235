#include "sdfo/basis.hpp"

#include <stdexcept>
#include <string>

namespace sdfo {

std::string_view to_string(BasisKind k) {
  switch (k) {
    case BasisKind::Natural:
      return "natural";
    case BasisKind::TildeCross:
      return "tilde_cross";
    case BasisKind::HatDiagonal:
      return "hat_diagonal";
  }
  return "?";
}

BasisKind parse_basis_kind(std::string_view text) {
  if (text == "natural") return BasisKind::Natural;
  if (text == "tilde_cross") return BasisKind::TildeCross;
  if (text == "hat_diagonal") return BasisKind::HatDiagonal;
  throw std::invalid_argument("unknown basis kind '" + std::string(text) + "'");
}

Basis::Basis(BasisKind kind, int n, int degree, std::optional<Activation> act)
    : kind_(kind), n_(n), degree_(degree), act_(act) {
  if (n < 1) throw std::invalid_argument("basis dimension must be positive");
  terms_.push_back({Op::Const});
  for (int i = 0; i < n; ++i) terms_.push_back({Op::Linear, i});
  if (kind == BasisKind::HatDiagonal) {
    for (int i = 0; i < n; ++i) terms_.push_back({Op::Act, i});
    for (int i = 0; i < n; ++i) terms_.push_back({Op::Square, i});
    return;
  }
  if (degree < 2) return;
  const Op cross = kind == BasisKind::TildeCross ? Op::ActCross : Op::Cross;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (i == j)
        terms_.push_back({Op::Square, i});
      else
        terms_.push_back({cross, i, j});
    }
  }
}

Basis Basis::natural(int n, int degree) {
  if (degree != 1 && degree != 2) throw std::invalid_argument("natural basis degree must be 1 or 2");
  return Basis(BasisKind::Natural, n, degree, std::nullopt);
}

Basis Basis::tilde_cross(int n, Activation s) { return Basis(BasisKind::TildeCross, n, 2, s); }

Basis Basis::hat_diagonal(int n, Activation s) { return Basis(BasisKind::HatDiagonal, n, 2, s); }

void Basis::check(const Vector& z) const {
  if (z.size() != n_) throw std::invalid_argument("basis: dimension mismatch");
}

Vector Basis::eval(const Vector& z) const {
  check(z);
  Vector out(size());
  for (int k = 0; k < size(); ++k) {
    const Term& t = terms_[k];
    switch (t.op) {
      case Op::Const:
        out[k] = 1.0;
        break;
      case Op::Linear:
        out[k] = z[t.i];
        break;
      case Op::Act:
        out[k] = s().value(z[t.i]);
        break;
      case Op::Square:
        out[k] = 0.5 * z[t.i] * z[t.i];
        break;
      case Op::Cross:
        out[k] = z[t.i] * z[t.j];
        break;
      case Op::ActCross:
        out[k] = s().value(z[t.i] * z[t.j]);
        break;
    }
  }
  return out;
}

Matrix Basis::grad(const Vector& z) const {
  check(z);
  Matrix g = Matrix::Zero(size(), n_);
  for (int k = 0; k < size(); ++k) {
    const Term& t = terms_[k];
    switch (t.op) {
      case Op::Const:
        break;
      case Op::Linear:
        g(k, t.i) = 1.0;
        break;
      case Op::Act:
        g(k, t.i) = s().d1(z[t.i]);
        break;
      case Op::Square:
        g(k, t.i) = z[t.i];
        break;
      case Op::Cross:
        g(k, t.i) = z[t.j];
        g(k, t.j) = z[t.i];
        break;
      case Op::ActCross: {
        const double d = s().d1(z[t.i] * z[t.j]);
        g(k, t.i) = d * z[t.j];
        g(k, t.j) = d * z[t.i];
        break;
      }
    }
  }
  return g;
}

Matrix Basis::hess(const Vector& z, int j) const {
  check(z);
  if (j < 0 || j >= size()) throw std::out_of_range("basis: term index out of range");
  Vector e = Vector::Zero(size());
  e[j] = 1.0;
  return combine_hess(e, z);
}

double Basis::combine(const Vector& c, const Vector& z) const {
  if (c.size() != size()) throw std::invalid_argument("basis: coefficient size mismatch");
  return c.dot(eval(z));
}

Vector Basis::combine_grad(const Vector& c, const Vector& z) const {
  if (c.size() != size()) throw std::invalid_argument("basis: coefficient size mismatch");
  return grad(z).transpose() * c;
}

Matrix Basis::combine_hess(const Vector& c, const Vector& z) const {
  check(z);
  if (c.size() != size()) throw std::invalid_argument("basis: coefficient size mismatch");
  Matrix h = Matrix::Zero(n_, n_);
  for (int k = 0; k < size(); ++k) {
    const Term& t = terms_[k];
    const double ck = c[k];
    if (ck == 0.0) continue;
    switch (t.op) {
      case Op::Const:
      case Op::Linear:
        break;
      case Op::Act:
        h(t.i, t.i) += ck * s().d2(z[t.i]);
        break;
      case Op::Square:
        h(t.i, t.i) += ck;
        break;
      case Op::Cross:
        h(t.i, t.j) += ck;
        h(t.j, t.i) += ck;
        break;
      case Op::ActCross: {
        const double u = z[t.i] * z[t.j];
        const double d1 = s().d1(u), d2 = s().d2(u);
        h(t.i, t.i) += ck * d2 * z[t.j] * z[t.j];
        h(t.j, t.j) += ck * d2 * z[t.i] * z[t.i];
        const double off = ck * (d2 * u + d1);
        h(t.i, t.j) += off;
        h(t.j, t.i) += off;
        break;
      }
    }
  }
  return h;
}

}  // namespace sdfo
