#pragma once

// Quadratic-type bases in model coordinates.
//
//   Natural      {1, z_i, z_i^2/2, z_i z_j}              (degree 1 keeps {1, z_i})
//   TildeCross   {1, z_i, z_i^2/2, s(z_i z_j)}
//   HatDiagonal  {1, z_1..z_n, s(z_1)..s(z_n), z_1^2/2..z_n^2/2}
//
// Quadratic terms of Natural/TildeCross are listed for i <= j in
// lexicographic order, so n=2 gives (1, a, b, a^2/2, ab, b^2/2).

#include <optional>
#include <string_view>
#include <vector>

#include "sdfo/activation.hpp"
#include "sdfo/types.hpp"

namespace sdfo {

enum class BasisKind { Natural, TildeCross, HatDiagonal };

std::string_view to_string(BasisKind k);
BasisKind parse_basis_kind(std::string_view text);

class Basis {
 public:
  static Basis natural(int n, int degree = 2);
  static Basis tilde_cross(int n, Activation s);
  static Basis hat_diagonal(int n, Activation s);

  BasisKind kind() const { return kind_; }
  int dim() const { return n_; }
  int degree() const { return degree_; }
  const std::optional<Activation>& activation() const { return act_; }
  int size() const { return static_cast<int>(terms_.size()); }

  Vector eval(const Vector& z) const;
  Matrix grad(const Vector& z) const;          // size x n
  Matrix hess(const Vector& z, int j) const;   // n x n, symmetric

  // sum_j c_j phi_j and its derivatives, without forming per-term matrices
  double combine(const Vector& c, const Vector& z) const;
  Vector combine_grad(const Vector& c, const Vector& z) const;
  Matrix combine_hess(const Vector& c, const Vector& z) const;

 private:
  enum class Op { Const, Linear, Act, Square, Cross, ActCross };
  struct Term {
    Op op;
    int i = 0;
    int j = 0;
  };

  Basis(BasisKind kind, int n, int degree, std::optional<Activation> act);
  void check(const Vector& z) const;
  const Activation& s() const { return *act_; }

  BasisKind kind_;
  int n_;
  int degree_;
  std::optional<Activation> act_;
  std::vector<Term> terms_;
};

}  // namespace sdfo
