#pragma once

// Radial basis interpolation with an affine tail,
//   m(z) = sum_i lambda_i h(||z - z^i||) + gamma_0 + sum_j gamma_j z_j,
// fitted through the saddle system [Phi P; P^T 0][lambda; gamma] = [f; 0]
// in normalized coordinates.

#include <string_view>

#include <json.hpp>

#include "sdfo/sampling.hpp"

namespace sdfo {

enum class RbfKernel { Gaussian, Cubic, Multiquadric, InverseMultiquadric };

std::string_view to_string(RbfKernel k);
RbfKernel parse_rbf_kernel(std::string_view text);

/// h(r); rho2 is ignored by the cubic kernel.
double rbf_h(RbfKernel k, double r, double rho2);

struct RbfModel {
  RbfKernel kernel = RbfKernel::Gaussian;
  double rho2 = 1.0;
  std::vector<Vector> centers;  // normalized
  Vector lambda;
  Vector gamma;  // (gamma_0, gamma_1..gamma_n)
  Vector base;
  double delta = 1.0;

  int dim() const { return static_cast<int>(base.size()); }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Matrix hessian(const Vector& x) const;

  // same quantities in normalized coordinates
  double value_z(const Vector& z) const;
  Vector gradient_z(const Vector& z) const;
  Matrix hessian_z(const Vector& z) const;

  nlohmann::json to_json() const;
};

/// Needs |Y| >= n+1 affinely spanning points. Throws PoisednessError when the
/// tail matrix P is rank deficient or the saddle matrix is numerically singular.
RbfModel fit_rbf(const SampleSet& y, const Vector& fy, RbfKernel kernel = RbfKernel::Gaussian,
                 double rho2 = 1.0);

}  // namespace sdfo
