#pragma once

// Interpolation / regression models m(z) = sum_j c_j phi_j(z) and their
// original-coordinate form m^(x) = m((x - base) / delta).

#include <json.hpp>

#include "sdfo/basis.hpp"
#include "sdfo/sampling.hpp"

namespace sdfo {

enum class FitMode { Determined, Regression };

struct PolyModel {
  Basis basis;
  Vector coeffs;
  Vector base;
  double delta = 1.0;
  FitMode mode = FitMode::Determined;

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;  // (1/delta) grad m(z)
  Matrix hessian(const Vector& x) const;   // (1/delta^2) hess m(z)

  nlohmann::json to_json() const;
  static PolyModel from_json(const nlohmann::json& j);
};

/// Rows phi(z^i)^T for the normalized points.
Matrix design_matrix(const Basis& b, const std::vector<Vector>& z);

/// Square system M c = f(Y) by partial-pivot LU. Requires |Y| = basis size.
/// Throws PoisednessError when the reciprocal condition estimate is below 1e-14.
PolyModel fit_interpolation(const Basis& b, const SampleSet& y, const Vector& fy);

/// Least squares by column-pivoted QR. Requires |Y| >= basis size and full
/// column rank (same 1e-14 threshold on |R_kk| / |R_11|).
PolyModel fit_regression(const Basis& b, const SampleSet& y, const Vector& fy);

/// Determined fit when |Y| equals the basis size, regression otherwise.
PolyModel fit_poly(const Basis& b, const SampleSet& y, const Vector& fy);

inline constexpr double kPoisednessRcond = 1e-14;

}  // namespace sdfo
