#include "sdfo/rbf_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sdfo/poly_model.hpp"

namespace sdfo {

std::string_view to_string(RbfKernel k) {
  switch (k) {
    case RbfKernel::Gaussian:
      return "gaussian";
    case RbfKernel::Cubic:
      return "cubic";
    case RbfKernel::Multiquadric:
      return "multiquadric";
    case RbfKernel::InverseMultiquadric:
      return "inverse_multiquadric";
  }
  return "?";
}

RbfKernel parse_rbf_kernel(std::string_view text) {
  for (auto k : {RbfKernel::Gaussian, RbfKernel::Cubic, RbfKernel::Multiquadric,
                 RbfKernel::InverseMultiquadric})
    if (to_string(k) == text) return k;
  throw std::invalid_argument("unknown rbf kernel '" + std::string(text) + "'");
}

namespace {

// psi(t) with t = r^2 and its first two t-derivatives (smooth kernels)
struct Psi {
  double v, d1, d2;
};

Psi psi(RbfKernel k, double t, double rho2) {
  switch (k) {
    case RbfKernel::Gaussian: {
      const double e = std::exp(-t / rho2);
      return {e, -e / rho2, e / (rho2 * rho2)};
    }
    case RbfKernel::Multiquadric: {
      const double u = t + rho2, su = std::sqrt(u);
      return {u * su, 1.5 * su, 0.75 / su};
    }
    case RbfKernel::InverseMultiquadric: {
      const double u = t + rho2, su = std::sqrt(u);
      return {1.0 / su, -0.5 / (u * su), 0.75 / (u * u * su)};
    }
    case RbfKernel::Cubic: {
      const double r = std::sqrt(t);
      return {r * t, 0.0, 0.0};
    }
  }
  return {0.0, 0.0, 0.0};
}

}  // namespace

double rbf_h(RbfKernel k, double r, double rho2) { return psi(k, r * r, rho2).v; }

double RbfModel::value_z(const Vector& z) const {
  double v = gamma[0] + gamma.tail(z.size()).dot(z);
  for (std::size_t i = 0; i < centers.size(); ++i)
    v += lambda[static_cast<Eigen::Index>(i)] * psi(kernel, (z - centers[i]).squaredNorm(), rho2).v;
  return v;
}

Vector RbfModel::gradient_z(const Vector& z) const {
  Vector g = gamma.tail(z.size());
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const Vector d = z - centers[i];
    const double li = lambda[static_cast<Eigen::Index>(i)];
    if (kernel == RbfKernel::Cubic) {
      g += li * 3.0 * d.norm() * d;
    } else {
      g += li * 2.0 * psi(kernel, d.squaredNorm(), rho2).d1 * d;
    }
  }
  return g;
}

Matrix RbfModel::hessian_z(const Vector& z) const {
  const Eigen::Index n = z.size();
  Matrix h = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const Vector d = z - centers[i];
    const double li = lambda[static_cast<Eigen::Index>(i)];
    if (kernel == RbfKernel::Cubic) {
      const double r = d.norm();
      if (r == 0.0) continue;
      h.diagonal().array() += li * 3.0 * r;
      h.noalias() += (li * 3.0 / r) * d * d.transpose();
    } else {
      const Psi p = psi(kernel, d.squaredNorm(), rho2);
      h.diagonal().array() += li * 2.0 * p.d1;
      h.noalias() += (li * 4.0 * p.d2) * d * d.transpose();
    }
  }
  return 0.5 * (h + h.transpose());
}

double RbfModel::value(const Vector& x) const {
  if (x.size() != dim()) throw std::invalid_argument("rbf model: dimension mismatch");
  return value_z((x - base) / delta);
}

Vector RbfModel::gradient(const Vector& x) const {
  if (x.size() != dim()) throw std::invalid_argument("rbf model: dimension mismatch");
  return gradient_z((x - base) / delta) / delta;
}

Matrix RbfModel::hessian(const Vector& x) const {
  if (x.size() != dim()) throw std::invalid_argument("rbf model: dimension mismatch");
  return hessian_z((x - base) / delta) / (delta * delta);
}

RbfModel fit_rbf(const SampleSet& y, const Vector& fy, RbfKernel kernel, double rho2) {
  const int n = y.dim();
  const int m = y.size();
  if (fy.size() != m) throw std::invalid_argument("fit_rbf: value count differs from sample size");
  if (m < n + 1) throw std::invalid_argument("fit_rbf: need at least n+1 points");
  if (!fy.allFinite()) throw std::invalid_argument("fit_rbf: non-finite function values");
  if (!(rho2 > 0.0)) throw std::invalid_argument("fit_rbf: rho^2 must be positive");

  // repeated centers give identical rows; the LU condition estimate can miss that
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if ((y.points[i] - y.points[j]).lpNorm<Eigen::Infinity>() <=
          1e-14 * std::max(1.0, y.points[i].lpNorm<Eigen::Infinity>()))
        throw PoisednessError("fit_rbf: duplicate centers");

  Matrix p(m, n + 1);
  for (int i = 0; i < m; ++i) {
    p(i, 0) = 1.0;
    p.row(i).tail(n) = y.points[i].transpose();
  }
  Eigen::ColPivHouseholderQR<Matrix> pqr(p);
  const auto r = pqr.matrixR().diagonal().cwiseAbs();
  if (!(r.minCoeff() >= kPoisednessRcond * r[0]))
    throw PoisednessError("fit_rbf: sample points are affinely dependent");

  const int k = m + n + 1;
  Matrix a = Matrix::Zero(k, k);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double v = psi(kernel, (y.points[i] - y.points[j]).squaredNorm(), rho2).v;
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  a.block(0, m, m, n + 1) = p;
  a.block(m, 0, n + 1, m) = p.transpose();
  Vector rhs = Vector::Zero(k);
  rhs.head(m) = fy;

  Eigen::PartialPivLU<Matrix> lu(a);
  const double rc = lu.rcond();
  if (!(rc >= kPoisednessRcond)) {
    std::ostringstream os;
    os << "fit_rbf: saddle matrix is singular (rcond " << rc << ")";
    throw PoisednessError(os.str());
  }
  Vector sol = lu.solve(rhs);
  for (int it = 0; it < 3; ++it) sol += lu.solve(rhs - a * sol);

  RbfModel model;
  model.kernel = kernel;
  model.rho2 = rho2;
  model.centers = y.points;
  model.lambda = sol.head(m);
  model.gamma = sol.tail(n + 1);
  model.base = y.base;
  model.delta = y.delta;
  return model;
}

nlohmann::json RbfModel::to_json() const {
  nlohmann::json j;
  j["kernel"] = std::string(to_string(kernel));
  j["rho2"] = rho2;
  j["lambda"] = std::vector<double>(lambda.data(), lambda.data() + lambda.size());
  j["gamma"] = std::vector<double>(gamma.data(), gamma.data() + gamma.size());
  j["base"] = std::vector<double>(base.data(), base.data() + base.size());
  j["delta"] = delta;
  auto& c = j["centers"];
  c = nlohmann::json::array();
  for (const auto& z : centers) c.push_back(std::vector<double>(z.data(), z.data() + z.size()));
  return j;
}

}  // namespace sdfo
