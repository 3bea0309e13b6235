#include "sdfo/poly_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sdfo {

namespace {

void check_inputs(const Basis& b, const SampleSet& y, const Vector& fy) {
  if (y.dim() != b.dim()) throw std::invalid_argument("fit: basis and sample dimensions differ");
  if (fy.size() != y.size()) throw std::invalid_argument("fit: value count differs from sample size");
  if (!fy.allFinite()) throw std::invalid_argument("fit: non-finite function values");
  if (!(y.delta > 0.0)) throw std::invalid_argument("fit: delta must be positive");
}

Vector json_vector(const nlohmann::json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

Matrix design_matrix(const Basis& b, const std::vector<Vector>& z) {
  Matrix m(static_cast<Eigen::Index>(z.size()), b.size());
  for (std::size_t i = 0; i < z.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = b.eval(z[i]).transpose();
  return m;
}

double PolyModel::value(const Vector& x) const {
  if (x.size() != base.size()) throw std::invalid_argument("model: dimension mismatch");
  return basis.combine(coeffs, (x - base) / delta);
}

Vector PolyModel::gradient(const Vector& x) const {
  if (x.size() != base.size()) throw std::invalid_argument("model: dimension mismatch");
  return basis.combine_grad(coeffs, (x - base) / delta) / delta;
}

Matrix PolyModel::hessian(const Vector& x) const {
  if (x.size() != base.size()) throw std::invalid_argument("model: dimension mismatch");
  return basis.combine_hess(coeffs, (x - base) / delta) / (delta * delta);
}

PolyModel fit_interpolation(const Basis& b, const SampleSet& y, const Vector& fy) {
  check_inputs(b, y, fy);
  if (y.size() != b.size()) {
    std::ostringstream os;
    os << "fit_interpolation: need exactly " << b.size() << " points, got " << y.size();
    throw std::invalid_argument(os.str());
  }
  const Matrix m = design_matrix(b, y.points);
  Eigen::PartialPivLU<Matrix> lu(m);
  const double rc = lu.rcond();
  if (!(rc >= kPoisednessRcond)) {
    std::ostringstream os;
    os << "interpolation matrix is not poised (rcond " << rc << ")";
    throw PoisednessError(os.str());
  }
  Vector c = lu.solve(fy);
  // one step of iterative refinement
  c += lu.solve(fy - m * c);
  return PolyModel{b, std::move(c), y.base, y.delta, FitMode::Determined};
}

PolyModel fit_regression(const Basis& b, const SampleSet& y, const Vector& fy) {
  check_inputs(b, y, fy);
  if (y.size() < b.size()) {
    std::ostringstream os;
    os << "fit_regression: need at least " << b.size() << " points, got " << y.size();
    throw std::invalid_argument(os.str());
  }
  const Matrix m = design_matrix(b, y.points);
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  const auto r = qr.matrixR().diagonal().cwiseAbs();
  const double rmax = r.size() ? r[0] : 0.0;
  const double rmin = r.size() ? r.minCoeff() : 0.0;
  if (!(rmax > 0.0) || !(rmin / rmax >= kPoisednessRcond)) {
    std::ostringstream os;
    os << "regression matrix is column-rank deficient (|R| ratio " << (rmax > 0 ? rmin / rmax : 0.0)
       << ")";
    throw PoisednessError(os.str());
  }
  Vector c = qr.solve(fy);
  return PolyModel{b, std::move(c), y.base, y.delta, FitMode::Regression};
}

PolyModel fit_poly(const Basis& b, const SampleSet& y, const Vector& fy) {
  if (y.size() == b.size()) return fit_interpolation(b, y, fy);
  return fit_regression(b, y, fy);
}

nlohmann::json PolyModel::to_json() const {
  nlohmann::json j;
  j["basis"] = std::string(to_string(basis.kind()));
  j["n"] = basis.dim();
  j["degree"] = basis.degree();
  if (basis.activation()) {
    j["activation"] = std::string(to_string(basis.activation()->kind));
    j["alpha"] = basis.activation()->alpha;
  }
  j["coeffs"] = std::vector<double>(coeffs.data(), coeffs.data() + coeffs.size());
  j["base"] = std::vector<double>(base.data(), base.data() + base.size());
  j["delta"] = delta;
  j["fit_mode"] = mode == FitMode::Determined ? "determined" : "regression";
  return j;
}

PolyModel PolyModel::from_json(const nlohmann::json& j) {
  const BasisKind kind = parse_basis_kind(j.at("basis").get<std::string>());
  const int n = j.at("n").get<int>();
  auto act = [&] {
    return Activation(parse_activation(j.at("activation").get<std::string>()),
                      j.value("alpha", 1.0));
  };
  Basis b = kind == BasisKind::Natural       ? Basis::natural(n, j.value("degree", 2))
            : kind == BasisKind::TildeCross ? Basis::tilde_cross(n, act())
                                             : Basis::hat_diagonal(n, act());
  PolyModel m{b, json_vector(j.at("coeffs")), json_vector(j.at("base")), j.at("delta").get<double>(),
              j.at("fit_mode").get<std::string>() == "determined" ? FitMode::Determined
                                                                  : FitMode::Regression};
  if (m.coeffs.size() != b.size() || m.base.size() != n)
    throw std::invalid_argument("PolyModel::from_json: inconsistent sizes");
  return m;
}

}  // namespace sdfo
