#include "sdfo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace sdfo {

double relative_error(double a, double b) {
  const double den = std::max(std::abs(a), std::abs(b));
  if (den == 0.0) return 0.0;
  return std::abs(a - b) / den;
}

double relative_error(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("relative_error: size mismatch");
  const double den = std::max(a.norm(), b.norm());
  if (den == 0.0) return 0.0;
  return (a - b).norm() / den;
}

double matrix_norm(const Matrix& a, MatrixNorm norm) {
  if (a.size() == 0) return 0.0;
  if (norm == MatrixNorm::Frobenius) return a.norm();
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()[0];
}

double relative_error(const Matrix& a, const Matrix& b, MatrixNorm norm) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("relative_error: shape mismatch");
  const double den = std::max(matrix_norm(a, norm), matrix_norm(b, norm));
  if (den == 0.0) return 0.0;
  return matrix_norm(a - b, norm) / den;
}

ApproxErrors approx_errors(double model_val, double f_val, const Vector& model_grad,
                           const Vector& f_grad, const Matrix& model_hess, const Matrix& f_hess,
                           MatrixNorm norm) {
  return {relative_error(model_val, f_val), relative_error(model_grad, f_grad),
          relative_error(model_hess, f_hess, norm)};
}

namespace {
void check_tau(double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in (0, 1]");
}
}  // namespace

std::optional<int> iterations_to_tau(const std::vector<double>& trace, double l0, double ll,
                                     double tau) {
  check_tau(tau);
  const double need = (1.0 - tau) * (l0 - ll);
  for (std::size_t i = 0; i < trace.size(); ++i)
    if (l0 - trace[i] >= need) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<long> evals_to_tau(const std::vector<HistoryPoint>& history, double f0, double fl,
                                 double tau) {
  check_tau(tau);
  const double need = (1.0 - tau) * (f0 - fl);
  for (const auto& h : history)
    if (f0 - h.best_f >= need) return h.evals;
  return std::nullopt;
}

std::vector<std::vector<double>> performance_ratios(const ProfileInput& t) {
  if (t.empty()) throw std::invalid_argument("performance_profile: no problems");
  const std::size_t ns = t.front().size();
  if (ns == 0) throw std::invalid_argument("performance_profile: no solvers");
  std::vector<std::vector<double>> r(t.size(), std::vector<double>(ns, 0.0));
  std::vector<bool> failed_row(t.size(), false);
  double max_ratio = 0.0;
  bool any = false;
  for (std::size_t p = 0; p < t.size(); ++p) {
    if (t[p].size() != ns) throw std::invalid_argument("performance_profile: ragged table");
    double best = 0.0;
    bool found = false;
    for (const auto& v : t[p]) {
      if (!v) continue;
      if (!(*v > 0.0) || !std::isfinite(*v))
        throw std::invalid_argument("performance_profile: measures must be positive and finite");
      if (!found || *v < best) best = *v;
      found = true;
    }
    if (!found) {
      failed_row[p] = true;
      continue;
    }
    for (std::size_t s = 0; s < ns; ++s) {
      if (!t[p][s]) continue;
      r[p][s] = *t[p][s] / best;
      max_ratio = any ? std::max(max_ratio, r[p][s]) : r[p][s];
      any = true;
    }
  }
  const double fail = 2.0 * (any ? max_ratio : 1.0);
  for (std::size_t p = 0; p < t.size(); ++p)
    for (std::size_t s = 0; s < ns; ++s)
      if (failed_row[p] || !t[p][s]) r[p][s] = fail;
  return r;
}

std::vector<ProfileCurve> performance_profile(const ProfileInput& t,
                                              const std::vector<std::string>& solvers) {
  const auto r = performance_ratios(t);
  const std::size_t ns = r.front().size();
  if (solvers.size() != ns) throw std::invalid_argument("performance_profile: solver names mismatch");
  std::vector<double> alphas;
  for (const auto& row : r) alphas.insert(alphas.end(), row.begin(), row.end());
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  const double np = static_cast<double>(r.size());
  std::vector<ProfileCurve> curves(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    std::vector<double> col;
    col.reserve(r.size());
    for (const auto& row : r) col.push_back(row[s]);
    std::sort(col.begin(), col.end());
    curves[s].solver = solvers[s];
    curves[s].alpha = alphas;
    curves[s].rho.reserve(alphas.size());
    for (double a : alphas) {
      const auto cnt = std::upper_bound(col.begin(), col.end(), a) - col.begin();
      curves[s].rho.push_back(static_cast<double>(cnt) / np);
    }
  }
  return curves;
}

double profile_at(const ProfileCurve& c, double alpha) {
  const auto it = std::upper_bound(c.alpha.begin(), c.alpha.end(), alpha);
  if (it == c.alpha.begin()) return 0.0;
  return c.rho[static_cast<std::size_t>(it - c.alpha.begin()) - 1];
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileCurve>& curves) {
  os << "solver,alpha,rho\n";
  char buf[96];
  for (const auto& c : curves) {
    for (std::size_t k = 0; k < c.alpha.size(); ++k) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", c.alpha[k], c.rho[k]);
      os << c.solver << buf;
    }
  }
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty set");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

BoxStats boxplot_stats(const std::vector<double>& values) {
  BoxStats b;
  std::vector<double> v;
  for (double x : values) {
    if (x >= 0.0 && x <= 5.0)
      v.push_back(x);
    else
      ++b.excluded;
  }
  if (v.empty()) throw std::invalid_argument("boxplot_stats: no values in [0, 5]");
  std::sort(v.begin(), v.end());
  b.count = static_cast<int>(v.size());
  b.median = median(v);
  const std::size_t half = v.size() / 2;
  if (half == 0) {
    b.lower = b.upper = b.median;
  } else {
    b.lower = median(std::vector<double>(v.begin(), v.begin() + half));
    b.upper = median(std::vector<double>(v.end() - half, v.end()));
  }
  const double iqr = b.upper - b.lower;
  const double lo = b.lower - 1.5 * iqr, hi = b.upper + 1.5 * iqr;
  b.whisker_lo = b.median;
  b.whisker_hi = b.median;
  bool first = true;
  for (double x : v) {
    if (x < lo || x > hi) {
      b.outliers.push_back(x);
      continue;
    }
    if (first) b.whisker_lo = x;
    b.whisker_hi = x;
    first = false;
  }
  return b;
}

}  // namespace sdfo
