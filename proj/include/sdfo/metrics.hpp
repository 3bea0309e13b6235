#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sdfo/types.hpp"

namespace sdfo {

struct ApproxErrors {
  double value_err = 0.0;
  double grad_err = 0.0;
  double hess_err = 0.0;
};

enum class MatrixNorm { Spectral, Frobenius };

/// |a - b| / max(|a|, |b|) with the both-zero case defined as 0.
double relative_error(double a, double b);
double relative_error(const Vector& a, const Vector& b);
double relative_error(const Matrix& a, const Matrix& b, MatrixNorm norm = MatrixNorm::Spectral);
double matrix_norm(const Matrix& a, MatrixNorm norm);

ApproxErrors approx_errors(double model_val, double f_val, const Vector& model_grad,
                           const Vector& f_grad, const Matrix& model_hess, const Matrix& f_hess,
                           MatrixNorm norm = MatrixNorm::Spectral);

/// First index i with L0 - L[i] >= (1 - tau)(L0 - L_L); nullopt means FAIL.
std::optional<int> iterations_to_tau(const std::vector<double>& trace, double l0, double ll,
                                     double tau);

struct HistoryPoint {
  long evals;
  double best_f;
};
/// Evaluation count of the first history point passing the test.
std::optional<long> evals_to_tau(const std::vector<HistoryPoint>& history, double f0, double fl,
                                 double tau);

/// t[p][s]; nullopt marks a failure.
using ProfileInput = std::vector<std::vector<std::optional<double>>>;

struct ProfileCurve {
  std::string solver;
  std::vector<double> alpha;  // sorted breakpoints
  std::vector<double> rho;    // rho_s(alpha[k])
};

/// Performance ratios r_{p,s}; failures get 2 * (max finite ratio); rows with
/// no finite entry give that failure ratio for every solver.
std::vector<std::vector<double>> performance_ratios(const ProfileInput& t);

/// Right-continuous step curves sampled at every distinct ratio.
std::vector<ProfileCurve> performance_profile(const ProfileInput& t,
                                              const std::vector<std::string>& solvers);

/// Value of a step curve at alpha.
double profile_at(const ProfileCurve& c, double alpha);

void write_profile_csv(std::ostream& os, const std::vector<ProfileCurve>& curves);

struct BoxStats {
  double median = 0.0;
  double lower = 0.0;  // median of the lower half
  double upper = 0.0;  // median of the upper half
  double whisker_lo = 0.0;
  double whisker_hi = 0.0;
  std::vector<double> outliers;
  int count = 0;     // values kept after excluding those outside [0, 5]
  int excluded = 0;
};

double median(std::vector<double> v);

/// Drops values outside [0, 5], then halved-median quartiles (halves exclude
/// the median for odd counts) and 1.5 IQR outliers.
BoxStats boxplot_stats(const std::vector<double>& values);

}  // namespace sdfo
