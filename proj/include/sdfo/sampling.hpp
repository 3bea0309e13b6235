#pragma once

// Sample generation in balls, shift/scale normalization and the growing
// evaluation dataset used by the surrogate-assisted optimizer.

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "sdfo/types.hpp"

namespace sdfo {

/// Points y^0..y^N in model coordinates z = (y - base) / delta.
struct SampleSet {
  Vector base;
  double delta = 1.0;
  std::vector<Vector> points;

  int dim() const { return static_cast<int>(base.size()); }
  int size() const { return static_cast<int>(points.size()); }
  Vector to_model(const Vector& x) const { return (x - base) / delta; }
  Vector to_original(const Vector& z) const { return base + delta * z; }
};

/// Uniform points in the closed ball B(center; radius).
std::vector<Vector> sample_ball(const Vector& center, double radius, int count, std::uint64_t seed);
Vector sample_ball_point(const Vector& center, double radius, Rng& rng);
/// Uniform direction on the unit sphere.
Vector sample_sphere(int n, Rng& rng);

/// Normalizes `raw` about `base` with delta = max ||y - base||. The base need
/// not be one of the points. Throws if every point coincides with the base.
SampleSet shift_scale(const Vector& base, const std::vector<Vector>& raw);
/// Uses raw[0] as the base; needs at least two distinct points.
SampleSet shift_scale(const std::vector<Vector>& raw);

struct SampleSizes {
  int train;
  int test;
};
/// ((n+1)(n+2)/2, ceil(0.2 * train)).
SampleSizes standard_sizes(int n);
/// Size of the full quadratic basis, (n+1)(n+2)/2.
int quadratic_count(int n);

enum class Provenance { FdStencil, LineSearchFirst, LineSearchAll, BallExtra, Poll, Sample };
std::string_view to_string(Provenance p);

enum class DatasetRole { Train, Test };

/// Append-only set of (x, f(x)) pairs without near-duplicate points.
class Dataset {
 public:
  explicit Dataset(DatasetRole role = DatasetRole::Train) : role_(role) {}

  /// Returns false (and stores nothing) when x duplicates a stored point,
  /// i.e. ||x - x_i||_inf <= 1e-14 * max(1, ||x||_inf).
  bool add(const Vector& x, double f, Provenance tag);
  int find(const Vector& x) const;  // index or -1

  int size() const { return static_cast<int>(xs_.size()); }
  bool empty() const { return xs_.empty(); }
  DatasetRole role() const { return role_; }
  const Vector& x(int i) const { return xs_[i]; }
  double f(int i) const { return fs_[i]; }
  Provenance tag(int i) const { return tags_[i]; }
  const std::vector<Vector>& points() const { return xs_; }
  const std::vector<double>& values() const { return fs_; }

  void write_csv(std::ostream& os) const;

 private:
  DatasetRole role_;
  std::vector<Vector> xs_;
  std::vector<double> fs_;
  std::vector<Provenance> tags_;
};

struct LocalSample {
  SampleSet set;   // base = y^0, normalized points with y^0 first
  Vector values;   // f at the points, same order
  std::vector<int> indices;  // positions in the dataset
  int j = 0;                 // radius = 0.1 * 1.1^j
  double radius = 0.0;
};

/// Points of the dataset in the smallest ball B(x_k; 0.1 * 1.1^j), j integer,
/// holding at least (n+1)(n+2)/2 of them. y^0 is x_k when stored, otherwise
/// the nearest point. Throws if the dataset is too small.
LocalSample select_local_sample(const Dataset& data, const Vector& xk, int n);

}  // namespace sdfo
