#include "sdfo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace sdfo {

Vector sample_sphere(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_sphere: n must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector d(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) d[i] = gauss(rng);
    norm = d.norm();
  } while (norm == 0.0);
  return d / norm;
}

Vector sample_ball_point(const Vector& center, double radius, Rng& rng) {
  if (!(radius > 0.0)) throw std::invalid_argument("sample_ball: radius must be positive");
  const int n = static_cast<int>(center.size());
  Vector d = sample_sphere(n, rng);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double r = radius * std::pow(unif(rng), 1.0 / n);
  return center + r * d;
}

std::vector<Vector> sample_ball(const Vector& center, double radius, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_ball: count must be positive");
  if (center.size() < 1) throw std::invalid_argument("sample_ball: empty center");
  Rng rng = make_rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(sample_ball_point(center, radius, rng));
  return out;
}

SampleSet shift_scale(const Vector& base, const std::vector<Vector>& raw) {
  if (raw.empty()) throw std::invalid_argument("shift_scale: empty sample");
  double delta = 0.0;
  for (const auto& y : raw) {
    if (y.size() != base.size()) throw std::invalid_argument("shift_scale: dimension mismatch");
    delta = std::max(delta, (y - base).norm());
  }
  if (!(delta > 0.0)) throw std::invalid_argument("shift_scale: all points coincide (delta = 0)");
  SampleSet s;
  s.base = base;
  s.delta = delta;
  s.points.reserve(raw.size());
  for (const auto& y : raw) s.points.push_back((y - base) / delta);
  return s;
}

SampleSet shift_scale(const std::vector<Vector>& raw) {
  if (raw.size() < 2) throw std::invalid_argument("shift_scale: need at least two points");
  return shift_scale(raw.front(), raw);
}

int quadratic_count(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  return (n + 1) * (n + 2) / 2;
}

SampleSizes standard_sizes(int n) {
  const int train = quadratic_count(n);
  // ceil(0.2 * train) in integer arithmetic
  const int test = (train + 4) / 5;
  return {train, test};
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::FdStencil:
      return "fd-stencil";
    case Provenance::LineSearchFirst:
      return "line-search-first";
    case Provenance::LineSearchAll:
      return "line-search-all";
    case Provenance::BallExtra:
      return "ball-extra";
    case Provenance::Poll:
      return "poll";
    case Provenance::Sample:
      return "sample";
  }
  return "?";
}

int Dataset::find(const Vector& x) const {
  const double tol = 1e-14 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
  for (int i = 0; i < size(); ++i) {
    if (xs_[i].size() == x.size() && (xs_[i] - x).lpNorm<Eigen::Infinity>() <= tol) return i;
  }
  return -1;
}

bool Dataset::add(const Vector& x, double f, Provenance tag) {
  if (!xs_.empty() && x.size() != xs_.front().size())
    throw std::invalid_argument("Dataset::add: dimension mismatch");
  if (find(x) >= 0) return false;
  xs_.push_back(x);
  fs_.push_back(f);
  tags_.push_back(tag);
  return true;
}

void Dataset::write_csv(std::ostream& os) const {
  const int n = xs_.empty() ? 0 : static_cast<int>(xs_.front().size());
  for (int j = 0; j < n; ++j) os << "x" << j << ",";
  os << "f,provenance\n";
  char buf[32];
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", xs_[i][j]);
      os << buf << ",";
    }
    std::snprintf(buf, sizeof buf, "%.17g", fs_[i]);
    os << buf << "," << to_string(tags_[i]) << "\n";
  }
}

LocalSample select_local_sample(const Dataset& data, const Vector& xk, int n) {
  const int q = quadratic_count(n);
  if (data.size() < q) throw std::invalid_argument("select_local_sample: dataset smaller than (n+1)(n+2)/2");
  if (xk.size() != n) throw std::invalid_argument("select_local_sample: dimension mismatch");

  std::vector<double> dist(data.size());
  for (int i = 0; i < data.size(); ++i) dist[i] = (data.x(i) - xk).norm();
  std::vector<double> sorted = dist;
  std::nth_element(sorted.begin(), sorted.begin() + (q - 1), sorted.end());
  const double dq = std::max(sorted[q - 1], 1e-300);

  auto radius_of = [](int j) { return 0.1 * std::pow(1.1, j); };
  int j = static_cast<int>(std::ceil(std::log(dq / 0.1) / std::log(1.1)));
  while (radius_of(j) < dq) ++j;
  while (radius_of(j - 1) >= dq) --j;

  LocalSample out;
  out.j = j;
  out.radius = radius_of(j);

  int y0 = data.find(xk);
  if (y0 < 0) y0 = static_cast<int>(std::min_element(dist.begin(), dist.end()) - dist.begin());
  out.indices.push_back(y0);
  for (int i = 0; i < data.size(); ++i)
    if (i != y0 && dist[i] <= out.radius) out.indices.push_back(i);

  std::vector<Vector> raw;
  raw.reserve(out.indices.size());
  out.values.resize(static_cast<Eigen::Index>(out.indices.size()));
  for (std::size_t k = 0; k < out.indices.size(); ++k) {
    raw.push_back(data.x(out.indices[k]));
    out.values[static_cast<Eigen::Index>(k)] = data.f(out.indices[k]);
  }
  out.set = shift_scale(raw);
  return out;
}

}  // namespace sdfo
