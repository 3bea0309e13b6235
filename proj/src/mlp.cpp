#include "sdfo/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace sdfo {

int MlpConfig::param_count() const {
  const int m = width();
  return (n * m + m) + (m * m + m) + (m + 1);
}

MlpWeights::Map MlpWeights::w1() const { return Map(w.data(), cfg.width(), cfg.n); }
MlpWeights::VMap MlpWeights::b1() const { return VMap(w.data() + cfg.width() * cfg.n, cfg.width()); }
MlpWeights::Map MlpWeights::w2() const {
  const int m = cfg.width();
  return Map(w.data() + m * cfg.n + m, m, m);
}
MlpWeights::VMap MlpWeights::b2() const {
  const int m = cfg.width();
  return VMap(w.data() + m * cfg.n + m + m * m, m);
}
MlpWeights::Map MlpWeights::w3() const {
  const int m = cfg.width();
  return Map(w.data() + m * cfg.n + 2 * m + m * m, 1, m);
}
double MlpWeights::b3() const { return w[w.size() - 1]; }

bool uses_he_init(ActivationKind k) {
  return k == ActivationKind::ReLU || k == ActivationKind::ELU || k == ActivationKind::SiLU;
}

MlpWeights init_weights(const MlpConfig& cfg, std::uint64_t seed, Vector base, double delta) {
  if (cfg.n < 1) throw std::invalid_argument("init_weights: n must be positive");
  if (base.size() != cfg.n) throw std::invalid_argument("init_weights: base dimension mismatch");
  if (!(delta > 0.0)) throw std::invalid_argument("init_weights: delta must be positive");
  MlpWeights out;
  out.cfg = cfg;
  out.base = std::move(base);
  out.delta = delta;
  out.w = Vector::Zero(cfg.param_count());

  Rng rng = make_rng(seed, 0x6d6c70);
  const int m = cfg.width();
  const bool he = uses_he_init(cfg.activation);
  double* p = out.w.data();
  auto fill = [&](int rows, int cols) {
    const int fan_in = cols, fan_out = rows;
    if (he) {
      std::normal_distribution<double> d(0.0, std::sqrt(2.0 / fan_in));
      for (int k = 0; k < rows * cols; ++k) p[k] = d(rng);
    } else {
      const double a = std::sqrt(6.0 / (fan_in + fan_out));
      std::uniform_real_distribution<double> d(-a, a);
      for (int k = 0; k < rows * cols; ++k) p[k] = d(rng);
    }
    p += rows * cols;
  };
  fill(m, cfg.n);
  p += m;
  fill(m, m);
  p += m;
  fill(1, m);
  return out;
}

namespace {

struct Pass {
  Matrix p1, a1, p2, a2;
  Eigen::RowVectorXd out;  // before standardization
};

Pass run(const MlpWeights& w, const Matrix& z) {
  const Activation s(w.cfg.activation);
  Pass r;
  r.p1 = w.w1() * z;
  r.p1.colwise() += w.b1();
  r.a1 = r.p1.unaryExpr([&](double v) { return s.value(v); });
  r.p2 = w.w2() * r.a1;
  r.p2.colwise() += w.b2();
  r.a2 = r.p2.unaryExpr([&](double v) { return s.value(v); });
  r.out = w.w3() * r.a2;
  r.out.array() += w.b3();
  return r;
}

Matrix normalized_columns(const MlpWeights& w, const std::vector<Vector>& xs) {
  Matrix z(w.cfg.n, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].size() != w.cfg.n) throw std::invalid_argument("mlp: dimension mismatch");
    z.col(static_cast<Eigen::Index>(i)) = (xs[i] - w.base) / w.delta;
  }
  return z;
}

// gradient of sum (f^ - f)^2 over the columns of z
Vector grad_z(const MlpWeights& w, const Matrix& z, const Vector& f) {
  const Activation s(w.cfg.activation);
  const int m = w.cfg.width();
  const int n = w.cfg.n;
  const Pass r = run(w, z);
  const Eigen::RowVectorXd resid = (w.shift + w.scale * r.out.array()).matrix() - f.transpose();
  const Eigen::RowVectorXd dout = 2.0 * w.scale * resid;

  Vector g(w.w.size());
  double* p = g.data();
  Eigen::Map<Matrix> gw1(p, m, n);
  Eigen::Map<Vector> gb1(p + m * n, m);
  Eigen::Map<Matrix> gw2(p + m * n + m, m, m);
  Eigen::Map<Vector> gb2(p + m * n + m + m * m, m);
  Eigen::Map<Matrix> gw3(p + m * n + 2 * m + m * m, 1, m);

  gw3.noalias() = dout * r.a2.transpose();
  g[g.size() - 1] = dout.sum();
  Matrix d2 = w.w3().transpose() * dout;
  d2.array() *= r.p2.unaryExpr([&](double v) { return s.d1(v); }).array();
  gw2.noalias() = d2 * r.a1.transpose();
  gb2 = d2.rowwise().sum();
  Matrix d1 = w.w2().transpose() * d2;
  d1.array() *= r.p1.unaryExpr([&](double v) { return s.d1(v); }).array();
  gw1.noalias() = d1 * z.transpose();
  gb1 = d1.rowwise().sum();
  return g;
}

double sum_sq(const MlpWeights& w, const Matrix& z, const Vector& f) {
  if (z.cols() == 0) return 0.0;
  const Vector out = forward_z(w, z);
  return (out - f).squaredNorm();
}

}  // namespace

Vector forward_z(const MlpWeights& w, const Matrix& z) {
  const Pass r = run(w, z);
  return (w.shift + w.scale * r.out.array()).matrix().transpose();
}

double forward(const MlpWeights& w, const Vector& x) {
  if (x.size() != w.cfg.n) throw std::invalid_argument("mlp: dimension mismatch");
  const Matrix z = (x - w.base) / w.delta;
  return forward_z(w, z)[0];
}

double loss(const MlpWeights& w, const std::vector<Vector>& xs, const std::vector<double>& fs) {
  if (xs.size() != fs.size()) throw std::invalid_argument("loss: size mismatch");
  const Vector f = Eigen::Map<const Vector>(fs.data(), static_cast<Eigen::Index>(fs.size()));
  return sum_sq(w, normalized_columns(w, xs), f);
}

double loss(const MlpWeights& w, const Dataset& d) { return loss(w, d.points(), d.values()); }

Vector weight_gradient(const MlpWeights& w, const std::vector<Vector>& xs,
                       const std::vector<double>& fs) {
  if (xs.size() != fs.size()) throw std::invalid_argument("weight_gradient: size mismatch");
  const Vector f = Eigen::Map<const Vector>(fs.data(), static_cast<Eigen::Index>(fs.size()));
  return grad_z(w, normalized_columns(w, xs), f);
}

Vector input_gradient(const MlpWeights& w, const Vector& x) {
  if (x.size() != w.cfg.n) throw std::invalid_argument("mlp: dimension mismatch");
  const Activation s(w.cfg.activation);
  const Vector z = (x - w.base) / w.delta;
  const Vector p1 = w.w1() * z + w.b1();
  const Vector a1 = p1.unaryExpr([&](double v) { return s.value(v); });
  const Vector p2 = w.w2() * a1 + w.b2();
  Vector v2 = w.w3().transpose();
  v2.array() *= p2.unaryExpr([&](double v) { return s.d1(v); }).array();
  Vector v1 = w.w2().transpose() * v2;
  v1.array() *= p1.unaryExpr([&](double v) { return s.d1(v); }).array();
  return (w.scale / w.delta) * (w.w1().transpose() * v1);
}

Matrix input_hessian(const MlpWeights& w, const Vector& x) {
  const int n = w.cfg.n;
  const double h = 1e-5 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
  Matrix hm(n, n);
  Vector xp = x, xm = x;
  for (int i = 0; i < n; ++i) {
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    hm.col(i) = (input_gradient(w, xp) - input_gradient(w, xm)) / (2.0 * h);
    xp[i] = xm[i] = x[i];
  }
  return 0.5 * (hm + hm.transpose());
}

void adam_step(Vector& params, AdamState& st, const Vector& grad, double lr) {
  if (st.m.size() != params.size()) {
    st.m = Vector::Zero(params.size());
    st.v = Vector::Zero(params.size());
    st.t = 0;
  }
  if (grad.size() != params.size()) throw std::invalid_argument("adam_step: size mismatch");
  ++st.t;
  st.m = st.beta1 * st.m + (1.0 - st.beta1) * grad;
  st.v = st.beta2 * st.v + (1.0 - st.beta2) * grad.cwiseAbs2();
  const double c1 = 1.0 - std::pow(st.beta1, static_cast<double>(st.t));
  const double c2 = 1.0 - std::pow(st.beta2, static_cast<double>(st.t));
  params.array() -= lr * (st.m.array() / c1) / ((st.v.array() / c2).sqrt() + st.eps);
}

PlateauScheduler::PlateauScheduler(double lr, double factor, int patience)
    : lr_(lr), factor_(factor), patience_(patience), best_(std::numeric_limits<double>::infinity()) {
  if (!(lr > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (!(factor > 0.0 && factor < 1.0)) throw std::invalid_argument("plateau factor must lie in (0,1)");
  if (patience < 1) throw std::invalid_argument("plateau patience must be >= 1");
}

double PlateauScheduler::step(double loss) {
  const bool improved =
      std::isinf(best_) ? loss < best_ : loss < best_ - 1e-12 * std::abs(best_);
  if (improved) {
    best_ = loss;
    bad_ = 0;
  } else if (++bad_ >= patience_) {
    lr_ *= factor_;
    bad_ = 0;
  }
  return lr_;
}

int closest_power_of_two(double v, int lo, int hi) {
  int best = 1;
  double best_gap = std::abs(v - 1.0);
  for (int p = 2; p <= (1 << 20); p *= 2) {
    const double gap = std::abs(v - p);
    if (gap <= best_gap) {
      best = p;
      best_gap = gap;
    }
    if (p > v) break;
  }
  return std::clamp(best, lo, hi);
}

int minibatch_size(ProblemSetId set, int n, int dataset_size) {
  if (set == ProblemSetId::Set38) {
    if (n == 20) return 16;
    if (n == 40) return 32;
    if (n == 60) return 64;
  }
  if (dataset_size < 1) throw std::invalid_argument("minibatch_size: empty dataset");
  return closest_power_of_two(0.05 * dataset_size, 2, 64);
}

std::vector<double> TrainTrace::train_curve() const {
  std::vector<double> c{initial_train};
  for (const auto& e : epochs) c.push_back(e.train_loss);
  return c;
}

std::vector<double> TrainTrace::test_curve() const {
  std::vector<double> c{initial_test};
  for (const auto& e : epochs) c.push_back(e.test_loss);
  return c;
}

void TrainTrace::write_csv(std::ostream& os) const {
  os << "epoch,train_loss,test_loss,lr\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "0,%.17g,%.17g,\n", initial_train, initial_test);
  os << buf;
  for (std::size_t i = 0; i < epochs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", i + 1, epochs[i].train_loss,
                  epochs[i].test_loss, epochs[i].lr);
    os << buf;
  }
}

TrainResult train(MlpWeights w, const Dataset& train_set, const Dataset& test_set,
                  const TrainConfig& cfg, AdamState* adam) {
  if (train_set.empty()) throw std::invalid_argument("train: empty training set");
  if (cfg.epochs < 0) throw std::invalid_argument("train: negative epoch count");
  if (cfg.batch_size < 1) throw std::invalid_argument("train: batch size must be positive");

  const Matrix ztr = normalized_columns(w, train_set.points());
  const Vector ftr = Eigen::Map<const Vector>(train_set.values().data(), train_set.size());
  const Matrix zte = normalized_columns(w, test_set.points());
  const Vector fte = Eigen::Map<const Vector>(test_set.values().data(), test_set.size());

  if (cfg.standardize_targets) {
    const double mean = ftr.mean();
    const double var = (ftr.array() - mean).square().mean();
    w.shift = mean;
    w.scale = var > 0.0 ? std::sqrt(var) : 1.0;
  }

  TrainResult res;
  if (cfg.record_losses) {
    res.trace.initial_train = sum_sq(w, ztr, ftr);
    res.trace.initial_test = sum_sq(w, zte, fte);
  }

  const int count = train_set.size();
  const int batch = std::min(cfg.batch_size, count);
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  Rng rng = make_rng(cfg.seed, 0x747261696e);
  PlateauScheduler sched(cfg.learning_rate, cfg.plateau_factor, cfg.plateau_patience);
  AdamState local_adam;
  AdamState& opt = adam ? *adam : local_adam;
  double lr = cfg.learning_rate;
  Matrix zb;
  Vector fb;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (int start = 0; start < count; start += batch) {
      const int b = std::min(batch, count - start);
      zb.resize(w.cfg.n, b);
      fb.resize(b);
      for (int k = 0; k < b; ++k) {
        zb.col(k) = ztr.col(order[start + k]);
        fb[k] = ftr[order[start + k]];
      }
      Vector g = grad_z(w, zb, fb);
      g /= static_cast<double>(b) * w.scale * w.scale;
      adam_step(w.w, opt, g, lr);
    }
    if (!cfg.record_losses && !cfg.plateau) continue;
    const double tr = sum_sq(w, ztr, ftr);
    const double te = sum_sq(w, zte, fte);
    if (cfg.record_losses) res.trace.epochs.push_back({tr, te, lr});
    if (cfg.plateau) lr = sched.step(test_set.empty() ? tr : te);
  }
  res.weights = std::move(w);
  return res;
}

nlohmann::json MlpWeights::to_json() const {
  nlohmann::json j;
  j["n"] = cfg.n;
  j["width"] = cfg.width();
  j["hidden_layers"] = 2;
  j["activation"] = std::string(to_string(cfg.activation));
  j["shapes"] = {{cfg.width(), cfg.n}, {cfg.width()}, {cfg.width(), cfg.width()}, {cfg.width()},
                 {1, cfg.width()}, {1}};
  j["base"] = std::vector<double>(base.data(), base.data() + base.size());
  j["delta"] = delta;
  j["shift"] = shift;
  j["scale"] = scale;
  j["w"] = std::vector<double>(w.data(), w.data() + w.size());
  return j;
}

MlpWeights MlpWeights::from_json(const nlohmann::json& j) {
  MlpWeights out;
  out.cfg.n = j.at("n").get<int>();
  out.cfg.activation = parse_activation(j.at("activation").get<std::string>());
  const auto b = j.at("base").get<std::vector<double>>();
  const auto w = j.at("w").get<std::vector<double>>();
  out.base = Eigen::Map<const Vector>(b.data(), static_cast<Eigen::Index>(b.size()));
  out.w = Eigen::Map<const Vector>(w.data(), static_cast<Eigen::Index>(w.size()));
  out.delta = j.at("delta").get<double>();
  out.shift = j.value("shift", 0.0);
  out.scale = j.value("scale", 1.0);
  if (out.base.size() != out.cfg.n || out.w.size() != out.cfg.param_count())
    throw std::invalid_argument("MlpWeights::from_json: inconsistent shapes");
  return out;
}

}  // namespace sdfo
