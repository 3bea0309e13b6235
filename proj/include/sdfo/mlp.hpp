#pragma once

// Two-hidden-layer perceptron surrogate of width 4n,
//   f^(x) = shift + scale * (W3 s(W2 s(W1 z + b1) + b2) + b3),  z = (x - base) / delta.
//
// Parameters live in one flat vector laid out as
//   [W1 (4n x n) | b1 | W2 (4n x 4n) | b2 | W3 (1 x 4n) | b3], matrices column-major.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "sdfo/activation.hpp"
#include "sdfo/problems.hpp"
#include "sdfo/sampling.hpp"

namespace sdfo {

struct MlpConfig {
  int n = 1;
  ActivationKind activation = ActivationKind::ReLU;

  int width() const { return 4 * n; }
  int param_count() const;
};

struct MlpWeights {
  MlpConfig cfg;
  Vector w;
  Vector base;
  double delta = 1.0;
  // output standardization; identity unless training set it
  double shift = 0.0;
  double scale = 1.0;

  using Map = Eigen::Map<const Matrix>;
  using VMap = Eigen::Map<const Vector>;
  Map w1() const;
  VMap b1() const;
  Map w2() const;
  VMap b2() const;
  Map w3() const;
  double b3() const;

  nlohmann::json to_json() const;
  static MlpWeights from_json(const nlohmann::json& j);
};

/// He N(0, 2/fan_in) for ReLU/ELU/SiLU, Xavier U(+-sqrt(6/(fan_in+fan_out)))
/// for Sigmoid/Tanh; zero biases.
MlpWeights init_weights(const MlpConfig& cfg, std::uint64_t seed, Vector base, double delta = 1.0);
bool uses_he_init(ActivationKind k);

double forward(const MlpWeights& w, const Vector& x);
/// Outputs for the columns of Z (normalized inputs).
Vector forward_z(const MlpWeights& w, const Matrix& z);

/// Sum of squared residuals over the points.
double loss(const MlpWeights& w, const std::vector<Vector>& xs, const std::vector<double>& fs);
double loss(const MlpWeights& w, const Dataset& d);

/// Gradient of the sum loss with respect to the flat parameter vector.
Vector weight_gradient(const MlpWeights& w, const std::vector<Vector>& xs,
                       const std::vector<double>& fs);

Vector input_gradient(const MlpWeights& w, const Vector& x);
/// Central differences of input_gradient, step 1e-5 max(1, ||x||_inf), symmetrized.
Matrix input_hessian(const MlpWeights& w, const Vector& x);

struct AdamState {
  Vector m;
  Vector v;
  long t = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};
void adam_step(Vector& params, AdamState& state, const Vector& grad, double lr);

/// Reduce-on-plateau: after `patience` consecutive epochs without the
/// monitored loss dropping below best - 1e-12 |best|, lr *= factor.
class PlateauScheduler {
 public:
  PlateauScheduler(double lr, double factor = 0.8, int patience = 15);
  // Feeds one epoch's monitored loss, returns the lr for the next epoch.
  double step(double loss);
  double lr() const { return lr_; }
  int bad_epochs() const { return bad_; }

 private:
  double lr_;
  double factor_;
  int patience_;
  double best_;
  int bad_ = 0;
};

/// Minibatch size rule: SET38 maps n = 20/40/60 to 16/32/64; otherwise the
/// power of two closest to 0.05 |D| (ties up) clamped to [2, 64].
int minibatch_size(ProblemSetId set, int n, int dataset_size);
int closest_power_of_two(double v, int lo, int hi);

struct TrainConfig {
  int epochs = 300;
  double learning_rate = 1e-3;
  double plateau_factor = 0.8;
  int plateau_patience = 15;
  bool plateau = true;
  int batch_size = 16;
  std::uint64_t seed = 0;
  // set shift/scale from the training targets before the first step
  bool standardize_targets = true;
  // per-epoch loss evaluation for the trace
  bool record_losses = true;
};

struct EpochRecord {
  double train_loss;
  double test_loss;
  double lr;
};

struct TrainTrace {
  double initial_train = 0.0;
  double initial_test = 0.0;
  std::vector<EpochRecord> epochs;

  // losses indexed by epoch, entry 0 being the untrained network
  std::vector<double> train_curve() const;
  std::vector<double> test_curve() const;
  void write_csv(std::ostream& os) const;
};

struct TrainResult {
  MlpWeights weights;
  TrainTrace trace;
};

/// Shuffled minibatch Adam on the batch-mean loss. The plateau schedule
/// monitors the test loss (training loss when the test set is empty).
/// Passing `adam` continues from (and updates) existing moment estimates.
TrainResult train(MlpWeights w, const Dataset& train_set, const Dataset& test_set,
                  const TrainConfig& cfg, AdamState* adam = nullptr);

}  // namespace sdfo
