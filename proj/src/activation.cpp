#include "sdfo/activation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sdfo {

std::string_view to_string(ActivationKind k) {
  switch (k) {
    case ActivationKind::ReLU:
      return "relu";
    case ActivationKind::ELU:
      return "elu";
    case ActivationKind::SiLU:
      return "silu";
    case ActivationKind::Sigmoid:
      return "sigmoid";
    case ActivationKind::Tanh:
      return "tanh";
  }
  return "?";
}

ActivationKind parse_activation(std::string_view text) {
  for (auto k : kAllActivations)
    if (to_string(k) == text) return k;
  throw std::invalid_argument("unknown activation '" + std::string(text) + "'");
}

Activation::Activation(ActivationKind k, double a) : kind(k), alpha(a) {
  if (!(alpha > 0.0)) throw std::invalid_argument("activation alpha must be positive");
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Activation::value(double z) const {
  switch (kind) {
    case ActivationKind::ReLU:
      return z > 0.0 ? z : 0.0;
    case ActivationKind::ELU:
      return z > 0.0 ? z : alpha * std::expm1(z);
    case ActivationKind::SiLU:
      return z * sigmoid(z);
    case ActivationKind::Sigmoid:
      return sigmoid(z);
    case ActivationKind::Tanh:
      return std::tanh(z);
  }
  return 0.0;
}

double Activation::d1(double z) const {
  switch (kind) {
    case ActivationKind::ReLU:
      return z > 0.0 ? 1.0 : 0.0;
    case ActivationKind::ELU:
      return z > 0.0 ? 1.0 : alpha * std::exp(z);
    case ActivationKind::SiLU: {
      const double s = sigmoid(z);
      return s * (1.0 + z * (1.0 - s));
    }
    case ActivationKind::Sigmoid: {
      const double s = sigmoid(z);
      return s * (1.0 - s);
    }
    case ActivationKind::Tanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
  }
  return 0.0;
}

double Activation::d2(double z) const {
  switch (kind) {
    case ActivationKind::ReLU:
      return 0.0;
    case ActivationKind::ELU:
      return z > 0.0 ? 0.0 : alpha * std::exp(z);
    case ActivationKind::SiLU: {
      const double s = sigmoid(z);
      return s * (1.0 - s) * (2.0 + z * (1.0 - 2.0 * s));
    }
    case ActivationKind::Sigmoid: {
      const double s = sigmoid(z);
      return s * (1.0 - s) * (1.0 - 2.0 * s);
    }
    case ActivationKind::Tanh: {
      const double t = std::tanh(z);
      return -2.0 * t * (1.0 - t * t);
    }
  }
  return 0.0;
}

}  // namespace sdfo
