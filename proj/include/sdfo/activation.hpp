#pragma once

#include <array>
#include <string_view>

namespace sdfo {

enum class ActivationKind { ReLU, ELU, SiLU, Sigmoid, Tanh };

inline constexpr std::array<ActivationKind, 5> kAllActivations = {
    ActivationKind::ReLU, ActivationKind::ELU, ActivationKind::SiLU, ActivationKind::Sigmoid,
    ActivationKind::Tanh};

std::string_view to_string(ActivationKind k);
ActivationKind parse_activation(std::string_view text);

/// Scalar activation s with first and second derivatives.
/// ReLU takes s'(0) = 0 and s'' = 0; ELU uses its left branch at 0.
struct Activation {
  ActivationKind kind = ActivationKind::ReLU;
  double alpha = 1.0;  // ELU only

  Activation() = default;
  Activation(ActivationKind k, double a = 1.0);  // NOLINT(google-explicit-constructor)

  double value(double z) const;
  double d1(double z) const;
  double d2(double z) const;
};

double sigmoid(double z);

}  // namespace sdfo
