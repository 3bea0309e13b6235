#include <doctest.h>

#include <cmath>

#include "sdfo/activation.hpp"

using namespace sdfo;

TEST_CASE("activation values") {
  const double z = 0.7;
  CHECK(Activation(ActivationKind::ReLU).value(-2.0) == 0.0);
  CHECK(Activation(ActivationKind::ReLU).value(z) == z);
  CHECK(Activation(ActivationKind::ELU).value(-1.0) == doctest::Approx(std::exp(-1.0) - 1.0));
  CHECK(Activation(ActivationKind::ELU, 2.0).value(-1.0) == doctest::Approx(2.0 * (std::exp(-1.0) - 1.0)));
  CHECK(Activation(ActivationKind::SiLU).value(z) == doctest::Approx(z / (1 + std::exp(-z))));
  CHECK(Activation(ActivationKind::Sigmoid).value(z) == doctest::Approx(1 / (1 + std::exp(-z))));
  CHECK(Activation(ActivationKind::Tanh).value(z) ==
        doctest::Approx((std::exp(z) - std::exp(-z)) / (std::exp(z) + std::exp(-z))));
}

TEST_CASE("derivative conventions at the kink") {
  const Activation relu(ActivationKind::ReLU), elu(ActivationKind::ELU, 1.5);
  CHECK(relu.d1(0.0) == 0.0);
  CHECK(relu.d1(1.0) == 1.0);
  CHECK(relu.d2(1.0) == 0.0);
  CHECK(elu.d1(0.0) == 1.5);
  CHECK(elu.d2(0.0) == 1.5);
  CHECK(elu.d2(0.5) == 0.0);
  CHECK(Activation(ActivationKind::SiLU).d1(0.0) == doctest::Approx(0.5));
}

TEST_CASE("smooth derivatives match central differences") {
  for (auto k : kAllActivations) {
    const Activation s(k);
    for (double z : {-3.1, -0.8, -0.2, 0.3, 1.4, 4.2}) {
      CAPTURE(to_string(k));
      CAPTURE(z);
      const double h = 1e-6;
      const double d1 = (s.value(z + h) - s.value(z - h)) / (2 * h);
      const double d2 = (s.d1(z + h) - s.d1(z - h)) / (2 * h);
      CHECK(std::abs(s.d1(z) - d1) <= 1e-7 * std::max(1.0, std::abs(d1)));
      CHECK(std::abs(s.d2(z) - d2) <= 1e-6 * std::max(1.0, std::abs(d2)));
    }
  }
}

TEST_CASE("sigmoid is finite for extreme inputs") {
  CHECK(sigmoid(-1000.0) == 0.0);
  CHECK(sigmoid(1000.0) == 1.0);
  CHECK(std::isfinite(Activation(ActivationKind::SiLU).d2(-800.0)));
}

TEST_CASE("activation names round-trip") {
  for (auto k : kAllActivations) CHECK(parse_activation(to_string(k)) == k);
  CHECK_THROWS(parse_activation("softplus"));
}
