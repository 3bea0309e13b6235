#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

#include <Eigen/Dense>

namespace sdfo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// All randomness in the library flows through explicitly seeded engines of this type.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

// FNV-1a, used to derive per-cell seeds and config hashes.
inline std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Sample set too degenerate for a stable fit.
class PoisednessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sdfo
