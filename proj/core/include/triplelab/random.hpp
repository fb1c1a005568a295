#pragma once

#include <cstdint>
#include <random>

#include "triplelab/linalg.hpp"

namespace triplelab {

/// SplitMix64 finaliser; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Seed for trial `index` of a run seeded with `seed`. Independent of the
/// order in which trials are executed.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  double gaussian() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::size_t index(std::size_t n);

  /// Standard complex Gaussian: E|z|² = 1.
  Complex complex_gaussian();
  Complex unit_phase();

  ComplexVector complex_gaussian_vector(Eigen::Index n);
  ComplexVector unit_vector(Eigen::Index n);
  RealVector real_unit_vector(Eigen::Index n);

  /// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
  ComplexMatrix unitary(Eigen::Index n);
  /// Haar-distributed real orthogonal matrix.
  RealMatrix orthogonal(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace triplelab
