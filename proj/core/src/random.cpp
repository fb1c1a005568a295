#include "triplelab/random.hpp"

#include <cmath>
#include <numbers>

namespace triplelab {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix_seed(seed ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

std::size_t Rng::index(std::size_t n) {
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

Complex Rng::unit_phase() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

ComplexVector Rng::complex_gaussian_vector(Eigen::Index n) {
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_gaussian();
  return v;
}

ComplexVector Rng::unit_vector(Eigen::Index n) {
  ComplexVector v = complex_gaussian_vector(n);
  return v / v.norm();
}

RealVector Rng::real_unit_vector(Eigen::Index n) {
  RealVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = gaussian();
  return v / v.norm();
}

ComplexMatrix Rng::unitary(Eigen::Index n) {
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = complex_gaussian();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

RealMatrix Rng::orthogonal(Eigen::Index n) {
  RealMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = gaussian();
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

}  // namespace triplelab
