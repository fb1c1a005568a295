#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace triplelab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Combined absolute/relative comparison policy used throughout the library.
struct Tolerance {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;

  /// Throws InvalidDescriptor unless both fields are finite and non-negative.
  void validate() const;

  /// |x - y| <= abs_tol + rel_tol * max(|x|, |y|)
  bool close(double x, double y) const noexcept;

  /// A residual is negligible relative to a reference magnitude.
  bool negligible(double residual, double scale = 1.0) const noexcept;
};

/// Eigenvalues closer than this are merged into a single spectral projector.
inline constexpr double kEigenvalueClusterWidth = 1e-6;

struct HermitianEigensystem {
  std::vector<double> eigenvalues;         // descending, one per cluster
  std::vector<ComplexMatrix> projectors;   // orthogonal projector per cluster
  std::vector<ComplexMatrix> bases;        // orthonormal columns spanning each cluster
  std::vector<int> multiplicities;
};

/// Spectral decomposition of a Hermitian matrix into clustered eigenprojectors.
/// Throws DimensionMismatch for non-square input and NonHermitianInput when
/// ‖m - m†‖ exceeds the tolerance.
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m, const Tolerance& tol = {});

/// Largest singular value (0 for the zero matrix).
double operator_norm(const ComplexMatrix& m);

struct LeastSquaresSolution {
  ComplexMatrix x;
  double residual = 0.0;  // Frobenius norm of a·x − b
  double smallest_singular_value = 0.0;
};

/// Minimises ‖a·x − b‖_F. Throws RankDeficient when the smallest singular
/// value of `a` is within tolerance of zero.
LeastSquaresSolution least_squares_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                                         const Tolerance& tol = {});

/// Real-valued counterpart used for fits over the realified space.
struct RealLeastSquaresSolution {
  RealMatrix x;
  double residual = 0.0;
  double smallest_singular_value = 0.0;
};

RealLeastSquaresSolution least_squares_solve(const RealMatrix& a, const RealMatrix& b,
                                             const Tolerance& tol = {});

/// Orthonormal basis of the null space of `m` (columns); singular values at or
/// below `threshold` count as zero.
ComplexMatrix null_space(const ComplexMatrix& m, double threshold);

/// Stacks real and imaginary parts: ℂⁿ → ℝ²ⁿ.
RealVector realify(const ComplexVector& v);
ComplexVector complexify(const RealVector& v);

}  // namespace triplelab
