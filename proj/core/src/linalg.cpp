#include "triplelab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "triplelab/error.hpp"

namespace triplelab {

void Tolerance::validate() const {
  if (!std::isfinite(abs_tol) || !std::isfinite(rel_tol) || abs_tol < 0.0 || rel_tol < 0.0) {
    throw Error(ErrorKind::InvalidDescriptor, "tolerances must be finite and non-negative");
  }
}

bool Tolerance::close(double x, double y) const noexcept {
  return std::abs(x - y) <= abs_tol + rel_tol * std::max(std::abs(x), std::abs(y));
}

bool Tolerance::negligible(double residual, double scale) const noexcept {
  return std::abs(residual) <= abs_tol + rel_tol * std::abs(scale);
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << "expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  const double asymmetry = (m - m.adjoint()).norm();
  if (!tol.negligible(asymmetry, m.norm())) {
    std::ostringstream os;
    os << "‖m − m†‖ = " << asymmetry;
    throw Error(ErrorKind::NonHermitianInput, os.str());
  }

  const ComplexMatrix symmetrised = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetrised);
  const RealVector& values = solver.eigenvalues();    // ascending
  const ComplexMatrix& vectors = solver.eigenvectors();

  const Eigen::Index n = m.rows();
  HermitianEigensystem out;
  Eigen::Index hi = n - 1;
  while (hi >= 0) {
    // Chain-cluster downward from the current largest eigenvalue.
    Eigen::Index lo = hi;
    while (lo > 0 && values(hi) - values(lo - 1) <= kEigenvalueClusterWidth &&
           values(lo) - values(lo - 1) <= kEigenvalueClusterWidth) {
      --lo;
    }
    const Eigen::Index count = hi - lo + 1;
    ComplexMatrix basis(n, count);
    // Columns ordered by decreasing eigenvalue inside the cluster.
    for (Eigen::Index k = 0; k < count; ++k) basis.col(k) = vectors.col(hi - k);
    out.eigenvalues.push_back(values.segment(lo, count).mean());
    out.projectors.push_back(basis * basis.adjoint());
    out.bases.push_back(std::move(basis));
    out.multiplicities.push_back(static_cast<int>(count));
    hi = lo - 1;
  }
  return out;
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

LeastSquaresSolution least_squares_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                                         const Tolerance& tol) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "least squares: row counts differ");
  }
  if (a.cols() > a.rows()) {
    throw Error(ErrorKind::RankDeficient, "least squares: more unknowns than equations");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  const double smallest = s.size() ? s(s.size() - 1) : 0.0;
  const double largest = s.size() ? s(0) : 0.0;
  if (smallest <= tol.abs_tol + tol.rel_tol * largest) {
    std::ostringstream os;
    os << "smallest singular value " << smallest;
    throw Error(ErrorKind::RankDeficient, os.str());
  }
  LeastSquaresSolution out;
  out.x = svd.solve(b);
  out.residual = (a * out.x - b).norm();
  out.smallest_singular_value = smallest;
  return out;
}

RealLeastSquaresSolution least_squares_solve(const RealMatrix& a, const RealMatrix& b,
                                             const Tolerance& tol) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "least squares: row counts differ");
  }
  if (a.cols() > a.rows()) {
    throw Error(ErrorKind::RankDeficient, "least squares: more unknowns than equations");
  }
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  const double smallest = s.size() ? s(s.size() - 1) : 0.0;
  const double largest = s.size() ? s(0) : 0.0;
  if (smallest <= tol.abs_tol + tol.rel_tol * largest) {
    std::ostringstream os;
    os << "smallest singular value " << smallest;
    throw Error(ErrorKind::RankDeficient, os.str());
  }
  RealLeastSquaresSolution out;
  out.x = svd.solve(b);
  out.residual = (a * out.x - b).norm();
  out.smallest_singular_value = smallest;
  return out;
}

ComplexMatrix null_space(const ComplexMatrix& m, double threshold) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return ComplexMatrix::Identity(n, n);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

RealVector realify(const ComplexVector& v) {
  RealVector out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

ComplexVector complexify(const RealVector& v) {
  const Eigen::Index n = v.size() / 2;
  ComplexVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = Complex(v(i), v(n + i));
  return out;
}

}  // namespace triplelab
