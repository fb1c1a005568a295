#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "triplelab/linalg.hpp"

namespace triplelab {

class Rng;

/// Cartan factor types realised here. Exceptional factors are not modelled.
enum class FactorKind {
  Rectangular = 1,    // p×q complex matrices
  Antisymmetric = 2,  // n×n with xᵗ = −x
  Symmetric = 3,      // n×n with xᵗ = x
  Spin = 4,           // ℂⁿ with canonical conjugation
};

struct FactorDescriptor {
  FactorKind kind = FactorKind::Rectangular;
  int p = 1;  // rows (or n for square/spin kinds)
  int q = 1;  // columns (equal to p for types 2/3, 1 for spin)

  static FactorDescriptor rectangular(int p, int q);
  static FactorDescriptor antisymmetric(int n);
  static FactorDescriptor symmetric(int n);
  static FactorDescriptor spin(int n);

  void validate() const;

  int type_number() const noexcept { return static_cast<int>(kind); }
  int n() const noexcept { return p; }
  int rank() const noexcept;
  /// Complex dimension of the factor.
  int dimension() const noexcept;
  int block_rows() const noexcept { return p; }
  int block_cols() const noexcept { return kind == FactorKind::Spin ? 1 : q; }
  bool is_matrix_factor() const noexcept { return kind != FactorKind::Spin; }

  std::string label() const;

  friend bool operator==(const FactorDescriptor&, const FactorDescriptor&) = default;
};

/// Element of an ℓ∞-sum: one coefficient block per summand. Spin blocks are
/// stored as column vectors.
struct Element {
  std::vector<ComplexMatrix> blocks;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(Complex s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Complex s, Element a) { return a *= s; }
  friend Element operator*(Element a, Complex s) { return a *= s; }
  friend Element operator-(Element a) { return a *= Complex(-1.0, 0.0); }
};

using TripleProductFn = std::function<Element(const Element&, const Element&, const Element&)>;

/// ℓ∞-sum of Cartan factors with coordinates in a fixed orthonormal basis.
///
/// Coordinates: each summand contributes `dimension()` complex coordinates,
/// the coefficients against an orthonormal basis of the summand for the
/// Frobenius (types 1–3) or Hermitian (type 4) inner product. Operators such
/// as L(a,b) and the Peirce projectors act on these coordinates.
class AtomicTriple {
 public:
  explicit AtomicTriple(std::vector<FactorDescriptor> summands);

  const std::vector<FactorDescriptor>& summands() const noexcept { return summands_; }
  std::size_t summand_count() const noexcept { return summands_.size(); }
  const FactorDescriptor& summand(std::size_t i) const { return summands_.at(i); }
  /// e.g. "Type1{2,2}+Type4{3}"
  std::string label() const;

  Eigen::Index dimension() const noexcept { return offsets_.back(); }
  Eigen::Index offset(std::size_t summand) const { return offsets_.at(summand); }
  Eigen::Index summand_dimension(std::size_t summand) const {
    return offsets_.at(summand + 1) - offsets_.at(summand);
  }

  Element zero() const;
  /// Throws ShapeMismatch for wrong block shapes and NotMember when a type 2/3
  /// block violates its symmetry beyond tolerance.
  void validate(const Element& x, const Tolerance& tol = {}) const;
  bool contains(const Element& x, const Tolerance& tol = {}) const;

  ComplexVector coordinates(const Element& x) const;
  Element from_coordinates(const ComplexVector& c) const;
  /// The k-th orthonormal basis element (k in [0, dimension())).
  Element basis_element(Eigen::Index k) const;

  Element triple_product(const Element& x, const Element& y, const Element& z) const;
  /// ℓ∞ norm: operator norm on matrix summands, spin norm on type 4.
  double norm(const Element& x) const;
  double summand_norm(const Element& x, std::size_t summand) const;
  /// Hermitian inner product of coordinates, linear in the first slot.
  Complex inner(const Element& x, const Element& y) const;

  /// Matrix of x ↦ {a, b, x} on coordinates (complex linear).
  ComplexMatrix multiplication_operator(const Element& a, const Element& b) const;
  ComplexMatrix multiplication_operator(const Element& a, const Element& b,
                                        const TripleProductFn& product) const;
  /// Q(a)x = {a, x, a}; conjugate linear, so returned as a function.
  Element quadratic(const Element& a, const Element& x) const;

  /// Element supported on one summand.
  Element embed(std::size_t summand, const ComplexMatrix& block) const;
  /// Index of the only summand where x is non-negligible, or -1.
  int home_summand(const Element& x, double threshold = 1e-12) const;

  /// i.i.d. standard complex Gaussian coordinates.
  Element random_element(Rng& rng, bool normalize = true) const;
  Element random_element_in(std::size_t summand, Rng& rng, bool normalize = true) const;

  friend bool operator==(const AtomicTriple& a, const AtomicTriple& b) {
    return a.summands_ == b.summands_;
  }

 private:
  std::vector<FactorDescriptor> summands_;
  std::vector<Eigen::Index> offsets_;
};

/// Blockwise triple product of a single summand (no shape checks).
ComplexMatrix factor_triple_product(const FactorDescriptor& f, const ComplexMatrix& x,
                                    const ComplexMatrix& y, const ComplexMatrix& z);
double factor_norm(const FactorDescriptor& f, const ComplexMatrix& x);

}  // namespace triplelab
