#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "triplelab/factor.hpp"

namespace triplelab {

/// Peirce projectors of a tripotent e on the coordinate space, indexed by k
/// for E_k(e), the k/2-eigenspace of L(e,e).
struct PeirceSystem {
  std::array<ComplexMatrix, 3> projectors;
  std::array<ComplexMatrix, 3> bases;  // orthonormal columns, possibly zero of them
  /// Largest distance of an eigenvalue of L(e,e) from {0, 1/2, 1}.
  double max_deviation = 0.0;

  int dim(int k) const { return static_cast<int>(bases.at(static_cast<std::size_t>(k)).cols()); }
  /// Margin below a tenth of the cluster width: the split is numerically fragile.
  bool near_degenerate() const { return max_deviation > 0.1 * kEigenvalueClusterWidth; }
};

/// Eigendecomposes L(e,e). Throws SpectrumViolation when an eigenvalue is
/// more than 1e-6 away from {0, 1/2, 1}.
PeirceSystem peirce_decompose(const AtomicTriple& t, const Element& e, const Tolerance& tol = {});

/// P₂ = Q(e)², P₁ = 2(L(e,e) − Q(e)²), P₀ = I − 2L(e,e) + Q(e)², built
/// without any eigensolver.
std::array<ComplexMatrix, 3> algebraic_peirce_projectors(const AtomicTriple& t, const Element& e);

bool is_tripotent(const AtomicTriple& t, const Element& x, const Tolerance& tol = {});

/// x ∈ E_k(u), tested as ‖{u,u,x} − (k/2)x‖ within tolerance.
bool in_peirce_space(const AtomicTriple& t, const Element& u, int k, const Element& x,
                     const Tolerance& tol = {});

class Tripotent {
 public:
  /// Throws NotTripotent unless {e,e,e} = e within tolerance.
  Tripotent(const AtomicTriple& t, Element e, const Tolerance& tol = {});

  const AtomicTriple& triple() const noexcept { return t_; }
  const Element& element() const noexcept { return e_; }
  /// -1 for the zero tripotent or one spread over several summands.
  int home_summand() const noexcept { return home_; }
  const PeirceSystem& peirce() const noexcept { return peirce_; }
  bool minimal() const noexcept { return peirce_.dim(2) == 1; }
  bool complete() const noexcept { return peirce_.dim(0) == 0; }
  int rank() const noexcept { return rank_; }

  /// P_k(e)x.
  Element project(int k, const Element& x) const;

 private:
  AtomicTriple t_;
  Element e_;
  int home_ = -1;
  PeirceSystem peirce_;
  int rank_ = 0;
};

const PeirceSystem& peirce_decompose(const AtomicTriple& t, const Tripotent& e);

struct RelationFlags {
  bool orthogonal = false;  // {e,e,v} = 0
  bool leq = false;         // v − e is a tripotent orthogonal to e
  bool collinear = false;   // e ∈ E₁(v) and v ∈ E₁(e)
  bool governs_ev = false;  // e ⊢ v: v ∈ E₂(e) and e ∈ E₁(v)
  bool governs_ve = false;  // v ⊢ e: e ∈ E₂(v) and v ∈ E₁(e)
};

RelationFlags classify_relation(const AtomicTriple& t, const Tripotent& e, const Tripotent& v,
                                const Tolerance& tol = {});
bool are_orthogonal(const AtomicTriple& t, const Element& e, const Element& v,
                    const Tolerance& tol = {});

/// Random minimal tripotent supported on one summand:
/// ξη* (type 1), u(E₁₂ − E₂₁)uᵗ (type 2), ξξᵗ (type 3), (a + ib)/2 (type 4).
Tripotent sample_minimal_tripotent(const AtomicTriple& t, std::size_t summand, std::uint64_t seed);

/// Random minimal tripotent of `summand` orthogonal to e. Throws
/// DimensionTooSmall when E₀(e) has nothing in that summand.
Tripotent sample_orthogonal_minimal(const AtomicTriple& t, const Tripotent& e,
                                    std::size_t summand, std::uint64_t seed);

/// Random minimal tripotent collinear with e, or nullopt when E₁(e) holds
/// none (for instance in symmetric factors).
std::optional<Tripotent> sample_collinear_minimal(const AtomicTriple& t, const Tripotent& e,
                                                  std::uint64_t seed);

/// Limit of x ↦ {x,x,x}/‖{x,x,x}‖: the support tripotent of the largest
/// singular value of x. Minimal for generic x.
Element dominant_tripotent(const AtomicTriple& t, const Element& x, int max_iterations = 100);

/// Number of pieces in a decomposition of e into mutually orthogonal minimal
/// tripotents. Throws DecompositionFailed on numeric breakdown.
int tripotent_rank(const AtomicTriple& t, const Tripotent& e);

}  // namespace triplelab
