#pragma once

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "triplelab/tripotent.hpp"

namespace triplelab {

/// (u₁,u₂,u₃,u₄) minimal with u₁⊥u₃, u₂⊥u₄, u₁⊤u₂⊤u₃⊤u₄⊤u₁ and u₄ = 2{u₁,u₂,u₃}.
bool is_quadrangle(const AtomicTriple& t, const Element& u1, const Element& u2, const Element& u3,
                   const Element& u4, const Tolerance& tol = {});

/// (v,u,ṽ) with v, ṽ minimal, v⊥ṽ, u⊢v, u⊢ṽ and v = Q(u)ṽ. Inputs that are
/// not members of t raise NotMember.
bool is_trangle(const AtomicTriple& t, const Element& v, const Element& u, const Element& vt,
                const Tolerance& tol = {});

/// λ₁e + λ₂v₁ for collinear minimal e, v₁ and |λ₁|² + |λ₂|² = 1.
Tripotent collinear_superposition(const AtomicTriple& t, const Tripotent& e, const Tripotent& v1,
                                  Complex lambda1, Complex lambda2, const Tolerance& tol = {});

struct OrthogonalPosition {
  Element v;  // v itself: all of its mass sits in P₀(e)
};

struct CollinearFrame {
  Complex alpha, beta;
  Element v1;
};

struct QuadranglePosition {
  Complex alpha, beta, gamma, delta;
  Element v2, v3, v4;
};

struct TranglePosition {
  Complex alpha, beta, delta;
  Element u, vt;  // u has rank two
};

struct RelativePosition {
  std::variant<OrthogonalPosition, CollinearFrame, QuadranglePosition, TranglePosition> kind;
  double residual = 0.0;
  /// Frame could only be partially completed (zero coefficients on the gaps).
  bool frame_complete = true;
  /// The P₁ split was degenerate (|β| = |γ|); the trangle form is reported
  /// and a quadrangle form may validate as well.
  bool degenerate_split = false;

  std::string tag() const;
  /// The element rebuilt from e, the coefficients and the frame.
  Element reconstruct(const Element& e) const;
};

/// Decomposes minimal v relative to minimal e. Throws DecompositionFailed if
/// the result does not reconstruct v within 100·tol or violates its
/// coefficient constraints.
RelativePosition relative_position(const AtomicTriple& t, const Tripotent& e, const Tripotent& v,
                                   const Tolerance& tol = {});

/// Coefficient constraint defects: |αδ − βγ| (or |αδ − β²|) and the
/// deviation of the weighted squared sum from 1. Zero for orthogonal pairs.
struct ConstraintDefects {
  double product = 0.0;
  double norm = 0.0;
};
ConstraintDefects constraint_defects(const RelativePosition& rp);

nlohmann::json to_json(const AtomicTriple& t, const RelativePosition& rp);

}  // namespace triplelab
