#pragma once

#include "triplelab/tripotent.hpp"

namespace triplelab {

/// φ_e(x): the coefficient of P₂(e)x along e. For matrix factors with
/// Frobenius-normalised e this is tr(e* x). Throws NotMinimal.
Complex pure_atom_value(const AtomicTriple& t, const Tripotent& e, const Element& x);

/// TTP(e, v) = φ_v(e). Zero when e and v live in different summands.
Complex ttp(const AtomicTriple& t, const Tripotent& e, const Tripotent& v);

/// ‖e − v‖ in the triple norm.
double gap_distance(const AtomicTriple& t, const Element& e, const Element& v);

/// √((1 − Re TTP(v,e)) + √((1 − Re TTP(v,e))² − ‖P₀(e)v‖²)).
/// Throws NegativeRadicand when the inner radicand is below −tol.
double gap_formula(const AtomicTriple& t, const Tripotent& e, const Tripotent& v,
                   const Tolerance& tol = {});

/// tr(pq) for minimal projections p, q of a square type 1 summand.
/// Throws NotAProjection otherwise.
double wigner_transition_probability(const AtomicTriple& t, const Tripotent& p, const Tripotent& q,
                                     const Tolerance& tol = {});

}  // namespace triplelab
