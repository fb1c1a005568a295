#pragma once

#include "triplelab/factor.hpp"
#include "triplelab/report.hpp"

namespace triplelab {

/// Four rank-one partial isometries in M₂(ℂ) against e = E₁₁:
///   v  = [[1/3, 1/3], [√(7/18), √(7/18)]]
///   vt = [[1/3, 1/4], [√119/15, √119/20]]
///   u  = [[1/2, β], [γ, s]],  s = √(3 − √2)/(3√2), βγ = s/2,
///        β² + γ² = 3/4 − s², β ≥ γ.
/// v and vt share TTP 1/3 with e but not their distance to e; v and u share
/// their distance to e but not their TTP.
struct RemarkData {
  AtomicTriple triple{{FactorDescriptor::rectangular(2, 2)}};
  Element e, v, vt, u;
  double beta = 0.0;
  double gamma = 0.0;
  double s = 0.0;
};

RemarkData remark_data();

/// Exact target (1 + 2√2)/(3√2) for ‖e − v‖² and ‖e − u‖².
double remark_gap_squared();

/// Builds the data and checks minimality, the TTP values, the squared gaps
/// (direct and by formula) and that equal TTP does not force equal distance.
Report verify_remark_counterexamples(const Tolerance& tol = {});

}  // namespace triplelab
