#pragma once

#include <cstdint>

#include "triplelab/factor.hpp"
#include "triplelab/report.hpp"

namespace triplelab {

/// Checks the JB*-triple axioms on random elements of `t`:
///   jordan     ‖{a,b,{x,y,z}} − {{a,b,x},y,z} + {x,{b,a,y},z} − {x,y,{a,b,z}}‖
///   hermitian  ‖L(a,a) − L(a,a)†‖ on coordinates
///   spectrum   max(0, −λ_min(L(a,a)))
///   cube       |‖{a,a,a}‖ − ‖a‖³| / ‖a‖³
/// Thresholds are the larger of the tolerance and 1e-8 (1e-7 relative for
/// the cube identity). Failures are reported, never thrown.
Report verify_jbstar_axioms(const AtomicTriple& t, std::size_t trials, std::uint64_t seed,
                            const Tolerance& tol = {}, unsigned threads = 1);

/// Same checks against an arbitrary product, e.g. a deliberately broken one.
Report verify_jbstar_axioms(const AtomicTriple& t, const TripleProductFn& product,
                            std::size_t trials, std::uint64_t seed, const Tolerance& tol = {},
                            unsigned threads = 1);

}  // namespace triplelab
