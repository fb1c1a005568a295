#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "triplelab/map_spec.hpp"
#include "triplelab/report.hpp"
#include "triplelab/tripotent.hpp"

namespace triplelab {

// Every check samples pairs of minimal tripotents of t_in from per-trial
// seeds, pushes them through the map and compares. A trial whose image is
// not a minimal tripotent is aborted and reported as NotTripotentImage. The
// threshold is tol.abs_tol.

/// |TTP(Φe, Φv) − TTP(e, v)|, including pairs (λe, e) with λ a random phase.
Report check_ttp_preservation(const ElementMap& phi, const AtomicTriple& t_in,
                              const AtomicTriple& t_out, std::size_t trials, std::uint64_t seed,
                              const Tolerance& tol = {}, unsigned threads = 1);

/// e ⊥ v ⇔ Φe ⊥ Φv on alternating orthogonal and non-orthogonal pairs.
Report check_orthogonality_preservation(const ElementMap& phi, const AtomicTriple& t_in,
                                        const AtomicTriple& t_out, std::size_t trials,
                                        std::uint64_t seed, const Tolerance& tol = {},
                                        unsigned threads = 1);

/// |‖Φe − Φv‖ − ‖e − v‖|, plus the antipodal identity Φ(−e) = −Φ(e).
Report check_isometry_on_minimals(const ElementMap& phi, const AtomicTriple& t_in,
                                  const AtomicTriple& t_out, std::size_t trials, std::uint64_t seed,
                                  const Tolerance& tol = {}, unsigned threads = 1);

/// e ⊤ v ⇒ Φe ⊤ Φv on collinear pairs (factors without collinear minimal
/// pairs contribute no trials).
Report check_collinearity_preservation(const ElementMap& phi, const AtomicTriple& t_in,
                                       const AtomicTriple& t_out, std::size_t trials,
                                       std::uint64_t seed, const Tolerance& tol = {},
                                       unsigned threads = 1);

struct SocleSample {
  Element x;
  Element y;
};

/// Random minimal tripotents e_k together with i·e_k and their images;
/// `count` per summand, or the summand dimension plus two when zero, which
/// spans the space over the reals. Images must be minimal
/// tripotents, otherwise NotTripotentImage is thrown.
std::vector<SocleSample> socle_samples(const ElementMap& phi, const AtomicTriple& t_in,
                                       const AtomicTriple& t_out, std::uint64_t seed,
                                       std::size_t count = 0);

struct SocleExtension {
  ComplexMatrix map;  // coordinates of t_out = map · coordinates of t_in
  double residual = 0.0;
  double triple_defect = 0.0;  // max ‖T{x,y,z} − {Tx,Ty,Tz}‖ on random triples
  double smallest_singular_value = 0.0;
};

struct RealSocleExtension {
  RealMatrix map;  // on realified coordinates
  double residual = 0.0;
  double smallest_singular_value = 0.0;
};

/// Least-squares complex-linear fit. Throws RankDeficient when the samples
/// do not span and InconsistentSamples when the residual exceeds
/// max(1e-8, tol.abs_tol).
SocleExtension extend_to_socle(const AtomicTriple& t_in, const AtomicTriple& t_out,
                               const std::vector<SocleSample>& samples, const Tolerance& tol = {},
                               std::uint64_t seed = 0);

/// Same fit over the realified spaces.
RealSocleExtension extend_to_socle_real(const AtomicTriple& t_in, const AtomicTriple& t_out,
                                        const std::vector<SocleSample>& samples,
                                        const Tolerance& tol = {});

enum class LinearityTag { ComplexLinear, ConjugateLinear, HilbertMixed };
std::string to_string(LinearityTag tag);

struct SummandClassification {
  std::size_t summand = 0;
  std::string factor;
  LinearityTag tag = LinearityTag::ComplexLinear;
  std::size_t samples = 0;
  std::size_t complex_votes = 0;    // Φ(ie) = iΦ(e)
  std::size_t conjugate_votes = 0;  // Φ(ie) = −iΦ(e)
};

struct IsometryClassification {
  std::vector<SummandClassification> summands;
  double isometry_defect = 0.0;
};

/// Tags each summand of t_in by comparing Φ(ie) with ±iΦ(e). Throws
/// NotAnIsometry when sampled distances are not preserved and
/// InconsistentTag when a summand of rank ≥ 2 does not vote unanimously.
IsometryClassification classify_real_linear_isometry(const ElementMap& phi, const AtomicTriple& t_in,
                                                     const AtomicTriple& t_out, std::size_t trials,
                                                     std::uint64_t seed, const Tolerance& tol = {});

nlohmann::json to_json(const IsometryClassification& c);

}  // namespace triplelab
