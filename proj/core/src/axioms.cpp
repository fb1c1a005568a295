#include "triplelab/axioms.hpp"

#include <algorithm>
#include <cmath>

#include "triplelab/parallel.hpp"
#include "triplelab/random.hpp"

namespace triplelab {

namespace {

struct AxiomSample {
  double jordan = 0.0;
  double hermitian = 0.0;
  double spectrum = 0.0;
  double cube = 0.0;
};

AxiomSample sample_axioms(const AtomicTriple& t, const TripleProductFn* custom, std::uint64_t seed) {
  Rng rng(seed);
  auto product = [&](const Element& x, const Element& y, const Element& z) {
    return custom ? (*custom)(x, y, z) : t.triple_product(x, y, z);
  };
  const Element a = t.random_element(rng) * Complex(0.5 + 1.5 * rng.uniform(), 0.0);
  const Element b = t.random_element(rng);
  const Element x = t.random_element(rng);
  const Element y = t.random_element(rng);
  const Element z = t.random_element(rng);

  AxiomSample s;
  const Element lhs = product(a, b, product(x, y, z));
  const Element rhs = product(product(a, b, x), y, z) - product(x, product(b, a, y), z) +
                      product(x, y, product(a, b, z));
  s.jordan = t.norm(lhs - rhs);

  const ComplexMatrix laa = custom ? t.multiplication_operator(a, a, *custom)
                                   : t.multiplication_operator(a, a);
  s.hermitian = (laa - laa.adjoint()).norm();
  const ComplexMatrix sym = 0.5 * (laa + laa.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  s.spectrum = std::max(0.0, -solver.eigenvalues().minCoeff());

  const double na = t.norm(a);
  const double cubed = na * na * na;
  s.cube = cubed > 0.0 ? std::abs(t.norm(product(a, a, a)) - cubed) / cubed : 0.0;
  return s;
}

Report run(const AtomicTriple& t, const TripleProductFn* custom, std::size_t trials,
           std::uint64_t seed, const Tolerance& tol, unsigned threads) {
  tol.validate();
  const auto samples = run_indexed<AxiomSample>(trials, threads, [&](std::size_t i) {
    return sample_axioms(t, custom, trial_seed(seed, i));
  });

  Report jordan("jordan_identity", std::max(1e-8, tol.abs_tol));
  Report hermitian("laa_hermitian", std::max(1e-8, tol.abs_tol));
  Report spectrum("laa_spectrum_nonnegative", std::max(1e-8, tol.abs_tol));
  Report cube("cube_norm_identity", std::max(1e-7, tol.rel_tol));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    jordan.record(s.jordan, {{"trial", i}, {"residual", s.jordan}});
    hermitian.record(s.hermitian, {{"trial", i}, {"residual", s.hermitian}});
    spectrum.record(s.spectrum, {{"trial", i}, {"negative_part", s.spectrum}});
    cube.record(s.cube, {{"trial", i}, {"relative_error", s.cube}});
  }

  Report out("jbstar_axioms", 0.0);
  out.trials = trials;
  for (Report* r : {&jordan, &hermitian, &spectrum, &cube}) {
    r->trials = trials;
    out.checks.push_back(*r);
  }
  out.details = {{"factor", t.label()},
                 {"seed", seed}};
  return out;
}

}  // namespace

Report verify_jbstar_axioms(const AtomicTriple& t, std::size_t trials, std::uint64_t seed,
                            const Tolerance& tol, unsigned threads) {
  return run(t, nullptr, trials, seed, tol, threads);
}

Report verify_jbstar_axioms(const AtomicTriple& t, const TripleProductFn& product,
                            std::size_t trials, std::uint64_t seed, const Tolerance& tol,
                            unsigned threads) {
  return run(t, &product, trials, seed, tol, threads);
}

}  // namespace triplelab
