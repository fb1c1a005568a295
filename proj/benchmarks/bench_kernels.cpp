#include <benchmark/benchmark.h>

#include "triplelab/configurations.hpp"
#include "triplelab/preserver.hpp"
#include "triplelab/random.hpp"
#include "triplelab/ttp.hpp"

using namespace triplelab;

namespace {

AtomicTriple rectangular(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  return AtomicTriple({FactorDescriptor::rectangular(n, n)});
}

void BM_TripleProduct(benchmark::State& state) {
  const AtomicTriple t = rectangular(state);
  Rng rng(1);
  const Element x = t.random_element(rng), y = t.random_element(rng), z = t.random_element(rng);
  for (auto _ : state) benchmark::DoNotOptimize(t.triple_product(x, y, z));
}
BENCHMARK(BM_TripleProduct)->Arg(2)->Arg(4)->Arg(6);

void BM_PeirceDecomposition(benchmark::State& state) {
  const AtomicTriple t = rectangular(state);
  const Tripotent e = sample_minimal_tripotent(t, 0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(peirce_decompose(t, e.element()));
}
BENCHMARK(BM_PeirceDecomposition)->Arg(2)->Arg(4)->Arg(6);

void BM_SampleMinimal(benchmark::State& state) {
  const AtomicTriple t({FactorDescriptor::spin(static_cast<int>(state.range(0)))});
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_minimal_tripotent(t, 0, seed++));
}
BENCHMARK(BM_SampleMinimal)->Arg(3)->Arg(6);

void BM_GapFormula(benchmark::State& state) {
  const AtomicTriple t = rectangular(state);
  const Tripotent e = sample_minimal_tripotent(t, 0, 1);
  const Tripotent v = sample_minimal_tripotent(t, 0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gap_formula(t, e, v));
}
BENCHMARK(BM_GapFormula)->Arg(2)->Arg(4)->Arg(6);

void BM_RelativePosition(benchmark::State& state) {
  const AtomicTriple t({FactorDescriptor::antisymmetric(static_cast<int>(state.range(0)))});
  const Tripotent e = sample_minimal_tripotent(t, 0, 1);
  const Tripotent v = sample_minimal_tripotent(t, 0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(relative_position(t, e, v));
}
BENCHMARK(BM_RelativePosition)->Arg(4)->Arg(6);

void BM_SocleFit(benchmark::State& state) {
  const AtomicTriple t = rectangular(state);
  const MapSpec spec = random_automorphism_spec(t, 4);
  const ElementMap phi = as_element_map(spec, t, output_triple(spec, t));
  const auto samples = socle_samples(phi, t, output_triple(spec, t), 5);
  for (auto _ : state) benchmark::DoNotOptimize(extend_to_socle(t, output_triple(spec, t), samples));
}
BENCHMARK(BM_SocleFit)->Arg(2)->Arg(3);

}  // namespace
BENCHMARK_MAIN();
