#include <benchmark/benchmark.h>

#include "pfmirror/automorphy.hpp"
#include "pfmirror/cone.hpp"
#include "pfmirror/exterior.hpp"
#include "pfmirror/heisenberg.hpp"
#include "pfmirror/sampling.hpp"
#include "pfmirror/smith.hpp"

namespace {

void BM_WedgePower(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  pfm::Rng rng(1);
  const pfm::exterior::FormElement omega = pfm::normalized_curvature(2, pfm::random_int_matrix(rng, n, 2));
  for (auto _ : state) benchmark::DoNotOptimize(pfm::exterior::wedge_power(omega, n));
}
BENCHMARK(BM_WedgePower)->DenseRange(2, 6);

void BM_SmithNormalForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  pfm::Rng rng(2);
  const pfm::IntMatrix A = pfm::random_int_matrix(rng, n, 9);
  // Exact transforms outgrow 64 bits on large inputs; the mod-r inverses do not.
  for (auto _ : state) benchmark::DoNotOptimize(pfm::smith_inverse_transforms_mod(A, 12));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(2, 16);

// r = 2, A = I_2 has no solution at rank 2, so the whole tree is visited.
void BM_SearchExhausted(benchmark::State& state) {
  const pfm::IntMatrix I2{{1, 0}, {0, 1}};
  pfm::SearchLimits limits;
  limits.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pfm::brute_force_search(2, I2, 2, 1, limits));
}
BENCHMARK(BM_SearchExhausted)->Arg(1)->Arg(4);

void BM_SearchRank4(benchmark::State& state) {
  const pfm::IntMatrix A{{1, 1}, {0, 2}};
  pfm::SearchLimits limits;
  limits.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(pfm::brute_force_search(4, A, 4, 1, limits));
}
BENCHMARK(BM_SearchRank4);

void BM_AutomorphyEval(benchmark::State& state) {
  const pfm::TorusData torus(pfm::QCMatrix{{pfm::kI}});
  pfm::BundleData b{2, pfm::IntMatrix{{1}}, {pfm::PiComplex(0)}, pfm::section5_cocycle()};
  const pfm::FactorOfAutomorphy foa(b, torus);
  pfm::Rng rng(3);
  const pfm::LatticeVector g = pfm::random_lattice(rng, 1, 3);
  const pfm::CVector z = pfm::random_point(rng, torus);
  for (auto _ : state) benchmark::DoNotOptimize(pfm::automorphy_eval(foa, g, z));
}
BENCHMARK(BM_AutomorphyEval);

}  // namespace

BENCHMARK_MAIN();
