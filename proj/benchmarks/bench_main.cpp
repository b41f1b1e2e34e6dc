#include <benchmark/benchmark.h>

#include "spinnet/bridge.hpp"
#include "spinnet/extrinsic.hpp"
#include "spinnet/intrinsic.hpp"
#include "spinnet/minimal.hpp"
#include "spinnet/multiratio.hpp"
#include "spinnet/shapes.hpp"

using namespace spinnet;

static void BM_Hyperedges(benchmark::State& state) {
  const FecNet torus = shapes::torus(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hyperedges(torus));
  state.SetItemsProcessed(state.iterations() * torus.topology().face_count());
}
BENCHMARK(BM_Hyperedges)->Arg(16)->Arg(64)->Arg(100);

static void BM_DiracApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HyperedgeField field = hyperedges(shapes::torus(n, n));
  const QuatSparseOperator op = dirac_matrix(field);
  const auto phi = shapes::random_spinor(n * n, 1);
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(phi, threads));
}
BENCHMARK(BM_DiracApply)->Args({64, 1})->Args({100, 1})->Args({100, 4});

static void BM_SolveSpinor(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HyperedgeField field = hyperedges(shapes::torus(n, n));
  const std::vector<double> rho(n * n, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(solve_spinor(field, rho));
}
BENCHMARK(BM_SolveSpinor)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_SpinTransform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HyperedgeField field = hyperedges(shapes::torus(n, n));
  const auto phi = shapes::random_spinor(n * n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(spin_transform(field, phi));
}
BENCHMARK(BM_SpinTransform)->Arg(32)->Arg(100);

static void BM_VertexArguments(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FecNet torus = shapes::torus(n, n);
  const HyperedgeField field = hyperedges(torus);
  for (auto _ : state)
    for (int v = 0; v < torus.topology().vertex_count(); ++v) benchmark::DoNotOptimize(vertex_argument(field, v));
}
BENCHMARK(BM_VertexArguments)->Arg(32);

static void BM_PreferredLifting(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const IntrinsicNet inet = intrinsic_of(shapes::torus(n, n));
  for (auto _ : state) benchmark::DoNotOptimize(preferred_lifting(inet));
}
BENCHMARK(BM_PreferredLifting)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_Weierstrass(benchmark::State& state) {
  const PlanarMesh pm = shapes::hex_disk();
  const QuadDiff q = hqd_solve(pm);
  for (auto _ : state) benchmark::DoNotOptimize(weierstrass(pm, q));
}
BENCHMARK(BM_Weierstrass);

static void BM_RelationCheck(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FecNet torus = shapes::torus(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(relation_check(torus));
}
BENCHMARK(BM_RelationCheck)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
