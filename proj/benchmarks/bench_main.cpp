#include <benchmark/benchmark.h>

#include <random>

#include "ellchar/chaincx.hpp"
#include "ellchar/chars.hpp"
#include "ellchar/dlclass.hpp"
#include "ellchar/harness.hpp"
#include "ellchar/smith.hpp"
#include "ellchar/weil.hpp"

namespace ellchar {
namespace {

void BM_CycloProduct(benchmark::State& state) {
  const i64 n = state.range(0);
  CycloNumber a, b;
  for (i64 k = 0; k < n; k += 3) a += CycloNumber::root(RootOfUnity(k, n), n);
  for (i64 k = 1; k < n; k += 5) b += Rational(static_cast<long>(k)) * CycloNumber::root(RootOfUnity(k, n), n);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CycloProduct)->Arg(12)->Arg(60)->Arg(255);

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<i64> dist(-3, 3);
  std::uniform_int_distribution<std::size_t> col(0, n - 1);
  IntMatrix a(n, std::vector<i64>(n));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = 6 + dist(rng);
    a[i][col(rng)] += dist(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a, n));
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16)->Arg(32);

void BM_EnumerateChars(benchmark::State& state) {
  const TorusPtr t = build_torus(state.range(0), static_cast<int>(state.range(1)), static_cast<int>(state.range(2)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_chars(t, Coefficient{}));
  state.SetItemsProcessed(state.iterations() * t->unit_group().order());
}
BENCHMARK(BM_EnumerateChars)->Args({2, 2, 2})->Args({3, 2, 2})->Args({2, 3, 2})->Args({4, 3, 1});

void BM_LiftFibers(benchmark::State& state) {
  const TorusPtr t = build_torus(2, 2, 3);
  const auto chars = enumerate_chars(t, Coefficient{});
  for (auto _ : state)
    for (const auto& th : chars) benchmark::DoNotOptimize(lifts_enum(r_ell(th, 3)));
  state.SetItemsProcessed(state.iterations() * static_cast<i64>(chars.size()));
}
BENCHMARK(BM_LiftFibers);

void BM_WeilInduced(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  const TorusPtr t = build_torus(state.range(0), n, 1);
  TorusChar theta = enumerate_chars(t, Coefficient{}).back();
  for (const auto& th : enumerate_chars(t, Coefficient{}))
    if (is_general(th)) theta = th;
  for (auto _ : state) {
    const WeilModel m = build_model(theta, n, 2000);
    benchmark::DoNotOptimize(inner_product(m.induced(theta), m.induced(theta)));
  }
}
BENCHMARK(BM_WeilInduced)->Args({2, 2})->Args({3, 2})->Args({2, 3});

void BM_EulerClass(benchmark::State& state) {
  const PermComplex c = torsor_corpus_entry(1, static_cast<int>(state.range(0))).complex;
  const CoeffSpec spec = CoeffSpec::cyclotomic(c.t().exponent());
  for (auto _ : state) benchmark::DoNotOptimize(euler_class(c, spec));
}
BENCHMARK(BM_EulerClass)->Arg(3)->Arg(17)->Arg(41);

void BM_DerivedIsotypic(benchmark::State& state) {
  const PermComplex c = fixed_point_complex(3);
  const AbChar triv = AbChar::trivial(c.t());
  const CoeffSpec spec = CoeffSpec::finite(3, 1);
  const int truncation = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(derived_isotypic(c, triv, spec, truncation).homology_dims());
}
BENCHMARK(BM_DerivedIsotypic)->Arg(4)->Arg(8)->Arg(16);

void BM_VerifyDiagram(benchmark::State& state) {
  const TorusPtr t = build_torus(state.range(0), 2, 2);
  const i64 ell = state.range(1);
  const FiniteLevelProvider p = synthetic_provider(t, 1);
  for (auto _ : state) benchmark::DoNotOptimize(verify_diagram_all(t, ell, p, CdFunction::level_proxy()).pass());
}
BENCHMARK(BM_VerifyDiagram)->Args({2, 3})->Args({3, 2})->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ellchar

BENCHMARK_MAIN();
