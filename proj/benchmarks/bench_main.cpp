#include <benchmark/benchmark.h>

#include "constellation/affine.hpp"
#include "constellation/latin.hpp"
#include "constellation/mub.hpp"
#include "constellation/search.hpp"

using namespace constellation;

namespace {

LatinSquare first_reduced(int n, std::uint64_t skip) {
  std::optional<LatinSquare> out;
  enumerate_reduced_latin(n, [&](std::uint64_t idx, const LatinSquare& s) {
    if (idx < skip) return true;
    out = s;
    return false;
  });
  return *out;
}

void BM_Transversals6(benchmark::State& state) {
  const auto square = first_reduced(6, static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(transversals(square));
}
BENCHMARK(BM_Transversals6)->Arg(0)->Arg(4000)->Arg(9000);

void BM_MateSearch(benchmark::State& state) {
  const auto square = first_reduced(static_cast<int>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(find_orthogonal_mate(square));
}
BENCHMARK(BM_MateSearch)->Arg(5)->Arg(6)->Arg(7);

void BM_CertifyOrder5(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(certify_mates(5));
}
BENCHMARK(BM_CertifyOrder5)->Unit(benchmark::kMillisecond);

void BM_DefectGradient(benchmark::State& state) {
  const auto obj = DefectObjective::for_signature(6, {5, 5, 3, 1});
  const Eigen::VectorXd x = obj.initial_parameters(1, 0);
  Eigen::VectorXd g;
  for (auto _ : state) benchmark::DoNotOptimize(obj.value_and_gradient(x, g));
}
BENCHMARK(BM_DefectGradient);

void BM_DefectValue(benchmark::State& state) {
  const auto obj = DefectObjective::for_signature(6, {5, 5, 3, 1});
  const Eigen::VectorXd x = obj.initial_parameters(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(obj.value(x));
}
BENCHMARK(BM_DefectValue);

void BM_Plane(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_plane_axioms(make_plane(q)));
}
BENCHMARK(BM_Plane)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_CompleteSet(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wf_complete_set(q));
}
BENCHMARK(BM_CompleteSet)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
