#include <benchmark/benchmark.h>

#include "facto/random.hpp"
#include "facto/solvers.hpp"

using namespace facto;

namespace {

Instance draw(MonoidClass cls, ProblemKind kind, std::uint64_t k, std::size_t m, std::size_t n) {
  RandomRequest req;
  req.monoid = cls;
  req.kind = kind;
  req.k = k;
  req.m = m;
  RandomCaps caps;
  caps.max_n = n;
  caps.max_m = m;
  caps.max_k = k;
  return random_instance(17, req, caps);
}

void BM_FactorizationSymmetric(benchmark::State& state) {
  auto inst = draw(MonoidClass::Symmetric, ProblemKind::F, state.range(0), 5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(solve_factorization(inst));
}
BENCHMARK(BM_FactorizationSymmetric)->DenseRange(2, 8, 2);

void BM_FactorizationTransformation(benchmark::State& state) {
  auto inst = draw(MonoidClass::Transformation, ProblemKind::F, state.range(0), 4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(solve_factorization(inst));
}
BENCHMARK(BM_FactorizationTransformation)->DenseRange(2, 6, 2);

void BM_SubsetSumEnumeration(benchmark::State& state) {
  auto inst = draw(MonoidClass::Integers, ProblemKind::SSS, state.range(0), 16, 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_subsetsum(inst));
}
BENCHMARK(BM_SubsetSumEnumeration)->DenseRange(2, 6, 2);

void BM_SubsetSumPrefixDp(benchmark::State& state) {
  auto inst = draw(MonoidClass::Integers, ProblemKind::SSS, state.range(0), 16, 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_prefix_dp(inst));
}
BENCHMARK(BM_SubsetSumPrefixDp)->DenseRange(2, 6, 2);

void BM_DigitCheck(benchmark::State& state) {
  RandomRequest req;
  req.monoid = MonoidClass::FiniteAbelian;
  req.k = state.range(0);
  req.m = 8;
  RandomCaps caps;
  caps.max_n = 3;
  caps.max_m = 8;
  caps.max_modulus = 9;
  auto inst = random_instance(5, req, caps);
  for (auto _ : state) benchmark::DoNotOptimize(solve_fabg_digitcheck(inst));
}
BENCHMARK(BM_DigitCheck)->DenseRange(1, 4);

void BM_ChangeUnbounded(benchmark::State& state) {
  ChangeRequest req;
  req.k = state.range(0);
  RandomCaps caps;
  caps.max_m = 4;
  auto inst = random_change_instance(3, req, caps);
  for (auto _ : state) benchmark::DoNotOptimize(solve_change(inst));
}
BENCHMARK(BM_ChangeUnbounded)->DenseRange(2, 10, 4);

}  // namespace

BENCHMARK_MAIN();
