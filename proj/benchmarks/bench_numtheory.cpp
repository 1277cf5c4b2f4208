#include <benchmark/benchmark.h>

#include "facto/group.hpp"
#include "facto/numtheory.hpp"
#include "facto/random.hpp"

using namespace facto;

namespace {

void BM_CrtCombine(benchmark::State& state) {
  auto primes = nt::prime_values(nt::gen_primes(state.range(0), 1000));
  nt::CrtBasis basis(primes);
  std::vector<BigInt> r;
  for (const auto& p : primes) r.push_back(p / 2);
  for (auto _ : state) benchmark::DoNotOptimize(nt::crt_combine(r, basis));
}
BENCHMARK(BM_CrtCombine)->RangeMultiplier(4)->Range(2, 128);

void BM_GenPrimes(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nt::gen_primes(state.range(0), 100));
}
BENCHMARK(BM_GenPrimes)->RangeMultiplier(4)->Range(4, 256);

void BM_CyclicDlog(benchmark::State& state) {
  Rng rng(2);
  auto sigma = rng.permutation(state.range(0));
  auto pi = power(sigma, BigInt(12345));
  for (auto _ : state) benchmark::DoNotOptimize(cyclic_dlog(pi, sigma));
}
BENCHMARK(BM_CyclicDlog)->RangeMultiplier(4)->Range(8, 2048);

void BM_PairCyclicGenerator(benchmark::State& state) {
  Rng rng(3);
  auto a = rng.permutation(state.range(0));
  auto b = power(a, BigInt(7));
  for (auto _ : state) benchmark::DoNotOptimize(pair_cyclic_generator(a, b));
}
BENCHMARK(BM_PairCyclicGenerator)->RangeMultiplier(4)->Range(8, 2048);

}  // namespace

BENCHMARK_MAIN();
