#include <benchmark/benchmark.h>

#include "facto/reductions.hpp"
#include "facto/verify.hpp"

using namespace facto;

namespace {

void BM_ApplyRule(benchmark::State& state, std::string_view rule) {
  Rng rng(trial_seed(1, rule, 0));
  auto in = random_rule_input(rule, rng, sweep_caps(), 0.5, 4);
  for (auto _ : state) benchmark::DoNotOptimize(apply_rule(rule, in.instance, in.options));
}

void BM_VerifyTrials(benchmark::State& state, std::string_view rule) {
  VerifyConfig cfg;
  cfg.rule = std::string(rule);
  cfg.trials = 20;
  for (auto _ : state) benchmark::DoNotOptimize(verify_rule(cfg));
}

BENCHMARK_CAPTURE(BM_ApplyRule, sss_to_f_sym, "sss-to-f-sym");
BENCHMARK_CAPTURE(BM_ApplyRule, distinctify, "distinctify");
BENCHMARK_CAPTURE(BM_ApplyRule, nat_to_cycperm, "nat-to-cycperm");
BENCHMARK_CAPTURE(BM_ApplyRule, sss_to_ks_le, "sss-to-ks-le");
BENCHMARK_CAPTURE(BM_ApplyRule, change_approx_to_sss, "change-approx-to-sss");
BENCHMARK_CAPTURE(BM_ApplyRule, thm20, "thm20");
BENCHMARK_CAPTURE(BM_VerifyTrials, expand_f_ks, "expand-f-ks")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyTrials, sss_to_f_sym, "sss-to-f-sym")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
