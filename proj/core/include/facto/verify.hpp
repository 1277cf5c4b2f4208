#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "facto/random.hpp"
#include "facto/reductions.hpp"
#include "facto/solvers.hpp"

namespace facto {

/// An in-domain input for a rule, with the rule options drawn for it.
struct RuleInput {
  AnyInstance instance;
  RuleOptions options;
};

/// Caps used by the soundness sweep: n <= 6, m <= 4, k <= 5, moduli <= 60, coins <= 30.
RandomCaps sweep_caps();

/// Draws an instance inside the domain of `rule` (a rule or chain name).
/// A fixed `k` pins the input parameter. Throws std::invalid_argument for an unknown rule.
RuleInput random_rule_input(std::string_view rule, Rng& rng, const RandomCaps& caps, double bias = 0.5,
                            std::optional<std::uint64_t> k = std::nullopt);

/// Seed of one trial, derived from the run seed, the rule name and the trial index.
std::uint64_t trial_seed(std::uint64_t seed, std::string_view rule, std::uint64_t trial);

struct Disagreement {
  std::uint64_t trial = 0;
  std::uint64_t trial_seed = 0;
  nlohmann::json input;
  nlohmann::json options;  ///< slice options, for the slice rule only
  nlohmann::json output;  ///< null when the rule threw
  std::optional<bool> input_answer;
  std::optional<bool> output_answer;
  std::string error;
};

struct VerifyConfig {
  std::string rule;
  std::uint64_t trials = 200;
  std::uint64_t seed = 1;
  RandomCaps caps = sweep_caps();
  double bias = 0.5;
  SolveOptions solve;
};

struct VerifyReport {
  std::string rule;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t agreements = 0;
  std::uint64_t positives = 0;  ///< trials whose input was a yes-instance
  std::vector<Disagreement> disagreements;
  double wall_ms = 0;
};

/// Result of one trial: oracle verdicts on the input and on the reduced instance.
struct TrialOutcome {
  RuleInput input;
  std::optional<ReductionOutput> output;
  std::optional<bool> input_answer;
  std::optional<bool> output_answer;
  std::string error;

  bool agrees() const { return error.empty() && input_answer && output_answer && *input_answer == *output_answer; }
};

TrialOutcome run_trial(std::string_view rule, const RuleInput& input, const SolveOptions& solve = {});
VerifyReport verify_rule(const VerifyConfig& cfg);

/// `with_time` false drops wall_ms so that reports are byte-identical across runs.
nlohmann::json to_json(const VerifyReport& r, bool with_time = true);

}  // namespace facto
