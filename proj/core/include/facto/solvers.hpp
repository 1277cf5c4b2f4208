#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "facto/instance.hpp"

namespace facto {

enum class WitnessKind {
  None,
  Sequence,   ///< F: factor indices in product order
  Exponents,  ///< KS and change-making: x_i per generator or coin
  Subset,     ///< SSS: ascending indices
};

struct SolveStats {
  std::uint64_t nodes = 0;
  double time_ms = 0.0;
};

struct Verdict {
  bool answer = false;
  WitnessKind witness_kind = WitnessKind::None;
  std::vector<std::uint64_t> witness;
  SolveStats stats;
};

/// 10^6 unless the environment variable FACTO_STATE_CAP holds a positive integer.
std::uint64_t default_state_cap();

struct SolveOptions {
  /// Maximum number of stored states (BFS layers, DP tables). Enumerating
  /// solvers allow 64 times as many visited nodes. Exceeding it throws ResourceLimit.
  std::uint64_t state_cap = default_state_cap();
  bool want_witness = true;
  /// Decide approx change-making with a = 0, b >= 1 by the greedy rule
  /// instead of enumeration.
  bool change_greedy = true;
};

/// BFS over products of exactly j factors, j = 0..k (all j <= k for the at-most variant).
Verdict solve_factorization(const Instance& inst, const SolveOptions& opts = {});
/// Enumerates exponent vectors with sum k (or <= k) and evaluates the ordered product.
Verdict solve_knapsack(const Instance& inst, const SolveOptions& opts = {});
/// Enumerates index sets of size k (or <= k); the product runs over ascending indices.
Verdict solve_subsetsum(const Instance& inst, const SolveOptions& opts = {});
/// DP over (count, value) for KS/SSS in commutative monoids.
Verdict solve_numeric_dp(const Instance& inst, const SolveOptions& opts = {});
/// DP over (count, prefix product) along the generator order; any monoid.
/// In the at-most variant only the smallest count per product is kept.
Verdict solve_prefix_dp(const Instance& inst, const SolveOptions& opts = {});
/// Digit and carry certificate search for SSS over finite abelian groups.
Verdict solve_fabg_digitcheck(const Instance& inst, const SolveOptions& opts = {});
Verdict solve_change(const ChangeInstance& inst, const SolveOptions& opts = {});

/// The default oracle: BFS for F, prefix DP for KS/SSS.
Verdict solve(const Instance& inst, const SolveOptions& opts = {});
Verdict solve(const ChangeInstance& inst, const SolveOptions& opts = {});
Verdict solve(const AnyInstance& inst, const SolveOptions& opts = {});

/// Replays a yes-witness; true iff it reproduces the target under every constraint.
bool check_witness(const Instance& inst, const Verdict& v);
bool check_witness(const ChangeInstance& inst, const Verdict& v);

nlohmann::json verdict_to_json(const Verdict& v);

}  // namespace facto
