#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "facto/instance.hpp"
#include "facto/solvers.hpp"

namespace facto {

struct ReductionOutput {
  AnyInstance out;
  std::uint64_t h_of_k = 0;
  std::string rule;
  std::vector<std::string> notes;
  /// For rules that copy or relabel list entries: the input generator each
  /// output generator comes from, or kGadget for constructed entries. Empty
  /// when the rule does not track it.
  std::vector<std::size_t> source_index;

  static constexpr std::size_t kGadget = static_cast<std::size_t>(-1);

  const Instance& instance() const { return std::get<Instance>(out); }
  const ChangeInstance& change() const { return std::get<ChangeInstance>(out); }
};

nlohmann::json reduction_to_json(const ReductionOutput& r);

// Problem shape.
ReductionOutput expand_f_to_ks(const Instance& in);
ReductionOutput expand_ks_to_sss(const Instance& in);
ReductionOutput exact_from_atmost(const Instance& in);
ReductionOutput atmost_from_exact(const Instance& in);

// Integer encodings.
ReductionOutput shift_z_to_n(const Instance& in);
ReductionOutput pack_vectors(const Instance& in);

// Distinct elements and the symmetric-group gadget.
ReductionOutput distinctify(const Instance& in);
/// k < 4 is decided with `opts` and answered by a constant instance.
ReductionOutput sss_to_factorization_sym(const Instance& in, const SolveOptions& opts = {});

// Commutative cycle.
ReductionOutput cycperm_to_fincyc(const Instance& in);
ReductionOutput fincyc_to_intvectors(const Instance& in);
ReductionOutput naturals_to_cycperm(const Instance& in);
ReductionOutput sss_to_knapsack_atmost(const Instance& in);

// Change-making.
/// KS<=[N] -> bounded change-making, or bounded change-making -> SSS<=[N].
ReductionOutput change_bridge(const AnyInstance& in);
ReductionOutput change_approx_i(const Instance& in);
ReductionOutput change_approx_ii(const ChangeInstance& in);
ReductionOutput change_approx_iii(const Instance& in);
ReductionOutput change_approx_iv(const ChangeInstance& in);
/// Bounded change-approx -> SSS<=[Z]. source_index maps each output entry to
/// its block 0..m+2 (0 is d_0, i in [1,m] is coin i-1, m+1 and m+2 the overshoot blocks).
ReductionOutput change_approx_to_sss(const ChangeInstance& in, const SolveOptions& opts = {});

struct SliceOptions {
  std::uint64_t d = 1;  ///< slice index, the output parameter
  ChangeFlavor flavor = ChangeFlavor::Unbounded;
  BigInt a = 1;         ///< objective coefficient, >= 1
};
/// Subset sum (an SSS<=[N] instance with k >= m) -> d-th slice of change-approx with b = 0.
ReductionOutput subsetsum_to_change_slice(const Instance& in, const SliceOptions& opts = {});

// Named rules and chains.
struct RuleOptions {
  SliceOptions slice;
  SolveOptions solve;
};

std::span<const std::string_view> rule_names();
std::span<const std::string_view> chain_names();
bool is_rule(std::string_view name);
ReductionOutput apply_rule(std::string_view name, const AnyInstance& in, const RuleOptions& opts = {});

/// Declared output parameter of a rule or chain for input parameter k.
std::uint64_t declared_h(std::string_view name, std::uint64_t k, const RuleOptions& opts = {});

/// The composite of `first` followed by `second` (which was applied to first.out).
ReductionOutput compose_reductions(const ReductionOutput& first, ReductionOutput second, std::string rule);

}  // namespace facto
