#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "facto/bigint.hpp"
#include "facto/monoid.hpp"

namespace facto {

/// F: target is a product of k list elements in any order (with repetition).
/// KS: target = a_1^{x_1} ... a_m^{x_m}, sum x_i = k.
/// SSS: as KS with x_i in {0,1}; product over the chosen indices in ascending order.
enum class ProblemKind { F, KS, SSS };

std::string_view kind_tag(ProblemKind k);

struct Instance {
  MonoidDesc monoid = Integers{};
  ProblemKind kind = ProblemKind::SSS;
  bool exact = true;      ///< false: at most k factors
  bool distinct = false;  ///< SSS only: generators pairwise different
  Element target = BigInt(0);
  std::vector<Element> generators;
  std::uint64_t k = 0;

  friend bool operator==(const Instance&, const Instance&) = default;
};

enum class ChangeFlavor { Unbounded, Bounded, ZeroOne };

std::string_view flavor_tag(ChangeFlavor f);

/// Change-making. Decision: sum x_i c_i = c and sum x_i <= k.
/// Approx: sum x_i c_i >= c and a*(sum x_i c_i - c) + b*sum x_i <= k.
/// x_i ranges over N (unbounded), [0,b_i] (bounded) or {0,1} (zero_one).
struct ChangeInstance {
  ChangeFlavor flavor = ChangeFlavor::Unbounded;
  bool approx = false;
  BigInt c = 0;
  std::vector<BigInt> coins;
  std::vector<BigInt> bounds;  ///< bounded flavor only
  BigInt a = 0;                ///< objective f(x,y) = a x + b y, approx only
  BigInt b = 0;
  std::uint64_t k = 0;

  friend bool operator==(const ChangeInstance&, const ChangeInstance&) = default;
};

using AnyInstance = std::variant<Instance, ChangeInstance>;

/// Checks every invariant, throwing ValidationError with a field path.
/// Returns the instance with the cyclic group's canonical generator cached.
Instance validate(Instance inst);
ChangeInstance validate(ChangeInstance inst);
AnyInstance validate(AnyInstance inst);

/// Caches the canonical generator of a CyclicPermGroup (no-op otherwise).
/// Throws ValidationError when the generators do not generate a cyclic group.
void prepare_monoid(MonoidDesc& m, const std::string& path = "/monoid");

/// Upper bound on the per-coin multiplicity: b_i, 1 or none (unbounded).
std::optional<BigInt> coin_bound(const ChangeInstance& inst, std::size_t i);

// JSON: see README for the format. Parsing validates.
nlohmann::json monoid_to_json(const MonoidDesc& m);
nlohmann::json element_to_json(const Element& x);
nlohmann::json to_json(const Instance& inst);
nlohmann::json to_json(const ChangeInstance& inst);
nlohmann::json to_json(const AnyInstance& inst);

MonoidDesc monoid_from_json(const nlohmann::json& j, const std::string& path = "/monoid");
Element element_from_json(const MonoidDesc& m, const nlohmann::json& j, const std::string& path);
AnyInstance instance_from_json(const nlohmann::json& j);
/// Throws ParseError on malformed text, ValidationError on bad content.
AnyInstance parse_instance(std::string_view text);
std::string serialize(const AnyInstance& inst, int indent = -1);

}  // namespace facto
