#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "facto/bigint.hpp"
#include "facto/perm.hpp"

namespace facto {

using IntVector = std::vector<BigInt>;

/// An element of one of the supported monoids. Permutation groups store
/// permutations, T_n stores transformations, the numeric classes store a
/// big integer or a vector of them.
using Element = std::variant<BigInt, IntVector, Permutation, Transformation>;

struct SymmetricGroup {
  std::size_t n = 1;
  friend bool operator==(const SymmetricGroup&, const SymmetricGroup&) = default;
};

struct TransformationMonoid {
  std::size_t n = 1;
  friend bool operator==(const TransformationMonoid&, const TransformationMonoid&) = default;
};

/// <generators> <= S_degree, required to be cyclic.
struct CyclicPermGroup {
  std::size_t degree = 1;
  std::vector<Permutation> generators;
  /// Single generator of the group, filled in by validation; not serialized.
  std::optional<Permutation> canonical;

  friend bool operator==(const CyclicPermGroup& a, const CyclicPermGroup& b) {
    return a.degree == b.degree && a.generators == b.generators;
  }
};

/// <generators> <= S_degree with pairwise commuting generators.
struct AbelianPermGroup {
  std::size_t degree = 1;
  std::vector<Permutation> generators;
  friend bool operator==(const AbelianPermGroup&, const AbelianPermGroup&) = default;
};

/// Z_n, n >= 2.
struct FiniteCyclic {
  BigInt n = 2;
  friend bool operator==(const FiniteCyclic&, const FiniteCyclic&) = default;
};

/// Z_{n_1} x ... x Z_{n_d}, every n_j >= 2.
struct FiniteAbelian {
  std::vector<BigInt> moduli;
  friend bool operator==(const FiniteAbelian&, const FiniteAbelian&) = default;
};

struct Integers {
  friend bool operator==(const Integers&, const Integers&) = default;
};
struct Naturals {
  friend bool operator==(const Naturals&, const Naturals&) = default;
};
struct IntVectors {
  std::size_t dim = 1;
  friend bool operator==(const IntVectors&, const IntVectors&) = default;
};
struct NatVectors {
  std::size_t dim = 1;
  friend bool operator==(const NatVectors&, const NatVectors&) = default;
};

using MonoidDesc = std::variant<Integers, Naturals, IntVectors, NatVectors, FiniteCyclic, FiniteAbelian,
                                SymmetricGroup, TransformationMonoid, CyclicPermGroup, AbelianPermGroup>;

enum class MonoidClass { Integers, Naturals, IntVectors, NatVectors, FiniteCyclic, FiniteAbelian, Symmetric, Transformation, CyclicPerm, AbelianPerm };

inline constexpr MonoidClass kAllMonoidClasses[] = {
    MonoidClass::Integers,     MonoidClass::Naturals,      MonoidClass::IntVectors,     MonoidClass::NatVectors,
    MonoidClass::FiniteCyclic, MonoidClass::FiniteAbelian, MonoidClass::Symmetric,      MonoidClass::Transformation,
    MonoidClass::CyclicPerm,   MonoidClass::AbelianPerm};

MonoidClass class_of(const MonoidDesc& m);
/// The "kind" tag used in the JSON format.
std::string_view class_tag(MonoidClass c);
std::optional<MonoidClass> class_from_tag(std::string_view tag);

bool is_commutative(const MonoidDesc& m);
bool is_permutation_class(MonoidClass c);
/// Degree of the points acted on, for the permutation and transformation classes.
std::size_t degree_of(const MonoidDesc& m);

Element identity(const MonoidDesc& m);
/// The monoid product; for the additive classes this is the sum.
Element multiply(const MonoidDesc& m, const Element& a, const Element& b);
/// Inverse of a, or std::nullopt when the monoid is not a group (T_n, N, N^n).
std::optional<Element> inverse(const MonoidDesc& m, const Element& a);
/// a^e by repeated squaring.
Element power(const MonoidDesc& m, const Element& a, std::uint64_t e);

/// Throws ValidationError (at `path`) unless x is a well-formed element of m.
/// Membership in a permutation group is checked for CyclicPermGroup (via the
/// cached canonical generator) and by commutation with the generators for
/// AbelianPermGroup.
void check_element(const MonoidDesc& m, const Element& x, const std::string& path);

std::string element_to_string(const Element& x);

struct ElementHash {
  std::size_t operator()(const Element& x) const noexcept;
};

}  // namespace facto
