#include "facto/instance.hpp"

#include <set>

#include "facto/errors.hpp"
#include "facto/group.hpp"

namespace facto {
namespace {

std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

void check_perm_list(const std::vector<Permutation>& gens, std::size_t degree, const std::string& path) {
  if (degree == 0) throw ValidationError(path + "/degree", "degree must be at least 1");
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].degree() != degree)
      throw ValidationError(at(path + "/generators", i), "generator degree differs from group degree");
}

}  // namespace

std::string_view kind_tag(ProblemKind k) {
  switch (k) {
    case ProblemKind::F: return "F";
    case ProblemKind::KS: return "KS";
    case ProblemKind::SSS: return "SSS";
  }
  return "?";
}

std::string_view flavor_tag(ChangeFlavor f) {
  switch (f) {
    case ChangeFlavor::Unbounded: return "unbounded";
    case ChangeFlavor::Bounded: return "bounded";
    case ChangeFlavor::ZeroOne: return "zero_one";
  }
  return "?";
}

void prepare_monoid(MonoidDesc& m, const std::string& path) {
  switch (class_of(m)) {
    case MonoidClass::Symmetric:
      if (std::get<SymmetricGroup>(m).n == 0) throw ValidationError(path + "/n", "n must be at least 1");
      break;
    case MonoidClass::Transformation:
      if (std::get<TransformationMonoid>(m).n == 0) throw ValidationError(path + "/n", "n must be at least 1");
      break;
    case MonoidClass::CyclicPerm: {
      auto& g = std::get<CyclicPermGroup>(m);
      check_perm_list(g.generators, g.degree, path);
      if (g.generators.empty()) {
        g.canonical = Permutation::identity(g.degree);
        break;
      }
      auto gen = list_cyclic_generator(g.generators);
      if (!gen) throw ValidationError(path + "/generators", "not cyclic");
      g.canonical = std::move(*gen);
      break;
    }
    case MonoidClass::AbelianPerm: {
      const auto& g = std::get<AbelianPermGroup>(m);
      check_perm_list(g.generators, g.degree, path);
      for (std::size_t i = 0; i < g.generators.size(); ++i)
        for (std::size_t j = i + 1; j < g.generators.size(); ++j)
          if (compose(g.generators[i], g.generators[j]) != compose(g.generators[j], g.generators[i]))
            throw ValidationError(at(path + "/generators", j), "generators " + std::to_string(i) + " and " +
                                                                   std::to_string(j) + " do not commute");
      break;
    }
    case MonoidClass::FiniteCyclic:
      if (std::get<FiniteCyclic>(m).n < 2) throw ValidationError(path + "/n", "modulus must be at least 2");
      break;
    case MonoidClass::FiniteAbelian: {
      const auto& mods = std::get<FiniteAbelian>(m).moduli;
      if (mods.empty()) throw ValidationError(path + "/moduli", "at least one modulus required");
      for (std::size_t i = 0; i < mods.size(); ++i)
        if (mods[i] < 2) throw ValidationError(at(path + "/moduli", i), "modulus must be at least 2");
      break;
    }
    case MonoidClass::IntVectors:
      if (std::get<IntVectors>(m).dim == 0) throw ValidationError(path + "/dim", "dimension must be at least 1");
      break;
    case MonoidClass::NatVectors:
      if (std::get<NatVectors>(m).dim == 0) throw ValidationError(path + "/dim", "dimension must be at least 1");
      break;
    case MonoidClass::Integers:
    case MonoidClass::Naturals:
      break;
  }
}

Instance validate(Instance inst) {
  prepare_monoid(inst.monoid);
  check_element(inst.monoid, inst.target, "/target");
  for (std::size_t i = 0; i < inst.generators.size(); ++i) check_element(inst.monoid, inst.generators[i], at("/generators", i));
  if (inst.distinct) {
    if (inst.kind != ProblemKind::SSS) throw ValidationError("/distinct", "only meaningful for SSS");
    for (std::size_t i = 0; i < inst.generators.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (inst.generators[i] == inst.generators[j])
          throw ValidationError(at("/generators", i), "duplicate of generator " + std::to_string(j));
  }
  return inst;
}

ChangeInstance validate(ChangeInstance inst) {
  if (inst.c < 0) throw ValidationError("/target", "c must be nonnegative");
  std::set<BigInt> seen;
  for (std::size_t i = 0; i < inst.coins.size(); ++i) {
    if (inst.coins[i] < 0) throw ValidationError(at("/generators", i), "coins must be nonnegative");
    if (!seen.insert(inst.coins[i]).second) throw ValidationError(at("/generators", i), "coins must be pairwise distinct");
  }
  if (inst.flavor == ChangeFlavor::Bounded) {
    if (inst.bounds.size() != inst.coins.size()) throw ValidationError("/bounds", "one bound per coin required");
    for (std::size_t i = 0; i < inst.bounds.size(); ++i)
      if (inst.bounds[i] < 0) throw ValidationError(at("/bounds", i), "bounds must be nonnegative");
  } else if (!inst.bounds.empty()) {
    throw ValidationError("/bounds", "bounds only apply to the bounded flavor");
  }
  if (inst.a < 0) throw ValidationError("/objective/0", "a must be nonnegative");
  if (inst.b < 0) throw ValidationError("/objective/1", "b must be nonnegative");
  if (!inst.approx && (inst.a != 0 || inst.b != 0)) throw ValidationError("/objective", "objective only applies to approx instances");
  return inst;
}

AnyInstance validate(AnyInstance inst) {
  return std::visit([](auto&& x) -> AnyInstance { return validate(std::move(x)); }, std::move(inst));
}

std::optional<BigInt> coin_bound(const ChangeInstance& inst, std::size_t i) {
  switch (inst.flavor) {
    case ChangeFlavor::Unbounded: return std::nullopt;
    case ChangeFlavor::Bounded: return inst.bounds[i];
    case ChangeFlavor::ZeroOne: return BigInt(1);
  }
  return std::nullopt;
}

}  // namespace facto
