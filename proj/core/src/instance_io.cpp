#include <limits>
#include <stdexcept>

#include "facto/errors.hpp"
#include "facto/instance.hpp"

namespace facto {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ParseError(path, what); }

const json& field(const json& obj, const char* name, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) fail(path + "/" + name, "missing field");
  return *it;
}

const json* opt_field(const json& obj, const char* name) {
  auto it = obj.find(name);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

BigInt big(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_bigint(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }
  if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>()) : BigInt(j.get<std::int64_t>());
  fail(path, "expected a decimal string");
}

std::size_t size_value(const json& j, const std::string& path) {
  BigInt v = big(j, path);
  if (v < 0) throw ValidationError(path, "must be nonnegative");
  if (v > BigInt(std::numeric_limits<std::uint32_t>::max())) fail(path, "too large");
  return static_cast<std::size_t>(v);
}

std::uint64_t parameter(const json& j, const std::string& path) {
  BigInt v = big(j, path);
  if (v < 0) throw ValidationError(path, "k must be nonnegative");
  try {
    return to_u64(v);
  } catch (const std::out_of_range&) {
    fail(path, "k does not fit in 64 bits");
  }
}

bool flag(const json& obj, const char* name, bool fallback, const std::string& path) {
  const json* j = opt_field(obj, name);
  if (j == nullptr) return fallback;
  if (!j->is_boolean()) fail(path + "/" + name, "expected a boolean");
  return j->get<bool>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<Point> points(const json& j, const std::string& path) {
  array(j, path);
  std::vector<Point> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& p = j[i];
    if (!p.is_number_integer() || p.get<std::int64_t>() < 1 || p.get<std::int64_t>() > (1LL << 31))
      fail(path + "/" + std::to_string(i), "expected a positive point");
    out.push_back(static_cast<Point>(p.get<std::int64_t>()));
  }
  return out;
}

Permutation perm(const json& j, const std::string& path) {
  try {
    return Permutation(points(j, path));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(path, e.what());
  }
}

std::vector<Permutation> perm_list(const json& j, const std::string& path) {
  array(j, path);
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(perm(j[i], path + "/" + std::to_string(i)));
  return out;
}

std::vector<BigInt> big_list(const json& j, const std::string& path) {
  array(j, path);
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(big(j[i], path + "/" + std::to_string(i)));
  return out;
}

json big_json(const BigInt& x) { return x.str(); }

json big_list_json(const std::vector<BigInt>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(big_json(x));
  return out;
}

json perm_json(const Permutation& p) { return json(std::vector<Point>(p.images().begin(), p.images().end())); }

ProblemKind problem_kind(const std::string& tag, const std::string& path) {
  if (tag == "F") return ProblemKind::F;
  if (tag == "KS") return ProblemKind::KS;
  if (tag == "SSS") return ProblemKind::SSS;
  fail(path, "unknown problem \"" + tag + "\"");
}

ChangeFlavor flavor(const std::string& tag, const std::string& path) {
  if (tag == "unbounded") return ChangeFlavor::Unbounded;
  if (tag == "bounded") return ChangeFlavor::Bounded;
  if (tag == "zero_one") return ChangeFlavor::ZeroOne;
  fail(path, "unknown flavor \"" + tag + "\"");
}

std::string string_field(const json& obj, const char* name, const std::string& path) {
  const json& j = field(obj, name, path);
  if (!j.is_string()) fail(path + "/" + name, "expected a string");
  return j.get<std::string>();
}

}  // namespace

json monoid_to_json(const MonoidDesc& m) {
  json j;
  j["kind"] = std::string(class_tag(class_of(m)));
  switch (class_of(m)) {
    case MonoidClass::Symmetric: j["n"] = std::get<SymmetricGroup>(m).n; break;
    case MonoidClass::Transformation: j["n"] = std::get<TransformationMonoid>(m).n; break;
    case MonoidClass::CyclicPerm: {
      const auto& g = std::get<CyclicPermGroup>(m);
      j["degree"] = g.degree;
      j["generators"] = json::array();
      for (const auto& p : g.generators) j["generators"].push_back(perm_json(p));
      break;
    }
    case MonoidClass::AbelianPerm: {
      const auto& g = std::get<AbelianPermGroup>(m);
      j["degree"] = g.degree;
      j["generators"] = json::array();
      for (const auto& p : g.generators) j["generators"].push_back(perm_json(p));
      break;
    }
    case MonoidClass::FiniteCyclic: j["n"] = big_json(std::get<FiniteCyclic>(m).n); break;
    case MonoidClass::FiniteAbelian: j["moduli"] = big_list_json(std::get<FiniteAbelian>(m).moduli); break;
    case MonoidClass::IntVectors: j["dim"] = std::get<IntVectors>(m).dim; break;
    case MonoidClass::NatVectors: j["dim"] = std::get<NatVectors>(m).dim; break;
    case MonoidClass::Integers:
    case MonoidClass::Naturals: break;
  }
  return j;
}

json element_to_json(const Element& x) {
  if (const auto* v = std::get_if<BigInt>(&x)) return big_json(*v);
  if (const auto* v = std::get_if<IntVector>(&x)) return big_list_json(*v);
  if (const auto* p = std::get_if<Permutation>(&x)) return perm_json(*p);
  const auto& t = std::get<Transformation>(x);
  return json(std::vector<Point>(t.images().begin(), t.images().end()));
}

json to_json(const Instance& inst) {
  json j;
  j["problem"] = std::string(kind_tag(inst.kind));
  j["exact"] = inst.exact;
  j["distinct"] = inst.distinct;
  j["monoid"] = monoid_to_json(inst.monoid);
  j["target"] = element_to_json(inst.target);
  j["generators"] = json::array();
  for (const auto& g : inst.generators) j["generators"].push_back(element_to_json(g));
  j["k"] = inst.k;
  return j;
}

json to_json(const ChangeInstance& inst) {
  json j;
  j["problem"] = "CHANGE";
  j["flavor"] = std::string(flavor_tag(inst.flavor));
  j["approx"] = inst.approx;
  j["monoid"] = {{"kind", "naturals"}};
  j["target"] = big_json(inst.c);
  j["generators"] = big_list_json(inst.coins);
  if (inst.flavor == ChangeFlavor::Bounded) j["bounds"] = big_list_json(inst.bounds);
  if (inst.approx) j["objective"] = json::array({big_json(inst.a), big_json(inst.b)});
  j["k"] = inst.k;
  return j;
}

json to_json(const AnyInstance& inst) {
  return std::visit([](const auto& x) { return to_json(x); }, inst);
}

MonoidDesc monoid_from_json(const json& j, const std::string& path) {
  std::string tag = string_field(j, "kind", path);
  auto cls = class_from_tag(tag);
  if (!cls) fail(path + "/kind", "unknown monoid kind \"" + tag + "\"");
  switch (*cls) {
    case MonoidClass::Symmetric: return SymmetricGroup{size_value(field(j, "n", path), path + "/n")};
    case MonoidClass::Transformation: return TransformationMonoid{size_value(field(j, "n", path), path + "/n")};
    case MonoidClass::CyclicPerm:
      return CyclicPermGroup{size_value(field(j, "degree", path), path + "/degree"),
                             perm_list(field(j, "generators", path), path + "/generators"), std::nullopt};
    case MonoidClass::AbelianPerm:
      return AbelianPermGroup{size_value(field(j, "degree", path), path + "/degree"),
                              perm_list(field(j, "generators", path), path + "/generators")};
    case MonoidClass::FiniteCyclic: return FiniteCyclic{big(field(j, "n", path), path + "/n")};
    case MonoidClass::FiniteAbelian: return FiniteAbelian{big_list(field(j, "moduli", path), path + "/moduli")};
    case MonoidClass::IntVectors: return IntVectors{size_value(field(j, "dim", path), path + "/dim")};
    case MonoidClass::NatVectors: return NatVectors{size_value(field(j, "dim", path), path + "/dim")};
    case MonoidClass::Integers: return Integers{};
    case MonoidClass::Naturals: return Naturals{};
  }
  fail(path, "unreachable");
}

Element element_from_json(const MonoidDesc& m, const json& j, const std::string& path) {
  switch (class_of(m)) {
    case MonoidClass::Integers:
    case MonoidClass::Naturals:
    case MonoidClass::FiniteCyclic:
      return big(j, path);
    case MonoidClass::IntVectors:
    case MonoidClass::NatVectors:
    case MonoidClass::FiniteAbelian:
      return big_list(j, path);
    case MonoidClass::Transformation:
      try {
        return Transformation(points(j, path));
      } catch (const std::invalid_argument& e) {
        throw ValidationError(path, e.what());
      }
    default:
      return perm(j, path);
  }
}

AnyInstance instance_from_json(const json& j) {
  if (!j.is_object()) fail("", "expected an object");
  std::string problem = string_field(j, "problem", "");
  if (problem == "CHANGE") {
    ChangeInstance c;
    c.flavor = flavor(string_field(j, "flavor", ""), "/flavor");
    c.approx = flag(j, "approx", false, "");
    if (const json* m = opt_field(j, "monoid"); m != nullptr && class_of(monoid_from_json(*m)) != MonoidClass::Naturals)
      fail("/monoid/kind", "change-making instances live in naturals");
    c.c = big(field(j, "target", ""), "/target");
    c.coins = big_list(field(j, "generators", ""), "/generators");
    if (const json* b = opt_field(j, "bounds")) c.bounds = big_list(*b, "/bounds");
    if (const json* o = opt_field(j, "objective")) {
      if (!o->is_array() || o->size() != 2) fail("/objective", "expected [a, b]");
      c.a = big((*o)[0], "/objective/0");
      c.b = big((*o)[1], "/objective/1");
    } else if (c.approx) {
      fail("/objective", "missing field");
    }
    c.k = parameter(field(j, "k", ""), "/k");
    return validate(std::move(c));
  }
  Instance inst;
  inst.kind = problem_kind(problem, "/problem");
  inst.exact = flag(j, "exact", true, "");
  inst.distinct = flag(j, "distinct", false, "");
  inst.monoid = monoid_from_json(field(j, "monoid", ""));
  inst.target = element_from_json(inst.monoid, field(j, "target", ""), "/target");
  const json& gens = array(field(j, "generators", ""), "/generators");
  for (std::size_t i = 0; i < gens.size(); ++i)
    inst.generators.push_back(element_from_json(inst.monoid, gens[i], "/generators/" + std::to_string(i)));
  if (opt_field(j, "bounds") != nullptr) fail("/bounds", "bounds only apply to CHANGE instances");
  inst.k = parameter(field(j, "k", ""), "/k");
  return validate(std::move(inst));
}

AnyInstance parse_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.byte, e.what());
  }
  return instance_from_json(j);
}

std::string serialize(const AnyInstance& inst, int indent) { return to_json(inst).dump(indent); }

}  // namespace facto
