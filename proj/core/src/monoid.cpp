#include "facto/monoid.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "facto/errors.hpp"
#include "facto/group.hpp"
#include "facto/numtheory.hpp"

namespace facto {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr std::array<std::pair<MonoidClass, std::string_view>, 10> kTags{{
    {MonoidClass::Integers, "integers"},
    {MonoidClass::Naturals, "naturals"},
    {MonoidClass::IntVectors, "int_vectors"},
    {MonoidClass::NatVectors, "nat_vectors"},
    {MonoidClass::FiniteCyclic, "finite_cyclic"},
    {MonoidClass::FiniteAbelian, "finite_abelian"},
    {MonoidClass::Symmetric, "symmetric"},
    {MonoidClass::Transformation, "transformation"},
    {MonoidClass::CyclicPerm, "cyclic_perm"},
    {MonoidClass::AbelianPerm, "abelian_perm"},
}};

const IntVector& as_vec(const Element& x) { return std::get<IntVector>(x); }
const BigInt& as_int(const Element& x) { return std::get<BigInt>(x); }

IntVector add_vec(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw ValidationError(path, what); }

const Permutation& expect_perm(const Element& x, std::size_t degree, const std::string& path) {
  const auto* p = std::get_if<Permutation>(&x);
  if (p == nullptr) bad(path, "expected a permutation");
  if (p->degree() != degree) bad(path, "permutation degree " + std::to_string(p->degree()) + " != " + std::to_string(degree));
  return *p;
}

}  // namespace

MonoidClass class_of(const MonoidDesc& m) { return static_cast<MonoidClass>(m.index()); }

std::string_view class_tag(MonoidClass c) {
  for (const auto& [k, t] : kTags)
    if (k == c) return t;
  return "?";
}

std::optional<MonoidClass> class_from_tag(std::string_view tag) {
  for (const auto& [k, t] : kTags)
    if (t == tag) return k;
  return std::nullopt;
}

bool is_commutative(const MonoidDesc& m) {
  auto c = class_of(m);
  if (c == MonoidClass::Symmetric) return std::get<SymmetricGroup>(m).n <= 2;
  if (c == MonoidClass::Transformation) return std::get<TransformationMonoid>(m).n <= 1;
  return true;
}

bool is_permutation_class(MonoidClass c) {
  return c == MonoidClass::Symmetric || c == MonoidClass::CyclicPerm || c == MonoidClass::AbelianPerm;
}

std::size_t degree_of(const MonoidDesc& m) {
  return std::visit(overloaded{[](const SymmetricGroup& g) { return g.n; },
                               [](const TransformationMonoid& g) { return g.n; },
                               [](const CyclicPermGroup& g) { return g.degree; },
                               [](const AbelianPermGroup& g) { return g.degree; },
                               [](const auto&) -> std::size_t { return 0; }},
                    m);
}

Element identity(const MonoidDesc& m) {
  return std::visit(
      overloaded{[](const Integers&) -> Element { return BigInt(0); },
                 [](const Naturals&) -> Element { return BigInt(0); },
                 [](const IntVectors& v) -> Element { return IntVector(v.dim, BigInt(0)); },
                 [](const NatVectors& v) -> Element { return IntVector(v.dim, BigInt(0)); },
                 [](const FiniteCyclic&) -> Element { return BigInt(0); },
                 [](const FiniteAbelian& g) -> Element { return IntVector(g.moduli.size(), BigInt(0)); },
                 [](const SymmetricGroup& g) -> Element { return Permutation::identity(g.n); },
                 [](const TransformationMonoid& g) -> Element { return Transformation::identity(g.n); },
                 [](const CyclicPermGroup& g) -> Element { return Permutation::identity(g.degree); },
                 [](const AbelianPermGroup& g) -> Element { return Permutation::identity(g.degree); }},
      m);
}

Element multiply(const MonoidDesc& m, const Element& a, const Element& b) {
  switch (class_of(m)) {
    case MonoidClass::Integers:
    case MonoidClass::Naturals:
      return BigInt(as_int(a) + as_int(b));
    case MonoidClass::IntVectors:
    case MonoidClass::NatVectors:
      return add_vec(as_vec(a), as_vec(b));
    case MonoidClass::FiniteCyclic: {
      const BigInt& n = std::get<FiniteCyclic>(m).n;
      BigInt s = as_int(a) + as_int(b);
      if (s >= n) s -= n;
      return s;
    }
    case MonoidClass::FiniteAbelian: {
      const auto& mods = std::get<FiniteAbelian>(m).moduli;
      IntVector r = add_vec(as_vec(a), as_vec(b));
      for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] >= mods[i]) r[i] -= mods[i];
      return r;
    }
    case MonoidClass::Transformation:
      return compose(std::get<Transformation>(a), std::get<Transformation>(b));
    default:
      return compose(std::get<Permutation>(a), std::get<Permutation>(b));
  }
}

std::optional<Element> inverse(const MonoidDesc& m, const Element& a) {
  switch (class_of(m)) {
    case MonoidClass::Integers:
      return BigInt(-as_int(a));
    case MonoidClass::IntVectors: {
      IntVector r = as_vec(a);
      for (auto& e : r) e = -e;
      return r;
    }
    case MonoidClass::FiniteCyclic: {
      const BigInt& n = std::get<FiniteCyclic>(m).n;
      return as_int(a) == 0 ? BigInt(0) : BigInt(n - as_int(a));
    }
    case MonoidClass::FiniteAbelian: {
      const auto& mods = std::get<FiniteAbelian>(m).moduli;
      IntVector r = as_vec(a);
      for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0) r[i] = mods[i] - r[i];
      return r;
    }
    case MonoidClass::Symmetric:
    case MonoidClass::CyclicPerm:
    case MonoidClass::AbelianPerm:
      return std::get<Permutation>(a).inverse();
    default:
      return std::nullopt;
  }
}

Element power(const MonoidDesc& m, const Element& a, std::uint64_t e) {
  Element result = identity(m);
  Element base = a;
  while (e > 0) {
    if (e & 1U) result = multiply(m, result, base);
    e >>= 1U;
    if (e > 0) base = multiply(m, base, base);
  }
  return result;
}

void check_element(const MonoidDesc& m, const Element& x, const std::string& path) {
  switch (class_of(m)) {
    case MonoidClass::Integers:
      if (!std::holds_alternative<BigInt>(x)) bad(path, "expected an integer");
      return;
    case MonoidClass::Naturals:
      if (!std::holds_alternative<BigInt>(x)) bad(path, "expected an integer");
      if (as_int(x) < 0) bad(path, "expected a nonnegative integer");
      return;
    case MonoidClass::IntVectors:
    case MonoidClass::NatVectors: {
      std::size_t dim = class_of(m) == MonoidClass::IntVectors ? std::get<IntVectors>(m).dim : std::get<NatVectors>(m).dim;
      const auto* v = std::get_if<IntVector>(&x);
      if (v == nullptr) bad(path, "expected a vector");
      if (v->size() != dim) bad(path, "vector has dimension " + std::to_string(v->size()) + ", expected " + std::to_string(dim));
      if (class_of(m) == MonoidClass::NatVectors)
        for (std::size_t i = 0; i < v->size(); ++i)
          if ((*v)[i] < 0) bad(path + "/" + std::to_string(i), "expected a nonnegative entry");
      return;
    }
    case MonoidClass::FiniteCyclic: {
      const auto* v = std::get_if<BigInt>(&x);
      if (v == nullptr) bad(path, "expected an integer");
      if (*v < 0 || *v >= std::get<FiniteCyclic>(m).n) bad(path, "residue out of range [0, n-1]");
      return;
    }
    case MonoidClass::FiniteAbelian: {
      const auto& mods = std::get<FiniteAbelian>(m).moduli;
      const auto* v = std::get_if<IntVector>(&x);
      if (v == nullptr) bad(path, "expected a vector");
      if (v->size() != mods.size()) bad(path, "expected " + std::to_string(mods.size()) + " residues");
      for (std::size_t i = 0; i < v->size(); ++i)
        if ((*v)[i] < 0 || (*v)[i] >= mods[i]) bad(path + "/" + std::to_string(i), "residue out of range");
      return;
    }
    case MonoidClass::Symmetric:
      expect_perm(x, std::get<SymmetricGroup>(m).n, path);
      return;
    case MonoidClass::Transformation: {
      std::size_t n = std::get<TransformationMonoid>(m).n;
      const auto* t = std::get_if<Transformation>(&x);
      if (t == nullptr) bad(path, "expected a transformation");
      if (t->degree() != n) bad(path, "transformation degree " + std::to_string(t->degree()) + " != " + std::to_string(n));
      return;
    }
    case MonoidClass::CyclicPerm: {
      const auto& g = std::get<CyclicPermGroup>(m);
      const Permutation& p = expect_perm(x, g.degree, path);
      if (!g.canonical) bad(path, "cyclic group not validated");
      if (!cyclic_dlog(p, *g.canonical)) bad(path, "element is not in the group");
      return;
    }
    case MonoidClass::AbelianPerm: {
      const auto& g = std::get<AbelianPermGroup>(m);
      const Permutation& p = expect_perm(x, g.degree, path);
      for (const auto& s : g.generators)
        if (compose(p, s) != compose(s, p)) bad(path, "element does not commute with the group generators");
      return;
    }
  }
}

std::string element_to_string(const Element& x) {
  return std::visit(overloaded{[](const BigInt& v) { return v.str(); },
                               [](const IntVector& v) {
                                 std::ostringstream os;
                                 os << '(';
                                 for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
                                 os << ')';
                                 return os.str();
                               },
                               [](const Permutation& p) { return to_cycle_string(p); },
                               [](const Transformation& t) {
                                 std::ostringstream os;
                                 os << '[';
                                 for (std::size_t i = 0; i < t.degree(); ++i) os << (i ? " " : "") << t.images()[i];
                                 os << ']';
                                 return os.str();
                               }},
                    x);
}

std::size_t ElementHash::operator()(const Element& x) const noexcept {
  return std::visit(overloaded{[](const BigInt& v) { return hash_bigint(v); },
                               [](const IntVector& v) {
                                 std::size_t h = 0x9e3779b97f4a7c15ULL;
                                 for (const auto& e : v) h = (h ^ hash_bigint(e)) * 0x100000001b3ULL;
                                 return h;
                               },
                               [](const Permutation& p) { return hash_points(p.images()); },
                               [](const Transformation& t) { return hash_points(t.images()) ^ 0x5bd1e995U; }},
                    x);
}

}  // namespace facto
