#pragma once

// Brute-force reference implementations used by the tests. They share no code
// with the library solvers: products are recomputed from raw images and
// integers, and every search is exhaustive.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

#include "facto/instance.hpp"

namespace oracle {

using facto::BigInt;
using facto::Element;
using facto::MonoidDesc;

inline BigInt mod(const BigInt& a, const BigInt& n) {
  BigInt r = a % n;
  return r < 0 ? r + n : r;
}

inline std::vector<std::uint32_t> images(const Element& x) {
  if (const auto* p = std::get_if<facto::Permutation>(&x)) return {p->images().begin(), p->images().end()};
  const auto& t = std::get<facto::Transformation>(x);
  return {t.images().begin(), t.images().end()};
}

// (fg)(a) = g(f(a))
inline std::vector<std::uint32_t> then(const std::vector<std::uint32_t>& f, const std::vector<std::uint32_t>& g) {
  std::vector<std::uint32_t> r(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) r[a] = g[f[a] - 1];
  return r;
}

inline Element one(const MonoidDesc& M) {
  return std::visit(
      [](const auto& m) -> Element {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, facto::Integers> || std::is_same_v<T, facto::Naturals> ||
                      std::is_same_v<T, facto::FiniteCyclic>) {
          return BigInt(0);
        } else if constexpr (std::is_same_v<T, facto::IntVectors> || std::is_same_v<T, facto::NatVectors>) {
          return facto::IntVector(m.dim, BigInt(0));
        } else if constexpr (std::is_same_v<T, facto::FiniteAbelian>) {
          return facto::IntVector(m.moduli.size(), BigInt(0));
        } else if constexpr (std::is_same_v<T, facto::TransformationMonoid>) {
          return facto::Transformation::identity(m.n);
        } else if constexpr (std::is_same_v<T, facto::SymmetricGroup>) {
          return facto::Permutation::identity(m.n);
        } else {
          return facto::Permutation::identity(m.degree);
        }
      },
      M);
}

inline Element mul(const MonoidDesc& M, const Element& a, const Element& b) {
  if (std::holds_alternative<facto::TransformationMonoid>(M))
    return facto::Transformation(then(images(a), images(b)));
  if (std::holds_alternative<facto::Permutation>(a)) return facto::Permutation(then(images(a), images(b)));
  if (const auto* x = std::get_if<BigInt>(&a)) {
    BigInt s = *x + std::get<BigInt>(b);
    if (const auto* f = std::get_if<facto::FiniteCyclic>(&M)) s = mod(s, f->n);
    return s;
  }
  const auto& u = std::get<facto::IntVector>(a);
  const auto& v = std::get<facto::IntVector>(b);
  facto::IntVector w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    w[i] = u[i] + v[i];
    if (const auto* f = std::get_if<facto::FiniteAbelian>(&M)) w[i] = mod(w[i], f->moduli[i]);
  }
  return w;
}

inline Element product(const MonoidDesc& M, const std::vector<Element>& gens, const std::vector<std::size_t>& seq) {
  Element acc = one(M);
  for (auto i : seq) acc = mul(M, acc, gens[i]);
  return acc;
}

/// F: sequences of length exactly k (or any length <= k).
inline bool factorization(const facto::Instance& inst) {
  const auto& g = inst.generators;
  std::vector<std::size_t> seq;
  std::function<bool(const Element&)> rec = [&](const Element& acc) {
    if ((!inst.exact || seq.size() == inst.k) && acc == inst.target) return true;
    if (seq.size() == inst.k) return false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      seq.push_back(i);
      bool ok = rec(mul(inst.monoid, acc, g[i]));
      seq.pop_back();
      if (ok) return true;
    }
    return false;
  };
  return rec(one(inst.monoid));
}

/// KS: every exponent vector with sum k (or <= k), product in generator order.
inline bool knapsack(const facto::Instance& inst) {
  const auto& g = inst.generators;
  const std::size_t m = g.size();
  if (m == 0) return (!inst.exact || inst.k == 0) && inst.target == one(inst.monoid);
  std::vector<std::uint64_t> x(m, 0);
  std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t used) {
    if (i == m) {
      if (inst.exact && used != inst.k) return false;
      Element acc = one(inst.monoid);
      for (std::size_t j = 0; j < m; ++j)
        for (std::uint64_t r = 0; r < x[j]; ++r) acc = mul(inst.monoid, acc, g[j]);
      return acc == inst.target;
    }
    for (std::uint64_t e = 0; used + e <= inst.k; ++e) {
      x[i] = e;
      if (rec(i + 1, used + e)) return true;
    }
    x[i] = 0;
    return false;
  };
  return rec(0, 0);
}

/// SSS: every subset of size k (or <= k), product over ascending indices.
inline bool subset_sum(const facto::Instance& inst) {
  const auto& g = inst.generators;
  const std::size_t m = g.size();
  if (m > 24) throw std::runtime_error("oracle::subset_sum: list too long");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    auto c = static_cast<std::uint64_t>(__builtin_popcountll(mask));
    if (inst.exact ? c != inst.k : c > inst.k) continue;
    Element acc = one(inst.monoid);
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) acc = mul(inst.monoid, acc, g[i]);
    if (acc == inst.target) return true;
  }
  return false;
}

/// Change-making by enumerating every admissible multiplicity vector.
inline bool change(const facto::ChangeInstance& in) {
  const std::size_t m = in.coins.size();
  std::vector<BigInt> cap(m);
  for (std::size_t i = 0; i < m; ++i) {
    BigInt c = in.coins[i];
    BigInt hi;
    if (!in.approx || in.b >= 1) {
      hi = BigInt(in.approx ? in.k / static_cast<std::uint64_t>(in.b) : in.k);
    } else {
      // b = 0: the count is free, but x_i c_i never needs to exceed c + k.
      hi = c == 0 ? BigInt(0) : (in.c + BigInt(in.k)) / c + 1;
    }
    if (in.flavor == facto::ChangeFlavor::Bounded) hi = std::min(hi, in.bounds[i]);
    if (in.flavor == facto::ChangeFlavor::ZeroOne) hi = std::min(hi, BigInt(1));
    cap[i] = hi;
  }
  std::vector<BigInt> x(m, 0);
  std::function<bool(std::size_t, const BigInt&, const BigInt&)> rec = [&](std::size_t i, const BigInt& value,
                                                                            const BigInt& count) {
    if (i == m) {
      if (!in.approx) return value == in.c && count <= BigInt(in.k);
      return value >= in.c && in.a * (value - in.c) + in.b * count <= BigInt(in.k);
    }
    for (BigInt e = 0; e <= cap[i]; ++e)
      if (rec(i + 1, value + e * in.coins[i], count + e)) return true;
    return false;
  };
  return rec(0, 0, 0);
}

inline bool decide(const facto::AnyInstance& any) {
  if (const auto* c = std::get_if<facto::ChangeInstance>(&any)) return change(*c);
  const auto& inst = std::get<facto::Instance>(any);
  switch (inst.kind) {
    case facto::ProblemKind::F: return factorization(inst);
    case facto::ProblemKind::KS: return knapsack(inst);
    case facto::ProblemKind::SSS: return subset_sum(inst);
  }
  return false;
}

/// The subgroup of S_n generated by the given images, by closure.
inline std::set<std::vector<std::uint32_t>> generated(const std::vector<std::vector<std::uint32_t>>& gens,
                                                      std::size_t n) {
  std::vector<std::uint32_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<std::uint32_t>(i + 1);
  std::set<std::vector<std::uint32_t>> seen{id};
  std::vector<std::vector<std::uint32_t>> todo{id};
  while (!todo.empty()) {
    auto x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      auto y = then(x, g);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

inline std::size_t element_order(const std::vector<std::uint32_t>& f) {
  auto x = f;
  std::size_t k = 1;
  while (true) {
    bool id = true;
    for (std::size_t i = 0; i < x.size(); ++i) id = id && x[i] == i + 1;
    if (id) return k;
    x = then(x, f);
    ++k;
  }
}

/// True iff the finite group is cyclic: some element has order |G|.
inline bool is_cyclic(const std::set<std::vector<std::uint32_t>>& group) {
  for (const auto& g : group)
    if (element_order(g) == group.size()) return true;
  return false;
}

inline std::uint64_t bits(std::uint64_t x) {
  std::uint64_t b = 0;
  while (x) {
    ++b;
    x >>= 1;
  }
  return b;
}

}  // namespace oracle
