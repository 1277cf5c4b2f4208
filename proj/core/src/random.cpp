#include "facto/random.hpp"

#include <algorithm>
#include <numeric>

#include "facto/errors.hpp"

namespace facto {

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
}

std::int64_t Rng::uniform_signed(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

BigInt Rng::uniform_big(const BigInt& lo, const BigInt& hi) {
  BigInt span = hi - lo + 1;
  if (span <= 0) throw std::invalid_argument("empty range");
  if (span <= BigInt(std::numeric_limits<std::uint64_t>::max())) return lo + uniform(0, to_u64(span - 1));
  BigInt r = 0;
  for (std::size_t bits = 0; bits < boost::multiprecision::msb(span) + 65; bits += 64) r = (r << 64) | BigInt(next());
  return lo + r % span;
}

bool Rng::chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p; }

Permutation Rng::permutation(std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{1});
  shuffle(img);
  return Permutation(std::move(img));
}

Transformation Rng::transformation(std::size_t degree) {
  std::vector<Point> img(degree);
  for (auto& p : img) p = static_cast<Point>(uniform(1, degree));
  return Transformation(std::move(img));
}

namespace {

std::size_t draw_dim(Rng& rng, const RandomCaps& caps) { return rng.uniform(1, std::max<std::size_t>(caps.max_n, 1)); }

BigInt draw_modulus(Rng& rng, const RandomCaps& caps) { return rng.uniform_big(2, std::max(caps.max_modulus, BigInt(2))); }

Permutation power_of(const Permutation& p, Rng& rng) { return power(p, BigInt(rng.uniform(0, to_u64(order(p)) - 1))); }

}  // namespace

MonoidDesc random_monoid(Rng& rng, MonoidClass cls, const RandomCaps& caps) {
  switch (cls) {
    case MonoidClass::Integers: return Integers{};
    case MonoidClass::Naturals: return Naturals{};
    case MonoidClass::IntVectors: return IntVectors{draw_dim(rng, caps)};
    case MonoidClass::NatVectors: return NatVectors{draw_dim(rng, caps)};
    case MonoidClass::FiniteCyclic: return FiniteCyclic{draw_modulus(rng, caps)};
    case MonoidClass::FiniteAbelian: {
      FiniteAbelian g;
      std::size_t d = rng.uniform(1, 3);
      for (std::size_t i = 0; i < d; ++i) g.moduli.push_back(draw_modulus(rng, caps));
      return g;
    }
    case MonoidClass::Symmetric: return SymmetricGroup{draw_dim(rng, caps)};
    case MonoidClass::Transformation: return TransformationMonoid{draw_dim(rng, caps)};
    case MonoidClass::CyclicPerm: {
      // Powers of one random permutation always generate a cyclic group.
      std::size_t n = draw_dim(rng, caps);
      Permutation sigma = rng.permutation(n);
      CyclicPermGroup g{n, {}, std::nullopt};
      std::size_t count = rng.uniform(1, 3);
      for (std::size_t i = 0; i < count; ++i) g.generators.push_back(power_of(sigma, rng));
      MonoidDesc m = std::move(g);
      prepare_monoid(m);
      return m;
    }
    case MonoidClass::AbelianPerm: {
      // Two blocks with independent random permutations commute.
      std::size_t n = draw_dim(rng, caps);
      std::size_t split = rng.uniform(0, n);
      Permutation left = split > 0 ? rng.permutation(split) : Permutation::identity(1);
      Permutation right = n - split > 0 ? rng.permutation(n - split) : Permutation::identity(1);
      std::vector<Permutation> parts;
      if (split > 0) parts.push_back(left);
      if (n - split > 0) parts.push_back(right);
      auto embed = [&](bool use_left, bool use_right) {
        std::vector<Permutation> f;
        if (split > 0) f.push_back(use_left ? power_of(left, rng) : Permutation::identity(split));
        if (n - split > 0) f.push_back(use_right ? power_of(right, rng) : Permutation::identity(n - split));
        return direct_sum(f);
      };
      AbelianPermGroup g{n, {}};
      std::size_t count = rng.uniform(1, 3);
      for (std::size_t i = 0; i < count; ++i) g.generators.push_back(embed(rng.chance(0.7), rng.chance(0.7)));
      return g;
    }
  }
  throw std::logic_error("unknown monoid class");
}

Element random_element(Rng& rng, const MonoidDesc& m, const RandomCaps& caps) {
  const BigInt& v = caps.max_value;
  switch (class_of(m)) {
    case MonoidClass::Integers: return rng.uniform_big(-v, v);
    case MonoidClass::Naturals: return rng.uniform_big(0, v);
    case MonoidClass::IntVectors: {
      IntVector x(std::get<IntVectors>(m).dim);
      for (auto& e : x) e = rng.uniform_big(-v, v);
      return x;
    }
    case MonoidClass::NatVectors: {
      IntVector x(std::get<NatVectors>(m).dim);
      for (auto& e : x) e = rng.uniform_big(0, v);
      return x;
    }
    case MonoidClass::FiniteCyclic: return rng.uniform_big(0, std::get<FiniteCyclic>(m).n - 1);
    case MonoidClass::FiniteAbelian: {
      const auto& mods = std::get<FiniteAbelian>(m).moduli;
      IntVector x(mods.size());
      for (std::size_t i = 0; i < mods.size(); ++i) x[i] = rng.uniform_big(0, mods[i] - 1);
      return x;
    }
    case MonoidClass::Symmetric: return rng.permutation(std::get<SymmetricGroup>(m).n);
    case MonoidClass::Transformation: return rng.transformation(std::get<TransformationMonoid>(m).n);
    case MonoidClass::CyclicPerm: {
      const auto& g = std::get<CyclicPermGroup>(m);
      if (!g.canonical) throw std::logic_error("cyclic group not prepared");
      return power_of(*g.canonical, rng);
    }
    case MonoidClass::AbelianPerm: {
      const auto& g = std::get<AbelianPermGroup>(m);
      Permutation x = Permutation::identity(g.degree);
      for (const auto& s : g.generators) x = compose(x, power_of(s, rng));
      return x;
    }
  }
  throw std::logic_error("unknown monoid class");
}

Instance random_instance(std::uint64_t seed, const RandomRequest& req, const RandomCaps& caps) {
  Rng rng(seed);
  return random_instance(rng, req, caps);
}

Instance random_instance(Rng& rng, const RandomRequest& req, const RandomCaps& caps) {
  Instance inst;
  inst.monoid = random_monoid(rng, req.monoid, caps);
  inst.kind = req.kind;
  inst.exact = req.exact;
  inst.distinct = req.distinct && req.kind == ProblemKind::SSS;
  inst.k = req.k ? *req.k : rng.uniform(0, caps.max_k);
  std::size_t m = req.m ? *req.m : (rng.chance(0.05) ? 0 : rng.uniform(1, std::max<std::size_t>(caps.max_m, 1)));

  for (std::size_t i = 0; i < m; ++i) {
    Element x = random_element(rng, inst.monoid, caps);
    if (inst.distinct) {
      // Tiny monoids may not have m distinct elements; give up on the slot then.
      bool fresh = false;
      for (int attempt = 0; attempt < 64 && !fresh; ++attempt) {
        fresh = std::find(inst.generators.begin(), inst.generators.end(), x) == inst.generators.end();
        if (!fresh) x = random_element(rng, inst.monoid, caps);
      }
      if (!fresh) continue;
    }
    inst.generators.push_back(std::move(x));
  }
  m = inst.generators.size();

  std::uint64_t used = inst.exact ? inst.k : rng.uniform(0, inst.k);
  bool plant = rng.chance(req.bias) && (used == 0 || m > 0) && (inst.kind != ProblemKind::SSS || used <= m);
  if (!plant) {
    inst.target = random_element(rng, inst.monoid, caps);
    return validate(std::move(inst));
  }
  Element t = identity(inst.monoid);
  switch (inst.kind) {
    case ProblemKind::F:
      for (std::uint64_t j = 0; j < used; ++j) t = multiply(inst.monoid, t, inst.generators[rng.uniform(0, m - 1)]);
      break;
    case ProblemKind::KS: {
      std::vector<std::uint64_t> x(m, 0);
      for (std::uint64_t j = 0; j < used; ++j) ++x[rng.uniform(0, m - 1)];
      for (std::size_t i = 0; i < m; ++i) t = multiply(inst.monoid, t, power(inst.monoid, inst.generators[i], x[i]));
      break;
    }
    case ProblemKind::SSS: {
      std::vector<std::size_t> idx(m);
      std::iota(idx.begin(), idx.end(), 0);
      rng.shuffle(idx);
      idx.resize(used);
      std::sort(idx.begin(), idx.end());
      for (std::size_t i : idx) t = multiply(inst.monoid, t, inst.generators[i]);
      break;
    }
  }
  inst.target = std::move(t);
  return validate(std::move(inst));
}

ChangeInstance random_change_instance(std::uint64_t seed, const ChangeRequest& req, const RandomCaps& caps) {
  Rng rng(seed);
  return random_change_instance(rng, req, caps);
}

ChangeInstance random_change_instance(Rng& rng, const ChangeRequest& req, const RandomCaps& caps) {
  ChangeInstance inst;
  inst.flavor = req.flavor;
  inst.approx = req.approx;
  inst.k = req.k ? *req.k : rng.uniform(0, caps.max_k);
  if (req.approx) {
    inst.a = req.a ? *req.a : BigInt(rng.uniform(0, req.max_objective));
    inst.b = req.b ? *req.b : BigInt(rng.uniform(0, req.max_objective));
  }
  std::size_t m = rng.chance(0.05) ? 0 : rng.uniform(1, std::max<std::size_t>(caps.max_m, 1));
  for (std::size_t i = 0; i < m; ++i) {
    BigInt c = rng.uniform_big(rng.chance(0.1) ? 0 : 1, std::max(caps.max_value, BigInt(1)));
    if (std::find(inst.coins.begin(), inst.coins.end(), c) == inst.coins.end()) inst.coins.push_back(c);
  }
  if (inst.flavor == ChangeFlavor::Bounded)
    for (std::size_t i = 0; i < inst.coins.size(); ++i) inst.bounds.push_back(rng.uniform(0, caps.max_k + 1));

  if (rng.chance(req.bias) && !inst.coins.empty()) {
    // Plant a multiset of coins within the bounds and the count budget.
    BigInt sum = 0;
    std::uint64_t count = rng.uniform(0, std::max<std::uint64_t>(inst.k, 1));
    std::vector<BigInt> used(inst.coins.size(), 0);
    for (std::uint64_t j = 0; j < count; ++j) {
      std::size_t i = rng.uniform(0, inst.coins.size() - 1);
      auto cap = coin_bound(inst, i);
      if (cap && used[i] >= *cap) continue;
      ++used[i];
      sum += inst.coins[i];
    }
    if (inst.approx) sum -= rng.uniform(0, 2);
    inst.c = sum < 0 ? BigInt(0) : sum;
  } else {
    BigInt hi = caps.max_value * std::max<std::uint64_t>(inst.k, 1);
    inst.c = rng.uniform_big(0, hi);
  }
  return validate(std::move(inst));
}

}  // namespace facto
