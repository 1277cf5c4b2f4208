#include "facto/reductions.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "facto/errors.hpp"
#include "facto/group.hpp"
#include "facto/numtheory.hpp"
#include "reductions_internal.hpp"

namespace facto {

namespace detail {

[[noreturn]] void out_of_domain(std::string_view rule, const std::string& what) {
  throw DomainError(std::string(rule) + ": " + what);
}

ReductionOutput finish(std::string_view rule, AnyInstance out, std::uint64_t h, std::vector<std::string> notes,
                       std::vector<std::size_t> source_index) {
  ReductionOutput r;
  r.out = validate(std::move(out));
  r.h_of_k = h;
  r.rule = std::string(rule);
  r.notes = std::move(notes);
  r.source_index = std::move(source_index);
  return r;
}

std::string join(const std::vector<BigInt>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += xs[i].str();
  }
  return s + "]";
}

namespace {

Permutation transposition2() { return Permutation({2, 1}); }

}  // namespace

// Fixed negative instance of the same problem shape, over a small monoid of the requested class.
Instance negative_constant(const Instance& shape, MonoidClass cls) {
  Instance out;
  out.kind = shape.kind;
  out.exact = shape.exact;
  out.distinct = shape.distinct;
  out.k = shape.k;
  switch (cls) {
    case MonoidClass::Integers: out.monoid = Integers{}; out.target = BigInt(1); break;
    case MonoidClass::Naturals: out.monoid = Naturals{}; out.target = BigInt(1); break;
    case MonoidClass::IntVectors: {
      std::size_t d = std::get<IntVectors>(shape.monoid).dim;
      IntVector t(d, 0);
      t[0] = 1;
      out.monoid = IntVectors{d};
      out.target = t;
      break;
    }
    case MonoidClass::NatVectors: {
      std::size_t d = class_of(shape.monoid) == MonoidClass::NatVectors ? std::get<NatVectors>(shape.monoid).dim
                      : class_of(shape.monoid) == MonoidClass::IntVectors ? std::get<IntVectors>(shape.monoid).dim
                                                                           : 1;
      IntVector t(d, 0);
      t[0] = 1;
      out.monoid = NatVectors{d};
      out.target = t;
      break;
    }
    case MonoidClass::FiniteCyclic: out.monoid = FiniteCyclic{2}; out.target = BigInt(1); break;
    case MonoidClass::FiniteAbelian: out.monoid = FiniteAbelian{{2}}; out.target = IntVector{1}; break;
    case MonoidClass::Symmetric: out.monoid = SymmetricGroup{2}; out.target = transposition2(); break;
    case MonoidClass::Transformation:
      out.monoid = TransformationMonoid{2};
      out.target = Transformation(transposition2());
      break;
    case MonoidClass::CyclicPerm:
      out.monoid = CyclicPermGroup{2, {transposition2()}, std::nullopt};
      out.target = transposition2();
      break;
    case MonoidClass::AbelianPerm:
      out.monoid = AbelianPermGroup{2, {transposition2()}};
      out.target = transposition2();
      break;
  }
  return out;
}

}  // namespace detail

using detail::finish;
using detail::join;
using detail::out_of_domain;

namespace {

std::vector<std::size_t> iota_index(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

std::size_t dim_of(const MonoidDesc& m) {
  if (auto* v = std::get_if<IntVectors>(&m)) return v->dim;
  if (auto* v = std::get_if<NatVectors>(&m)) return v->dim;
  return 0;
}

Permutation perm_of(const Element& x) { return std::get<Permutation>(x); }

// Permutations of the group placed on [1,n], then the given cycles on the following points.
struct CycleLayout {
  std::size_t base = 0;
  std::size_t degree = 0;
  std::vector<std::pair<Point, Point>> intervals;  // one per cycle

  CycleLayout(std::size_t n, const std::vector<BigInt>& lengths) : base(n), degree(n) {
    for (const auto& p : lengths) {
      auto len = static_cast<std::size_t>(to_u64(p));
      intervals.emplace_back(static_cast<Point>(degree + 1), static_cast<Point>(degree + len));
      degree += len;
    }
  }

  Permutation cycle(std::size_t i) const {
    return Permutation::interval_cycle(degree, intervals[i].first, intervals[i].second);
  }

  // pi on [1,n] times cycle_i^{e_i}.
  Permutation element(const Permutation& pi, const std::vector<BigInt>& exps) const {
    Permutation r = pi.extended(degree);
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] != 0) r = compose(r, power(cycle(i), exps[i]));
    return r;
  }
};

Instance lift_scalar(const Instance& in) {
  Instance out = in;
  bool nat = class_of(in.monoid) == MonoidClass::Naturals;
  if (nat)
    out.monoid = NatVectors{1};
  else
    out.monoid = IntVectors{1};
  out.target = IntVector{std::get<BigInt>(in.target)};
  for (auto& g : out.generators) g = IntVector{std::get<BigInt>(g)};
  return out;
}

// A Naturals instance produced by packing is also a valid Integers instance.
Instance as_integers(Instance inst) {
  if (class_of(inst.monoid) == MonoidClass::Naturals) inst.monoid = Integers{};
  return inst;
}

ReductionOutput relabelled(ReductionOutput r, std::string_view rule, std::uint64_t h) {
  r.out = validate(AnyInstance(as_integers(r.instance())));
  r.rule = std::string(rule);
  r.h_of_k = h;
  return r;
}

void require_kind(std::string_view rule, const Instance& in, std::initializer_list<ProblemKind> kinds) {
  for (auto k : kinds)
    if (in.kind == k) return;
  out_of_domain(rule, std::string("problem kind ") + std::string(kind_tag(in.kind)) + " not accepted");
}

void require_exact(std::string_view rule, const Instance& in) {
  if (!in.exact) out_of_domain(rule, "requires the exact-k variant");
}

[[noreturn]] void unsupported_monoid(std::string_view rule, const Instance& in) {
  out_of_domain(rule, "monoid " + std::string(class_tag(class_of(in.monoid))) + " not supported");
}

}  // namespace

// ---------------------------------------------------------------- shape

ReductionOutput expand_f_to_ks(const Instance& in) {
  constexpr std::string_view rule = "expand-f-ks";
  require_kind(rule, in, {ProblemKind::F});
  Instance out = in;
  out.kind = ProblemKind::KS;
  out.generators.clear();
  std::vector<std::size_t> src;
  for (std::uint64_t r = 0; r < in.k; ++r)
    for (std::size_t i = 0; i < in.generators.size(); ++i) {
      out.generators.push_back(in.generators[i]);
      src.push_back(i);
    }
  return finish(rule, out, in.k, {"copies=" + std::to_string(in.k)}, std::move(src));
}

ReductionOutput expand_ks_to_sss(const Instance& in) {
  constexpr std::string_view rule = "expand-ks-sss";
  require_kind(rule, in, {ProblemKind::KS});
  Instance out = in;
  out.kind = ProblemKind::SSS;
  out.distinct = false;
  out.generators.clear();
  std::vector<std::size_t> src;
  for (std::size_t i = 0; i < in.generators.size(); ++i)
    for (std::uint64_t r = 0; r < in.k; ++r) {
      out.generators.push_back(in.generators[i]);
      src.push_back(i);
    }
  return finish(rule, out, in.k, {"copies=" + std::to_string(in.k)}, std::move(src));
}

ReductionOutput exact_from_atmost(const Instance& in) {
  constexpr std::string_view rule = "exact-from-le";
  if (in.exact) out_of_domain(rule, "input is already the exact variant");
  if (in.distinct) out_of_domain(rule, "identity copies would collide in a distinct list; use the cor15 chain");
  Instance out = in;
  out.exact = true;
  std::uint64_t copies = in.kind == ProblemKind::SSS ? in.k : 1;
  auto src = iota_index(in.generators.size());
  for (std::uint64_t r = 0; r < copies; ++r) {
    out.generators.push_back(identity(in.monoid));
    src.push_back(ReductionOutput::kGadget);
  }
  return finish(rule, out, in.k, {"identities=" + std::to_string(copies)}, std::move(src));
}

// ---------------------------------------------------------------- integer encodings

ReductionOutput shift_z_to_n(const Instance& in) {
  constexpr std::string_view rule = "shift-zn";
  require_exact(rule, in);
  auto cls = class_of(in.monoid);
  if (cls != MonoidClass::Integers && cls != MonoidClass::IntVectors) unsupported_monoid(rule, in);

  const bool scalar = cls == MonoidClass::Integers;
  const std::size_t d = scalar ? 1 : dim_of(in.monoid);
  auto coords = [&](const Element& x) { return scalar ? IntVector{std::get<BigInt>(x)} : std::get<IntVector>(x); };

  IntVector b(d, 0);
  for (const auto& g : in.generators) {
    auto v = coords(g);
    for (std::size_t j = 0; j < d; ++j) b[j] = std::max(b[j], BigInt(-v[j]));
  }
  IntVector t = coords(in.target);
  for (std::size_t j = 0; j < d; ++j) t[j] += BigInt(in.k) * b[j];
  std::vector<std::string> notes{"b=" + join(b)};

  auto pack = [&](IntVector v) -> Element {
    if (scalar) return v[0];
    return v;
  };
  Instance out = in;
  out.monoid = scalar ? MonoidDesc(Naturals{}) : MonoidDesc(NatVectors{d});
  if (std::any_of(t.begin(), t.end(), [](const BigInt& x) { return x < 0; })) {
    notes.push_back("shifted target negative: fixed negative instance");
    Instance neg = detail::negative_constant(out, scalar ? MonoidClass::Naturals : MonoidClass::NatVectors);
    return finish(rule, neg, in.k, notes, {});
  }
  out.target = pack(t);
  for (auto& g : out.generators) {
    auto v = coords(g);
    for (std::size_t j = 0; j < d; ++j) v[j] += b[j];
    g = pack(v);
  }
  return finish(rule, out, in.k, notes, iota_index(in.generators.size()));
}

ReductionOutput pack_vectors(const Instance& in) {
  constexpr std::string_view rule = "pack-vec";
  auto cls = class_of(in.monoid);
  if (cls != MonoidClass::NatVectors && cls != MonoidClass::IntVectors) unsupported_monoid(rule, in);
  const std::size_t d = dim_of(in.monoid);
  BigInt e = 0;
  auto check = [&](const Element& x) {
    for (const auto& c : std::get<IntVector>(x))
      if (c < 0) out_of_domain(rule, "negative entries");
  };
  check(in.target);
  for (const auto& g : in.generators) {
    check(g);
    for (const auto& c : std::get<IntVector>(g)) e = std::max(e, c);
  }
  const BigInt ke = BigInt(in.k) * e;
  // k = 0 still needs room for e so that distinct lists stay distinct.
  const BigInt span = std::max(ke, e);
  const std::size_t w = nt::bit_length(span > 0 ? span : BigInt(1));
  std::vector<std::string> notes{"e=" + e.str(), "width=" + std::to_string(w)};

  Instance out = in;
  out.monoid = Naturals{};
  const auto& t = std::get<IntVector>(in.target);
  if (std::any_of(t.begin(), t.end(), [&](const BigInt& x) { return x > ke; })) {
    notes.push_back("target entry exceeds k*e: fixed negative instance");
    return finish(rule, detail::negative_constant(out, MonoidClass::Naturals), in.k, notes, {});
  }
  auto code = [&](const Element& x) {
    BigInt r = 0;
    const auto& v = std::get<IntVector>(x);
    for (std::size_t j = d; j-- > 0;) r = (r << w) + v[j];
    return r;
  };
  out.target = code(in.target);
  for (auto& g : out.generators) g = code(g);
  return finish(rule, out, in.k, notes, iota_index(in.generators.size()));
}

// ---------------------------------------------------------------- exact -> at most

namespace {

Instance append_counter(const Instance& in) {
  // Vectors over Z or N: one extra coordinate counting the factors used.
  Instance out = in;
  std::size_t d = dim_of(in.monoid);
  if (class_of(in.monoid) == MonoidClass::IntVectors)
    out.monoid = IntVectors{d + 1};
  else
    out.monoid = NatVectors{d + 1};
  auto t = std::get<IntVector>(in.target);
  t.push_back(BigInt(in.k));
  out.target = t;
  for (auto& g : out.generators) std::get<IntVector>(g).push_back(1);
  out.exact = false;
  return out;
}

}  // namespace

ReductionOutput atmost_from_exact(const Instance& in) {
  constexpr std::string_view rule = "le-from-exact";
  require_exact(rule, in);
  const std::uint64_t k = in.k;
  if (k == 0) {
    Instance out = in;
    out.exact = false;
    return finish(rule, out, k, {"k=0: variants coincide"}, iota_index(in.generators.size()));
  }
  Instance out = in;
  out.exact = false;
  std::vector<std::string> notes;
  auto src = iota_index(in.generators.size());

  switch (class_of(in.monoid)) {
    case MonoidClass::Symmetric:
    case MonoidClass::Transformation:
    case MonoidClass::AbelianPerm:
    case MonoidClass::CyclicPerm: {
      const std::size_t n = degree_of(in.monoid);
      std::size_t len = k + 1;
      if (class_of(in.monoid) == MonoidClass::CyclicPerm) {
        BigInt lo = BigInt(std::max<std::uint64_t>(n, k)) + 1;
        len = static_cast<std::size_t>(to_u64(nt::gen_primes(1, lo).front().value));
      }
      const std::size_t deg = n + len;
      Permutation tau = Permutation::interval_cycle(deg, static_cast<Point>(n + 1), static_cast<Point>(deg));
      notes.push_back("tau=" + to_cycle_string(tau));
      Permutation tau_k = power(tau, BigInt(k));
      auto ext_t = [&](const Transformation& f) {
        std::vector<Point> v(f.images().begin(), f.images().end());
        for (std::size_t a = n + 1; a <= deg; ++a) v.push_back(static_cast<Point>(a));
        return Transformation(std::move(v));
      };
      if (class_of(in.monoid) == MonoidClass::Transformation) {
        Transformation t(tau);
        for (auto& g : out.generators) g = compose(ext_t(std::get<Transformation>(g)), t);
        out.target = compose(ext_t(std::get<Transformation>(in.target)), Transformation(tau_k));
        out.monoid = TransformationMonoid{deg};
      } else {
        for (auto& g : out.generators) g = compose(perm_of(g).extended(deg), tau);
        out.target = compose(perm_of(in.target).extended(deg), tau_k);
        if (auto* c = std::get_if<CyclicPermGroup>(&in.monoid)) {
          CyclicPermGroup m{deg, {}, std::nullopt};
          for (const auto& g : c->generators) m.generators.push_back(g.extended(deg));
          m.generators.push_back(tau);
          out.monoid = m;
        } else if (auto* a = std::get_if<AbelianPermGroup>(&in.monoid)) {
          AbelianPermGroup m{deg, {}};
          for (const auto& g : a->generators) m.generators.push_back(g.extended(deg));
          m.generators.push_back(tau);
          out.monoid = m;
        } else {
          out.monoid = SymmetricGroup{deg};
        }
      }
      return finish(rule, out, k, notes, src);
    }
    case MonoidClass::FiniteCyclic: {
      const BigInt n = std::get<FiniteCyclic>(in.monoid).n;
      nt::CrtBasis basis({n, n * k + 1});
      notes.push_back("moduli=" + join(basis.moduli()));
      auto h = [&](const Element& z, std::uint64_t c) {
        std::array<BigInt, 2> r{std::get<BigInt>(z), BigInt(c)};
        return nt::crt_combine(r, basis);
      };
      for (auto& g : out.generators) g = h(g, 1);
      out.target = h(in.target, k);
      out.monoid = FiniteCyclic{basis.product()};
      return finish(rule, out, k, notes, src);
    }
    case MonoidClass::FiniteAbelian: {
      auto m = std::get<FiniteAbelian>(in.monoid);
      m.moduli.push_back(BigInt(k) + 1);
      for (auto& g : out.generators) std::get<IntVector>(g).push_back(1);
      auto t = std::get<IntVector>(in.target);
      t.push_back(BigInt(k));
      out.target = t;
      out.monoid = m;
      return finish(rule, out, k, {"moduli=" + join(m.moduli)}, src);
    }
    case MonoidClass::IntVectors:
    case MonoidClass::NatVectors:
      return finish(rule, append_counter(in), k, {"counter coordinate appended"}, src);
    case MonoidClass::Integers: {
      auto s = shift_z_to_n(lift_scalar(in));
      auto c = finish(rule, append_counter(s.instance()), k, {}, {});
      auto p = pack_vectors(c.instance());
      auto r = compose_reductions(compose_reductions(s, c, std::string(rule)), p, std::string(rule));
      return relabelled(std::move(r), rule, k);
    }
    case MonoidClass::Naturals: {
      auto c = finish(rule, append_counter(lift_scalar(in)), k, {}, {});
      auto p = pack_vectors(c.instance());
      return compose_reductions(c, p, std::string(rule));
    }
  }
  unsupported_monoid(rule, in);
}

// ---------------------------------------------------------------- distinct elements

namespace {

// Coordinates of the distinctness gadget: 2m+1 unit bits, a counter, and the original element.
struct GadgetElem {
  std::vector<bool> ones;
  std::uint64_t count = 0;
  Element x;
};

std::vector<GadgetElem> distinct_gadget(const Instance& in, const Element& id) {
  const std::size_t m = in.generators.size();
  std::vector<GadgetElem> out;
  for (std::size_t i = 1; i <= m; ++i) {
    GadgetElem g{std::vector<bool>(2 * m + 1, false), 1, in.generators[i - 1]};
    g.ones[2 * i - 1] = true;  // position 2i, 1-based
    out.push_back(std::move(g));
  }
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = i; j <= m; ++j) {
      GadgetElem g{std::vector<bool>(2 * m + 1, false), 0, id};
      for (std::size_t p = 2 * i + 1; p <= 2 * j + 1; ++p) g.ones[p - 1] = true;
      out.push_back(std::move(g));
    }
  out.push_back(GadgetElem{std::vector<bool>(2 * m + 1, true), in.k, in.target});  // target, last
  return out;
}

}  // namespace

ReductionOutput distinctify(const Instance& in) {
  constexpr std::string_view rule = "distinctify";
  require_kind(rule, in, {ProblemKind::SSS});
  require_exact(rule, in);
  const std::uint64_t k = in.k;
  const std::uint64_t h = 2 * k + 1;
  const std::size_t m = in.generators.size();
  const auto cls = class_of(in.monoid);
  if (cls != MonoidClass::Symmetric && cls != MonoidClass::FiniteCyclic && cls != MonoidClass::CyclicPerm &&
      cls != MonoidClass::Integers && cls != MonoidClass::Naturals)
    unsupported_monoid(rule, in);

  auto gadget = distinct_gadget(in, identity(in.monoid));
  GadgetElem target = gadget.back();
  gadget.pop_back();
  std::vector<std::size_t> src;
  for (std::size_t i = 0; i < gadget.size(); ++i) src.push_back(i < m ? i : ReductionOutput::kGadget);

  Instance out = in;
  out.distinct = true;
  out.k = h;
  out.generators.clear();
  std::vector<std::string> notes{"fillers=" + std::to_string(gadget.size() - m)};

  if (cls == MonoidClass::Symmetric) {
    const std::size_t n = std::get<SymmetricGroup>(in.monoid).n;
    const Permutation t2 = Permutation({2, 1});
    const Permutation id2 = Permutation::identity(2);
    const Permutation counter = Permutation::interval_cycle(2 * k + 2, 1, static_cast<Point>(2 * k + 2));
    auto embed = [&](const GadgetElem& g) {
      std::vector<Permutation> parts;
      for (bool b : g.ones) parts.push_back(b ? t2 : id2);
      parts.push_back(power(counter, BigInt(g.count)));
      parts.push_back(perm_of(g.x));
      return direct_sum(parts);
    };
    for (const auto& g : gadget) out.generators.push_back(embed(g));
    out.target = embed(target);
    out.monoid = SymmetricGroup{4 * m + 2 * k + n + 4};
    notes.push_back("degree=" + std::to_string(4 * m + 2 * k + n + 4));
    return finish(rule, out, h, notes, src);
  }

  if (cls == MonoidClass::FiniteCyclic) {
    const BigInt n = std::get<FiniteCyclic>(in.monoid).n;
    auto primes = nt::prime_values(nt::gen_primes(2 * m + 2, BigInt(2 * k + 2), n));
    auto moduli = primes;
    moduli.push_back(n);
    nt::CrtBasis basis(moduli);
    auto embed = [&](const GadgetElem& g) {
      std::vector<BigInt> r;
      for (bool b : g.ones) r.push_back(b ? 1 : 0);
      r.push_back(BigInt(g.count));
      r.push_back(std::get<BigInt>(g.x));
      return nt::crt_combine(r, basis);
    };
    for (const auto& g : gadget) out.generators.push_back(embed(g));
    out.target = embed(target);
    out.monoid = FiniteCyclic{basis.product()};
    notes.push_back("primes=" + join(primes));
    notes.push_back("N=" + basis.product().str());
    return finish(rule, out, h, notes, src);
  }

  if (cls == MonoidClass::CyclicPerm) {
    const auto& g0 = std::get<CyclicPermGroup>(in.monoid);
    const std::size_t n = g0.degree;
    auto primes = nt::prime_values(
        nt::gen_primes(2 * m + 2, BigInt(std::max<std::uint64_t>(n + 1, 2 * k + 2))));
    CycleLayout layout(n, primes);
    auto embed = [&](const GadgetElem& g) {
      std::vector<BigInt> e;
      for (bool b : g.ones) e.push_back(b ? 1 : 0);
      e.push_back(BigInt(g.count));
      return layout.element(perm_of(g.x), e);
    };
    for (const auto& g : gadget) out.generators.push_back(embed(g));
    out.target = embed(target);
    CyclicPermGroup grp{layout.degree, {}, std::nullopt};
    for (const auto& p : g0.generators) grp.generators.push_back(p.extended(layout.degree));
    for (std::size_t i = 0; i < primes.size(); ++i) grp.generators.push_back(layout.cycle(i));
    out.monoid = grp;
    notes.push_back("primes=" + join(primes));
    return finish(rule, out, h, notes, src);
  }

  // Z and N: the gadget lives in Z^{2m+3}, then shift (Z only) and pack.
  const bool z = cls == MonoidClass::Integers;
  auto embed = [&](const GadgetElem& g) {
    IntVector v;
    for (bool b : g.ones) v.push_back(b ? 1 : 0);
    v.push_back(BigInt(g.count));
    v.push_back(std::get<BigInt>(g.x));
    return v;
  };
  for (const auto& g : gadget) out.generators.push_back(embed(g));
  out.target = embed(target);
  out.monoid = z ? MonoidDesc(IntVectors{2 * m + 3}) : MonoidDesc(NatVectors{2 * m + 3});
  auto vec = finish(rule, out, h, notes, src);
  if (!z) return compose_reductions(vec, pack_vectors(vec.instance()), std::string(rule));
  auto s = shift_z_to_n(vec.instance());
  auto r = compose_reductions(vec, s, std::string(rule));
  r = compose_reductions(r, pack_vectors(s.instance()), std::string(rule));
  return relabelled(std::move(r), rule, h);
}

// ---------------------------------------------------------------- SSS -> F over S_n

ReductionOutput sss_to_factorization_sym(const Instance& in, const SolveOptions& opts) {
  constexpr std::string_view rule = "sss-to-f-sym";
  require_kind(rule, in, {ProblemKind::SSS});
  require_exact(rule, in);
  if (class_of(in.monoid) != MonoidClass::Symmetric) unsupported_monoid(rule, in);
  const std::uint64_t k = in.k;
  const std::size_t m = in.generators.size();
  const std::size_t n = std::get<SymmetricGroup>(in.monoid).n;

  Instance out;
  out.kind = ProblemKind::F;
  out.exact = false;
  out.k = k + 1;

  if (k < 4) {
    SolveOptions o = opts;
    o.want_witness = false;
    const bool yes = solve(in, o).answer;
    out.monoid = SymmetricGroup{yes ? 1u : 2u};
    out.target = yes ? Permutation::identity(1) : Permutation({2, 1});
    return finish(rule, out, k + 1, {std::string("k<4 decided directly: ") + (yes ? "positive" : "negative")}, {});
  }

  const std::size_t n0 = n + k + 3;
  const std::size_t deg = n0 + (m + 1) * k;
  const Permutation beta = Permutation::interval_cycle(deg, static_cast<Point>(n + 1), static_cast<Point>(n0 - 1));
  std::vector<Permutation> gamma;  // gamma[l-1]
  for (std::size_t l = 1; l <= m + 1; ++l)
    gamma.push_back(Permutation::interval_cycle(deg, static_cast<Point>(n0 + (l - 1) * k),
                                                static_cast<Point>(n0 + l * k)));
  auto gamma_run = [&](std::size_t i, std::size_t j) {
    Permutation r = Permutation::identity(deg);
    for (std::size_t l = i; l <= j; ++l) r = compose(r, gamma[l - 1]);
    return r;
  };

  std::vector<std::size_t> src;
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t i = 1; i <= j; ++i) {
      out.generators.push_back(compose(compose(perm_of(in.generators[j - 1]).extended(deg), beta), gamma_run(i, j)));
      src.push_back(j - 1);
    }
  for (std::size_t i = 1; i <= m + 1; ++i) {
    out.generators.push_back(compose(beta, gamma_run(i, m + 1)));
    src.push_back(ReductionOutput::kGadget);
  }
  out.target = compose(compose(perm_of(in.target).extended(deg), power(beta, BigInt(k + 1))), gamma_run(1, m + 1));
  out.monoid = SymmetricGroup{deg};
  return finish(rule, out, k + 1, {"n0=" + std::to_string(n0), "degree=" + std::to_string(deg)}, std::move(src));
}

// ---------------------------------------------------------------- commutative cycle

ReductionOutput cycperm_to_fincyc(const Instance& in) {
  constexpr std::string_view rule = "cycperm-to-fincyc";
  if (class_of(in.monoid) != MonoidClass::CyclicPerm) unsupported_monoid(rule, in);
  MonoidDesc md = in.monoid;
  prepare_monoid(md);
  const auto& g = std::get<CyclicPermGroup>(md);
  CyclicIso iso(*g.canonical);
  BigInt ord = iso.modulus();
  auto log = [&](const Element& x) {
    auto e = iso.log(perm_of(x));
    if (!e) throw ValidationError("", "element outside the cyclic group");
    return *e;
  };
  Instance out = in;
  out.monoid = FiniteCyclic{ord < 2 ? BigInt(2) : ord};
  out.target = log(in.target);
  for (auto& x : out.generators) x = log(x);
  return finish(rule, out, in.k, {"sigma=" + to_cycle_string(iso.generator()), "order=" + ord.str()},
                iota_index(in.generators.size()));
}

ReductionOutput fincyc_to_intvectors(const Instance& in) {
  constexpr std::string_view rule = "fincyc-to-vec";
  require_kind(rule, in, {ProblemKind::SSS});
  require_exact(rule, in);
  if (class_of(in.monoid) != MonoidClass::FiniteCyclic) unsupported_monoid(rule, in);
  const BigInt n = std::get<FiniteCyclic>(in.monoid).n;
  Instance out;
  out.monoid = IntVectors{2};
  out.kind = ProblemKind::SSS;
  out.exact = true;
  out.distinct = false;
  out.k = 2 * in.k;
  std::vector<std::size_t> src;
  for (std::size_t i = 0; i < in.generators.size(); ++i) {
    out.generators.push_back(IntVector{1, std::get<BigInt>(in.generators[i])});
    src.push_back(i);
  }
  for (std::uint64_t r = 0; r < in.k; ++r) {
    out.generators.push_back(IntVector{0, BigInt(-n)});
    src.push_back(ReductionOutput::kGadget);
  }
  for (std::uint64_t r = 0; r < in.k; ++r) {
    out.generators.push_back(IntVector{0, 0});
    src.push_back(ReductionOutput::kGadget);
  }
  out.target = IntVector{BigInt(in.k), std::get<BigInt>(in.target)};
  return finish(rule, out, 2 * in.k, {"zero vectors=" + std::to_string(in.k)}, std::move(src));
}

ReductionOutput naturals_to_cycperm(const Instance& in) {
  constexpr std::string_view rule = "nat-to-cycperm";
  require_kind(rule, in, {ProblemKind::SSS});
  require_exact(rule, in);
  if (class_of(in.monoid) != MonoidClass::Naturals) unsupported_monoid(rule, in);
  const BigInt a = std::get<BigInt>(in.target);
  BigInt e = 0;
  for (const auto& g : in.generators) e = std::max(e, std::get<BigInt>(g));
  const BigInt ke = BigInt(in.k) * e;

  auto constant = [&](bool yes, std::string why) {
    Instance out;
    out.kind = ProblemKind::SSS;
    out.exact = true;
    out.k = in.k;
    out.monoid = CyclicPermGroup{2, {Permutation({2, 1})}, std::nullopt};
    out.target = yes ? Permutation::identity(2) : Permutation({2, 1});
    return finish(rule, out, in.k, {std::move(why)}, {});
  };
  if (a > ke) return constant(false, "a > k*e: fixed negative instance");
  if (in.k == 0) return constant(a == 0, "k=0 decided directly");

  std::vector<BigInt> primes;
  BigInt prod = 1;
  for (BigInt p = 2; prod <= ke || primes.empty(); ++p)
    if (nt::is_prime(p)) {
      primes.push_back(p);
      prod *= p;
    }
  CycleLayout layout(0, primes);
  auto embed = [&](const Element& x) {
    std::vector<BigInt> r;
    for (const auto& p : primes) r.push_back(std::get<BigInt>(x) % p);
    return layout.element(Permutation::identity(layout.degree), r);
  };
  Instance out = in;
  CyclicPermGroup grp{layout.degree, {}, std::nullopt};
  for (std::size_t i = 0; i < primes.size(); ++i) grp.generators.push_back(layout.cycle(i));
  out.monoid = grp;
  out.target = embed(in.target);
  for (auto& g : out.generators) g = embed(g);
  return finish(rule, out, in.k, {"primes=" + join(primes), "degree=" + std::to_string(layout.degree)},
                iota_index(in.generators.size()));
}

ReductionOutput sss_to_knapsack_atmost(const Instance& in) {
  constexpr std::string_view rule = "sss-to-ks-le";
  require_kind(rule, in, {ProblemKind::SSS});
  require_exact(rule, in);
  if (!in.distinct) out_of_domain(rule, "requires a distinct generator list");
  const std::uint64_t k = in.k;
  const std::uint64_t h = 2 * k + 1;
  const std::size_t m = in.generators.size();
  const auto cls = class_of(in.monoid);

  // Unit-tag layout shared by every class: counter, then one tag per generator.
  // Element i: (1, e_i, a_i); fillers: (0, contiguous block of ones, identity); target (k, 1^m, a).
  struct Tagged {
    std::uint64_t count;
    std::vector<bool> tags;
    Element x;
  };
  std::vector<Tagged> items;
  const Element id = identity(in.monoid);
  for (std::size_t i = 0; i < m; ++i) {
    Tagged t{1, std::vector<bool>(m, false), in.generators[i]};
    t.tags[i] = true;
    items.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 1; i + j <= m; ++j) {
      Tagged t{0, std::vector<bool>(m, false), id};
      for (std::size_t p = i; p < i + j; ++p) t.tags[p] = true;
      items.push_back(std::move(t));
    }
  const Tagged target{k, std::vector<bool>(m, true), in.target};
  std::vector<std::size_t> src;
  for (std::size_t i = 0; i < items.size(); ++i) src.push_back(i < m ? i : ReductionOutput::kGadget);

  Instance out;
  out.kind = ProblemKind::KS;
  out.exact = false;
  out.distinct = false;
  out.k = h;
  std::vector<std::string> notes{"fillers=" + std::to_string(items.size() - m)};

  auto emit = [&](auto embed) {
    for (const auto& t : items) out.generators.push_back(embed(t));
    out.target = embed(target);
  };

  switch (cls) {
    case MonoidClass::IntVectors:
    case MonoidClass::NatVectors: {
      const std::size_t d = dim_of(in.monoid);
      emit([&](const Tagged& t) {
        IntVector v{BigInt(t.count)};
        for (bool b : t.tags) v.push_back(b ? 1 : 0);
        const auto& x = std::get<IntVector>(t.x);
        v.insert(v.end(), x.begin(), x.end());
        return Element(v);
      });
      if (cls == MonoidClass::IntVectors)
        out.monoid = IntVectors{m + d + 1};
      else
        out.monoid = NatVectors{m + d + 1};
      return finish(rule, out, h, notes, src);
    }
    case MonoidClass::FiniteAbelian: {
      auto md = std::get<FiniteAbelian>(in.monoid);
      std::vector<BigInt> moduli(m + 1, BigInt(2 * k + 2));
      moduli.insert(moduli.end(), md.moduli.begin(), md.moduli.end());
      emit([&](const Tagged& t) {
        IntVector v{BigInt(t.count)};
        for (bool b : t.tags) v.push_back(b ? 1 : 0);
        const auto& x = std::get<IntVector>(t.x);
        v.insert(v.end(), x.begin(), x.end());
        return Element(v);
      });
      out.monoid = FiniteAbelian{moduli};
      notes.push_back("moduli=" + join(moduli));
      return finish(rule, out, h, notes, src);
    }
    case MonoidClass::FiniteCyclic: {
      const BigInt n = std::get<FiniteCyclic>(in.monoid).n;
      auto primes = nt::prime_values(nt::gen_primes(m + 1, BigInt(2 * k + 2), n));
      auto moduli = primes;
      moduli.push_back(n);
      nt::CrtBasis basis(moduli);
      emit([&](const Tagged& t) {
        std::vector<BigInt> r{BigInt(t.count)};
        for (bool b : t.tags) r.push_back(b ? 1 : 0);
        r.push_back(std::get<BigInt>(t.x));
        return Element(nt::crt_combine(r, basis));
      });
      out.monoid = FiniteCyclic{basis.product()};
      notes.push_back("primes=" + join(primes));
      return finish(rule, out, h, notes, src);
    }
    case MonoidClass::CyclicPerm:
    case MonoidClass::AbelianPerm: {
      const std::size_t n = degree_of(in.monoid);
      std::vector<BigInt> lengths;
      if (cls == MonoidClass::CyclicPerm)
        lengths = nt::prime_values(nt::gen_primes(m + 1, BigInt(std::max<std::uint64_t>(n, 2 * k + 1)) + 1));
      else
        lengths.assign(m + 1, BigInt(2 * k + 2));
      CycleLayout layout(n, lengths);
      emit([&](const Tagged& t) {
        std::vector<BigInt> e{BigInt(t.count)};
        for (bool b : t.tags) e.push_back(b ? 1 : 0);
        return Element(layout.element(perm_of(t.x), e));
      });
      std::vector<Permutation> gens;
      const auto& old = cls == MonoidClass::CyclicPerm ? std::get<CyclicPermGroup>(in.monoid).generators
                                                       : std::get<AbelianPermGroup>(in.monoid).generators;
      for (const auto& p : old) gens.push_back(p.extended(layout.degree));
      for (std::size_t i = 0; i < lengths.size(); ++i) gens.push_back(layout.cycle(i));
      if (cls == MonoidClass::CyclicPerm)
        out.monoid = CyclicPermGroup{layout.degree, gens, std::nullopt};
      else
        out.monoid = AbelianPermGroup{layout.degree, gens};
      notes.push_back("cycle lengths=" + join(lengths));
      return finish(rule, out, h, notes, src);
    }
    case MonoidClass::Integers: {
      // Z^1 construction, then back to the exact variant, shift, pack, and the at-most variant again.
      auto v = sss_to_knapsack_atmost(lift_scalar(in));
      auto e = exact_from_atmost(v.instance());
      auto s = shift_z_to_n(e.instance());
      auto p = pack_vectors(s.instance());
      auto l = atmost_from_exact(p.instance());
      auto r = compose_reductions(v, e, std::string(rule));
      r = compose_reductions(r, s, std::string(rule));
      r = compose_reductions(r, p, std::string(rule));
      r = compose_reductions(r, l, std::string(rule));
      return relabelled(std::move(r), rule, h);
    }
    case MonoidClass::Naturals: {
      auto v = sss_to_knapsack_atmost(lift_scalar(in));
      return compose_reductions(v, pack_vectors(v.instance()), std::string(rule));
    }
    default: unsupported_monoid(rule, in);
  }
}

// ---------------------------------------------------------------- composition and JSON

ReductionOutput compose_reductions(const ReductionOutput& first, ReductionOutput second, std::string rule) {
  ReductionOutput r;
  r.out = std::move(second.out);
  r.h_of_k = second.h_of_k;
  r.rule = std::move(rule);
  for (const auto& n : first.notes) r.notes.push_back(first.rule + ": " + n);
  for (const auto& n : second.notes) r.notes.push_back(second.rule + ": " + n);
  if (!first.source_index.empty() && !second.source_index.empty()) {
    for (auto s : second.source_index)
      r.source_index.push_back(s == ReductionOutput::kGadget || s >= first.source_index.size()
                                   ? ReductionOutput::kGadget
                                   : first.source_index[s]);
  }
  return r;
}

nlohmann::json reduction_to_json(const ReductionOutput& r) {
  nlohmann::json j;
  j["rule"] = r.rule;
  j["h_of_k"] = r.h_of_k;
  j["notes"] = r.notes;
  j["out"] = to_json(r.out);
  return j;
}

}  // namespace facto
