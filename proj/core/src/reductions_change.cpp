#include <algorithm>

#include "facto/errors.hpp"
#include "facto/numtheory.hpp"
#include "facto/reductions.hpp"
#include "reductions_internal.hpp"

namespace facto {

using detail::finish;
using detail::join;
using detail::out_of_domain;

namespace {

void require_ks_atmost_naturals(std::string_view rule, const Instance& in) {
  if (in.kind != ProblemKind::KS || in.exact || class_of(in.monoid) != MonoidClass::Naturals)
    out_of_domain(rule, "expects an at-most knapsack instance over N");
}

// Coins in first-occurrence order; the multiset matters only through its support for KS.
std::vector<BigInt> dedupe(const std::vector<Element>& gens, std::vector<std::size_t>& src) {
  std::vector<BigInt> coins;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& x = std::get<BigInt>(gens[i]);
    if (std::find(coins.begin(), coins.end(), x) == coins.end()) {
      coins.push_back(x);
      src.push_back(i);
    }
  }
  return coins;
}

ChangeInstance constant_change(ChangeFlavor flavor, bool approx, bool yes, std::uint64_t k) {
  ChangeInstance out;
  out.flavor = flavor;
  out.approx = approx;
  out.c = yes ? 0 : 1;
  out.k = k;
  return out;
}

Instance constant_sss_le_z(bool yes, std::uint64_t k) {
  Instance out;
  out.monoid = Integers{};
  out.kind = ProblemKind::SSS;
  out.exact = false;
  out.target = BigInt(yes ? 0 : 1);
  out.k = k;
  return out;
}

}  // namespace

ReductionOutput change_bridge(const AnyInstance& any) {
  constexpr std::string_view rule = "change-bridge";
  if (const auto* in = std::get_if<Instance>(&any)) {
    require_ks_atmost_naturals(rule, *in);
    ChangeInstance out;
    out.flavor = ChangeFlavor::Bounded;
    out.c = std::get<BigInt>(in->target);
    out.k = in->k;
    std::vector<std::size_t> src;
    out.coins = dedupe(in->generators, src);
    out.bounds.assign(out.coins.size(), BigInt(in->k));
    return finish(rule, out, in->k, {"bounds=k"}, std::move(src));
  }
  const auto& in = std::get<ChangeInstance>(any);
  if (in.flavor != ChangeFlavor::Bounded || in.approx) out_of_domain(rule, "expects a bounded change-making decision instance");
  Instance out;
  out.monoid = Naturals{};
  out.kind = ProblemKind::SSS;
  out.exact = false;
  out.target = in.c;
  out.k = in.k;
  std::vector<std::size_t> src;
  for (std::size_t i = 0; i < in.coins.size(); ++i) {
    BigInt copies = std::min(in.bounds[i], BigInt(in.k));
    for (BigInt r = 0; r < copies; ++r) {
      out.generators.push_back(in.coins[i]);
      src.push_back(i);
    }
  }
  return finish(rule, out, in.k, {"copies=min(b_i,k)"}, std::move(src));
}

ReductionOutput change_approx_i(const Instance& in) {
  constexpr std::string_view rule = "change-approx-i";
  require_ks_atmost_naturals(rule, in);
  ChangeInstance out;
  out.flavor = ChangeFlavor::Unbounded;
  out.approx = true;
  out.c = std::get<BigInt>(in.target);
  out.a = BigInt(in.k) + 1;
  out.b = 1;
  out.k = in.k;
  std::vector<std::size_t> src;
  out.coins = dedupe(in.generators, src);
  return finish(rule, out, in.k, {"objective=(k+1,1)"}, std::move(src));
}

ReductionOutput change_approx_ii(const ChangeInstance& in) {
  constexpr std::string_view rule = "change-approx-ii";
  if (in.flavor != ChangeFlavor::Unbounded || !in.approx) out_of_domain(rule, "expects an unbounded change-approx instance");
  if (in.b == 0) {
    if (in.a != 0) out_of_domain(rule, "objective with b = 0 requires a = 0");
    bool yes = in.c == 0 || std::any_of(in.coins.begin(), in.coins.end(), [](const BigInt& x) { return x > 0; });
    return finish(rule, constant_change(ChangeFlavor::Bounded, true, yes, in.k), in.k,
                  {std::string("b=0 decided directly: ") + (yes ? "positive" : "negative")}, {});
  }
  ChangeInstance out = in;
  out.flavor = ChangeFlavor::Bounded;
  out.bounds.assign(in.coins.size(), BigInt(in.k));
  std::vector<std::size_t> src(in.coins.size());
  for (std::size_t i = 0; i < src.size(); ++i) src[i] = i;
  return finish(rule, out, in.k, {"bounds=k"}, std::move(src));
}

ReductionOutput change_approx_iii(const Instance& in) {
  constexpr std::string_view rule = "change-approx-iii";
  if (in.kind != ProblemKind::SSS || in.exact || !in.distinct || class_of(in.monoid) != MonoidClass::Naturals)
    out_of_domain(rule, "expects a distinct at-most subset sum instance over N");
  ChangeInstance out;
  out.flavor = ChangeFlavor::ZeroOne;
  out.approx = true;
  out.c = std::get<BigInt>(in.target);
  out.a = BigInt(in.k) + 1;
  out.b = 1;
  out.k = in.k;
  std::vector<std::size_t> src;
  for (std::size_t i = 0; i < in.generators.size(); ++i) {
    out.coins.push_back(std::get<BigInt>(in.generators[i]));
    src.push_back(i);
  }
  return finish(rule, out, in.k, {"objective=(k+1,1)"}, std::move(src));
}

ReductionOutput change_approx_iv(const ChangeInstance& in) {
  constexpr std::string_view rule = "change-approx-iv";
  if (in.flavor != ChangeFlavor::ZeroOne || !in.approx) out_of_domain(rule, "expects a 0-1 change-approx instance");
  ChangeInstance out = in;
  out.flavor = ChangeFlavor::Bounded;
  out.bounds.assign(in.coins.size(), BigInt(1));
  std::vector<std::size_t> src(in.coins.size());
  for (std::size_t i = 0; i < src.size(); ++i) src[i] = i;
  return finish(rule, out, in.k, {"bounds=1"}, std::move(src));
}

ReductionOutput change_approx_to_sss(const ChangeInstance& in, const SolveOptions& opts) {
  constexpr std::string_view rule = "change-approx-to-sss";
  if (in.flavor != ChangeFlavor::Bounded || !in.approx) out_of_domain(rule, "expects a bounded change-approx instance");
  const std::uint64_t k = in.k;
  if (in.a == 0 && in.b == 0) {
    BigInt total = 0;
    for (std::size_t i = 0; i < in.coins.size(); ++i) total += in.bounds[i] * in.coins[i];
    bool yes = total >= in.c;
    return finish(rule, constant_sss_le_z(yes, k), k,
                  {std::string("a=b=0 decided directly: ") + (yes ? "positive" : "negative")}, {});
  }
  if (in.a == 0) {
    SolveOptions o = opts;
    o.change_greedy = true;
    o.want_witness = false;
    bool yes = solve_change(in, o).answer;
    return finish(rule, constant_sss_le_z(yes, k), k,
                  {std::string("a=0 decided by greedy: ") + (yes ? "positive" : "negative")}, {});
  }
  if (in.b == 0) out_of_domain(rule, "objective with a >= 1 requires b >= 1");

  auto bits = [](const BigInt& x) { return nt::bit_length(x > 0 ? x : BigInt(1)); };
  const std::size_t sa = bits(in.a * k);
  const std::size_t sb = bits(in.b * k);
  const BigInt shift = BigInt(1) << (sa + sb);
  const BigInt low = BigInt(1) << sb;

  Instance out;
  out.monoid = Integers{};
  out.kind = ProblemKind::SSS;
  out.exact = false;
  out.k = k;
  out.target = in.c * shift;
  std::vector<std::size_t> src;
  const std::size_t m = in.coins.size();
  auto add = [&](const BigInt& value, const BigInt& copies, std::size_t block) {
    for (BigInt r = 0; r < copies; ++r) {
      out.generators.push_back(value);
      src.push_back(block);
    }
  };
  const BigInt kk = BigInt(k);
  add(BigInt(-1), kk, 0);
  std::size_t stripped = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (in.bounds[i] == 0) {
      ++stripped;
      continue;
    }
    add(in.b - 1 + in.coins[i] * shift, std::min(in.bounds[i], kk), i + 1);
  }
  add((1 - in.a) * low - shift, kk, m + 1);
  add(low, kk, m + 2);
  return finish(rule, out, k,
                {"shift=2^" + std::to_string(sa + sb), "zero-bound coins stripped=" + std::to_string(stripped)},
                std::move(src));
}

ReductionOutput subsetsum_to_change_slice(const Instance& in, const SliceOptions& opts) {
  constexpr std::string_view rule = "subsetsum-to-change-slice";
  if (in.kind != ProblemKind::SSS || in.exact || class_of(in.monoid) != MonoidClass::Naturals)
    out_of_domain(rule, "expects an at-most subset sum instance over N");
  if (in.k < in.generators.size()) out_of_domain(rule, "subset sum input needs k >= number of items");
  if (opts.a < 1) out_of_domain(rule, "objective coefficient must be >= 1");

  std::vector<BigInt> items;
  for (const auto& g : in.generators)
    if (std::get<BigInt>(g) > 0) items.push_back(std::get<BigInt>(g));
  std::sort(items.begin(), items.end());
  const BigInt a = std::get<BigInt>(in.target);
  const std::size_t m = items.size();

  auto constant = [&](bool yes, std::string why) {
    ChangeInstance out = constant_change(opts.flavor, true, yes, opts.d);
    out.a = opts.a;
    return finish(rule, out, opts.d, {std::move(why)}, {});
  };
  if (a == 0) return constant(true, "a=0: fixed positive instance");
  if (m == 0 || a > BigInt(m) * items.back()) return constant(false, "a > m*a_m: fixed negative instance");

  const std::size_t B = nt::bit_length(BigInt(m) * items.back());
  const std::size_t W = nt::bit_length(BigInt(m));
  const BigInt top = BigInt(1) << (B + m * W);
  const BigInt scale = BigInt(opts.d) + 1;

  ChangeInstance out;
  out.flavor = opts.flavor;
  out.approx = true;
  out.a = opts.a;
  out.b = 0;
  out.k = opts.d;
  BigInt c = a + BigInt(m) * top;
  for (std::size_t i = 1; i <= m; ++i) {
    BigInt slot = (BigInt(1) << (B + (i - 1) * W)) + top;
    out.coins.push_back(scale * slot);
    out.coins.push_back(scale * (items[i - 1] + slot));
    c += BigInt(1) << (B + (i - 1) * W);
  }
  out.c = scale * c;
  if (opts.flavor == ChangeFlavor::Bounded) out.bounds.assign(out.coins.size(), BigInt(m));
  return finish(rule, out, opts.d,
                {"B=" + std::to_string(B), "W=" + std::to_string(W), "items=" + join(items)}, {});
}

// ---------------------------------------------------------------- registry

namespace {

constexpr std::string_view kRules[] = {
    "expand-f-ks",      "expand-ks-sss",    "shift-zn",          "pack-vec",          "exact-from-le",
    "le-from-exact",    "distinctify",      "sss-to-f-sym",      "fincyc-to-vec",     "nat-to-cycperm",
    "sss-to-ks-le",     "cycperm-to-fincyc", "change-bridge",    "change-approx-i",   "change-approx-ii",
    "change-approx-iii", "change-approx-iv", "change-approx-to-sss", "subsetsum-to-change-slice"};
constexpr std::string_view kChains[] = {"cor15", "cor18", "thm20"};

const Instance& need_instance(std::string_view rule, const AnyInstance& in) {
  if (const auto* p = std::get_if<Instance>(&in)) return *p;
  out_of_domain(rule, "expects a factorization instance, got change-making");
}

const ChangeInstance& need_change(std::string_view rule, const AnyInstance& in) {
  if (const auto* p = std::get_if<ChangeInstance>(&in)) return *p;
  out_of_domain(rule, "expects a change-making instance");
}

ReductionOutput chain(std::string_view name, const Instance& in) {
  const std::string rule(name);
  if (name == "cor15") {
    if (in.kind != ProblemKind::SSS || in.exact) out_of_domain(name, "expects an at-most subset sum instance");
    Instance start = in;
    start.distinct = false;
    auto r = exact_from_atmost(start);
    auto d = distinctify(r.instance());
    r = compose_reductions(r, d, rule);
    return compose_reductions(r, atmost_from_exact(d.instance()), rule);
  }
  if (name == "cor18") {
    auto r = cycperm_to_fincyc(in);
    auto step = [&](ReductionOutput next) { r = compose_reductions(r, std::move(next), rule); };
    step(fincyc_to_intvectors(r.instance()));
    step(shift_z_to_n(r.instance()));
    const auto cls = class_of(r.instance().monoid);
    if (cls == MonoidClass::NatVectors) step(pack_vectors(r.instance()));
    step(naturals_to_cycperm(r.instance()));
    return r;
  }
  // thm20
  auto r = sss_to_knapsack_atmost(in);
  auto e = exact_from_atmost(r.instance());
  r = compose_reductions(r, e, rule);
  return compose_reductions(r, expand_ks_to_sss(e.instance()), rule);
}

}  // namespace

std::span<const std::string_view> rule_names() { return kRules; }
std::span<const std::string_view> chain_names() { return kChains; }

bool is_rule(std::string_view name) {
  return std::find(std::begin(kRules), std::end(kRules), name) != std::end(kRules) ||
         std::find(std::begin(kChains), std::end(kChains), name) != std::end(kChains);
}

ReductionOutput apply_rule(std::string_view name, const AnyInstance& in, const RuleOptions& opts) {
  if (name == "expand-f-ks") return expand_f_to_ks(need_instance(name, in));
  if (name == "expand-ks-sss") return expand_ks_to_sss(need_instance(name, in));
  if (name == "shift-zn") return shift_z_to_n(need_instance(name, in));
  if (name == "pack-vec") return pack_vectors(need_instance(name, in));
  if (name == "exact-from-le") return exact_from_atmost(need_instance(name, in));
  if (name == "le-from-exact") return atmost_from_exact(need_instance(name, in));
  if (name == "distinctify") return distinctify(need_instance(name, in));
  if (name == "sss-to-f-sym") return sss_to_factorization_sym(need_instance(name, in), opts.solve);
  if (name == "fincyc-to-vec") return fincyc_to_intvectors(need_instance(name, in));
  if (name == "nat-to-cycperm") return naturals_to_cycperm(need_instance(name, in));
  if (name == "sss-to-ks-le") return sss_to_knapsack_atmost(need_instance(name, in));
  if (name == "cycperm-to-fincyc") return cycperm_to_fincyc(need_instance(name, in));
  if (name == "change-bridge") return change_bridge(in);
  if (name == "change-approx-i") return change_approx_i(need_instance(name, in));
  if (name == "change-approx-ii") return change_approx_ii(need_change(name, in));
  if (name == "change-approx-iii") return change_approx_iii(need_instance(name, in));
  if (name == "change-approx-iv") return change_approx_iv(need_change(name, in));
  if (name == "change-approx-to-sss") return change_approx_to_sss(need_change(name, in), opts.solve);
  if (name == "subsetsum-to-change-slice") return subsetsum_to_change_slice(need_instance(name, in), opts.slice);
  if (name == "cor15" || name == "cor18" || name == "thm20") return chain(name, need_instance(name, in));
  throw std::invalid_argument("unknown rule: " + std::string(name));
}

std::uint64_t declared_h(std::string_view name, std::uint64_t k, const RuleOptions& opts) {
  if (name == "sss-to-f-sym") return k + 1;
  if (name == "distinctify" || name == "sss-to-ks-le" || name == "cor15" || name == "thm20") return 2 * k + 1;
  if (name == "fincyc-to-vec" || name == "cor18") return 2 * k;
  if (name == "subsetsum-to-change-slice") return opts.slice.d;
  if (!is_rule(name)) throw std::invalid_argument("unknown rule: " + std::string(name));
  return k;
}

}  // namespace facto
