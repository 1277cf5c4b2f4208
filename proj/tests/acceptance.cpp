// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "facto/errors.hpp"
#include "facto/fo.hpp"
#include "facto/group.hpp"
#include "facto/numtheory.hpp"
#include "facto/perm.hpp"
#include "facto/random.hpp"
#include "facto/reductions.hpp"
#include "facto/solvers.hpp"
#include "facto/verify.hpp"
#include "oracles.hpp"

using namespace facto;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::vector<std::uint32_t> img(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

// 1. Every rule, 200 trials at the sweep caps.
void soundness_sweep(Outcome& o) {
  auto start = Clock::now();
  std::size_t rules = 0;
  for (auto name : rule_names()) {
    VerifyConfig cfg;
    cfg.rule = std::string(name);
    cfg.trials = 200;
    cfg.seed = 1;
    auto r = verify_rule(cfg);
    ++rules;
    if (r.agreements != 200) {
      std::ostringstream s;
      s << name << " agreed on " << r.agreements << "/200";
      if (!r.disagreements.empty()) s << " (trial " << r.disagreements.front().trial << ": " << r.disagreements.front().error << ")";
      o.fail(s.str());
    }
  }
  double secs = seconds_since(start);
  if (secs > 600) o.fail("runtime " + std::to_string(secs) + " s");
  o.detail << rules << " rules x 200 trials, " << static_cast<int>(secs) << " s";
}

// 2. Symmetric-group gadget: sizes, parameter and equivalence.
void gadget(Outcome& o) {
  std::size_t fast = 0, full = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(trial_seed(12, "gadget", t));
    auto in = random_rule_input("sss-to-f-sym", rng, sweep_caps(), 0.5, t % 7);
    const auto& inst = std::get<Instance>(in.instance);
    const std::uint64_t n = degree_of(inst.monoid), m = inst.generators.size(), k = inst.k;
    auto r = sss_to_factorization_sym(inst);
    const auto& out = r.instance();
    if (r.h_of_k != k + 1 || out.k != k + 1) o.fail("parameter at trial " + std::to_string(t));
    if (k >= 4) {
      ++full;
      if (degree_of(out.monoid) != n + k + 3 + (m + 1) * k) o.fail("degree at trial " + std::to_string(t));
      if (out.generators.size() != m * (m + 1) / 2 + m + 1) o.fail("generator count at trial " + std::to_string(t));
    } else {
      ++fast;
    }
    if (oracle::subset_sum(inst) != solve(out).answer) o.fail("verdict at trial " + std::to_string(t));
  }
  o.detail << "100 instances (" << full << " constructed, " << fast << " via k<4 path)";
}

// 3. Cyclic detection against closure enumeration.
void cyclic_detection(Outcome& o) {
  std::size_t pairs = 0, cyclic = 0;
  auto check = [&](const Permutation& a, const Permutation& b) {
    ++pairs;
    auto group = oracle::generated({img(a), img(b)}, a.degree());
    auto g = pair_cyclic_generator(a, b);
    if (g.has_value() != oracle::is_cyclic(group)) {
      o.fail("detection " + to_cycle_string(a) + " " + to_cycle_string(b));
      return;
    }
    if (!g) return;
    ++cyclic;
    if (order(*g) != boost::multiprecision::lcm(order(a), order(b)) || order(*g) != BigInt(group.size()))
      o.fail("order " + to_cycle_string(a) + " " + to_cycle_string(b));
    if (!cyclic_dlog(a, *g) || !cyclic_dlog(b, *g)) o.fail("generator misses an input");
  };
  std::vector<Permutation> s4;
  std::vector<Point> v{1, 2, 3, 4};
  do s4.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  for (const auto& a : s4)
    for (const auto& b : s4) check(a, b);
  Rng rng(6);
  for (int t = 0; t < 500; ++t) {
    auto a = rng.permutation(6);
    // Half the pairs are drawn inside <a> so that cyclic cases occur.
    Permutation b = rng.chance(0.5) ? power(a, BigInt(rng.uniform(0, 11))) : rng.permutation(6);
    check(a, b);
  }
  o.detail << pairs << " pairs (576 in S_4, 500 in S_6), " << cyclic << " cyclic";
}

// 4. CRT over every pairwise coprime moduli set with product <= 10^4.
void crt_exhaustive(Outcome& o) {
  constexpr std::uint64_t kMax = 10000;
  std::size_t sets = 0;
  std::uint64_t residues = 0;
  std::vector<std::uint64_t> cur;
  std::vector<char> seen;
  auto check_set = [&](std::uint64_t N) {
    ++sets;
    std::vector<BigInt> moduli(cur.begin(), cur.end());
    nt::CrtBasis basis(moduli);
    if (basis.product() != N) o.fail("product");
    const std::size_t l = cur.size();
    // Images of the unit vectors; additivity means crt(r) = sum r_i e_i mod N.
    std::vector<std::uint64_t> e(l);
    for (std::size_t i = 0; i < l; ++i) {
      std::vector<BigInt> unit(l, 0);
      unit[i] = 1;
      e[i] = crt_combine(unit, basis).convert_to<std::uint64_t>();
    }
    seen.assign(N, 0);
    std::vector<BigInt> r(l, 0);
    std::vector<std::uint64_t> rr(l, 0);
    std::uint64_t linear = 0;
    for (std::uint64_t step = 0; step < N; ++step) {
      ++residues;
      BigInt x = crt_combine(r, basis);
      if (x < 0 || x >= N) {
        o.fail("out of range");
        return;
      }
      auto xi = x.convert_to<std::uint64_t>();
      if (seen[xi]) {
        o.fail("not injective");
        return;
      }
      seen[xi] = 1;
      if (xi != linear) {
        o.fail("not additive");
        return;
      }
      auto back = crt_split(x, basis);
      for (std::size_t i = 0; i < l; ++i)
        if (back[i] != r[i] || x % cur[i] != rr[i]) {
          o.fail("split mismatch");
          return;
        }
      // Mixed-radix increment, keeping the linear form in step.
      for (std::size_t i = 0; i < l; ++i) {
        linear = (linear + e[i]) % N;
        if (++rr[i] < cur[i]) {
          r[i] = rr[i];
          break;
        }
        linear = (linear + N - (cur[i] % N) * e[i] % N) % N;
        rr[i] = 0;
        r[i] = 0;
      }
    }
  };
  std::function<void(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t from, std::uint64_t prod) {
    for (std::uint64_t n = from; prod * n <= kMax && o.pass; ++n) {
      bool coprime = std::all_of(cur.begin(), cur.end(), [&](std::uint64_t c) { return std::gcd(c, n) == 1; });
      if (!coprime) continue;
      cur.push_back(n);
      check_set(prod * n);
      rec(n + 1, prod * n);
      cur.pop_back();
    }
  };
  rec(2, 1);
  // Random pairs of residue vectors on larger bases.
  Rng rng(4);
  for (int t = 0; t < 2000 && o.pass; ++t) {
    std::vector<BigInt> mods{BigInt(rng.uniform(2, 40))};
    for (int i = 0; i < 3; ++i) {
      BigInt c = rng.uniform(2, 60);
      if (std::all_of(mods.begin(), mods.end(), [&](const BigInt& q) { return boost::multiprecision::gcd(q, c) == 1; }))
        mods.push_back(c);
    }
    nt::CrtBasis basis(mods);
    std::vector<BigInt> a, b, s;
    for (const auto& q : mods) {
      a.push_back(rng.uniform_big(0, q - 1));
      b.push_back(rng.uniform_big(0, q - 1));
      s.push_back((a.back() + b.back()) % q);
    }
    if (crt_combine(s, basis) != (crt_combine(a, basis) + crt_combine(b, basis)) % basis.product())
      o.fail("random additivity");
  }
  o.detail << sets << " moduli sets, " << residues << " residue vectors";
}

// 5. Digit checker against the numeric DP.
void digit_check(Outcome& o) {
  RandomCaps caps;
  caps.max_n = 3;
  caps.max_m = 8;
  caps.max_k = 4;
  caps.max_modulus = 9;
  Rng rng(21);
  std::size_t agree = 0, carry = 0, yes = 0;
  for (int t = 0; t < 300; ++t) {
    Instance inst;
    if (t % 3 == 2) {
      // Coordinates whose base-r digits are all r-1, so carries chain.
      ++carry;
      const std::uint64_t k = rng.uniform(1, 4);
      const std::uint64_t r = nt::digit_base_for(k);
      std::vector<std::uint64_t> full;
      for (std::uint64_t x = r - 1; x <= 8; x = x * r + (r - 1)) full.push_back(x);
      const std::size_t d = rng.uniform(1, 3), m = rng.uniform(k, 8);
      FiniteAbelian g;
      for (std::size_t j = 0; j < d; ++j) g.moduli.push_back(rng.uniform(std::max<std::uint64_t>(full.back() + 1, 2), 9));
      inst.monoid = g;
      inst.kind = ProblemKind::SSS;
      inst.exact = true;
      inst.k = k;
      for (std::size_t i = 0; i < m; ++i) {
        IntVector x;
        for (std::size_t j = 0; j < d; ++j) x.push_back(full[rng.uniform(0, full.size() - 1)]);
        inst.generators.push_back(x);
      }
      IntVector u(d, 0);
      std::vector<std::size_t> idx(m);
      std::iota(idx.begin(), idx.end(), 0);
      rng.shuffle(idx);
      for (std::uint64_t l = 0; l < k; ++l)
        for (std::size_t j = 0; j < d; ++j) u[j] += std::get<IntVector>(inst.generators[idx[l]])[j];
      for (std::size_t j = 0; j < d; ++j) u[j] = rng.chance(0.7) ? u[j] % g.moduli[j] : rng.uniform_big(0, g.moduli[j] - 1);
      inst.target = u;
      inst = validate(inst);
    } else {
      RandomRequest req;
      req.monoid = MonoidClass::FiniteAbelian;
      req.kind = ProblemKind::SSS;
      inst = random_instance(rng, req, caps);
    }
    auto dc = solve_fabg_digitcheck(inst);
    auto dp = solve_numeric_dp(inst);
    if (dc.answer == dp.answer && dc.answer == oracle::subset_sum(inst) && check_witness(inst, dc))
      ++agree;
    else
      o.fail(serialize(inst));
    yes += dc.answer;
  }
  o.detail << agree << "/300 agree (" << carry << " carry-chain cases, " << yes << " positive)";
}

std::vector<Transformation> all_transformations(std::size_t n) {
  std::vector<Transformation> out;
  std::vector<Point> v(n, 1);
  while (true) {
    out.emplace_back(v);
    std::size_t i = 0;
    while (i < n && ++v[i] > n) v[i++] = 1;
    if (i == n) break;
  }
  return out;
}

bool le_oracle(const Transformation& f, const std::vector<Transformation>& B, std::uint64_t k) {
  Instance inst;
  inst.monoid = TransformationMonoid{f.degree()};
  inst.kind = ProblemKind::F;
  inst.exact = false;
  inst.target = f;
  inst.generators.assign(B.begin(), B.end());
  inst.k = k;
  return oracle::factorization(inst);
}

// 6. First-order encoding of transformation factorization.
void fo_encoding(Outcome& o) {
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 3 && o.pass; ++n) {
    auto all = all_transformations(n);
    std::vector<std::vector<Transformation>> lists;
    for (std::size_t i = 0; i < all.size(); ++i) {
      lists.push_back({all[i]});
      for (std::size_t j = i + 1; j < all.size(); ++j) lists.push_back({all[i], all[j]});
    }
    for (const auto& B : lists)
      for (const auto& f : all)
        for (std::uint64_t k = 0; k <= 3; ++k) {
          ++cases;
          auto e = fo::encode_tm_factorization(f, B, k);
          if (fo::evaluate(e.structure, e.sentence) != le_oracle(f, B, k)) o.fail("exhaustive case");
        }
  }
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = rng.uniform(4, 5);
    std::vector<Transformation> B;
    for (std::size_t i = rng.uniform(2, 4); i > 0; --i) B.push_back(rng.transformation(n));
    std::uint64_t k = rng.uniform(1, 4);
    Transformation f = rng.transformation(n);
    if (rng.chance(0.5)) {
      f = Transformation::identity(n);
      for (std::uint64_t j = rng.uniform(0, k); j > 0; --j) f = compose(f, B[rng.uniform(0, B.size() - 1)]);
    }
    auto e = fo::encode_tm_factorization(f, B, k);
    if (fo::evaluate(e.structure, e.sentence) != le_oracle(f, B, k)) o.fail("random case " + std::to_string(t));
  }
  std::vector<Transformation> B{Transformation({2, 1, 3}), Transformation({1, 1, 3})};
  std::vector<std::size_t> len;
  for (std::uint64_t k = 0; k <= 10; ++k) {
    auto e = fo::encode_tm_factorization(Transformation::identity(3), B, k);
    len.push_back(fo::length(e.sentence));
    if (k >= 1 && fo::classify_fragment(e.sentence).tag() != "Sigma_{2,1}^func") o.fail("fragment at k=" + std::to_string(k));
  }
  for (std::size_t k = 2; k < len.size(); ++k)
    if (len[k] - len[k - 1] != len[1] - len[0]) o.fail("length not affine");
  o.detail << cases << " exhaustive + 100 random; |phi_k| = " << len[1] - len[0] << "k + " << len[0]
           << "; fragment Sigma_{2,1}^func";
}

// 7. Change-approx to subset sum (with recovered overshoot blocks) and the slice construction.
void change_constructions(Outcome& o) {
  std::size_t agree = 0, witnesses = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng(trial_seed(7, "change-approx-to-sss", t));
    auto in = random_rule_input("change-approx-to-sss", rng, sweep_caps());
    const auto& ci = std::get<ChangeInstance>(in.instance);
    auto r = change_approx_to_sss(ci);
    const auto& out = r.instance();
    bool want = oracle::change(ci);
    auto v = solve(out);
    if (v.answer != want) {
      o.fail("change-approx-to-sss verdict " + serialize(in.instance));
      continue;
    }
    ++agree;
    if (!v.answer || r.source_index.empty()) continue;
    ++witnesses;
    const std::size_t m = ci.coins.size();
    std::vector<BigInt> count(m + 3, 0);
    for (auto i : v.witness) count[r.source_index[i]] += 1;
    BigInt paid = 0;
    for (std::size_t i = 0; i < m; ++i) paid += count[i + 1] * ci.coins[i];
    const BigInt& x1 = count[m + 1];
    const BigInt& x2 = count[m + 2];
    if (x1 != paid - ci.c || x2 != (ci.a - 1) * x1) o.fail("overshoot identities " + serialize(in.instance));
    Verdict back;
    back.answer = true;
    back.witness_kind = WitnessKind::Exponents;
    for (std::size_t i = 0; i < m; ++i) back.witness.push_back(count[i + 1].convert_to<std::uint64_t>());
    if (!check_witness(ci, back)) o.fail("recovered coins are not a witness " + serialize(in.instance));
  }
  std::size_t slice_agree = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng(trial_seed(7, "subsetsum-to-change-slice", t));
    auto in = random_rule_input("subsetsum-to-change-slice", rng, sweep_caps());
    const auto& inst = std::get<Instance>(in.instance);
    auto r = subsetsum_to_change_slice(inst, in.options.slice);
    if (oracle::subset_sum(inst) == solve(r.change()).answer && r.h_of_k == in.options.slice.d)
      ++slice_agree;
    else
      o.fail("slice verdict " + serialize(in.instance));
  }
  Instance ex;
  ex.monoid = Naturals{};
  ex.kind = ProblemKind::SSS;
  ex.exact = false;
  ex.target = BigInt(1);
  ex.generators = {BigInt(1)};
  ex.k = 1;
  SliceOptions so;
  so.d = 0;
  so.a = 1;
  auto w = subsetsum_to_change_slice(ex, so).change();
  bool example = w.coins == std::vector<BigInt>{6, 7} && w.c == 7;
  if (!example) o.fail("worked example");
  o.detail << "change-approx-to-sss " << agree << "/200 (" << witnesses << " witnesses decoded), slice " << slice_agree
           << "/200, example (6,7)->7 " << (example ? "ok" : "wrong");
}

// 8. Composite chains.
void chains(Outcome& o) {
  for (auto name : chain_names()) {
    VerifyConfig cfg;
    cfg.rule = std::string(name);
    cfg.trials = 100;
    cfg.seed = 1;
    if (name == "cor15") {
      cfg.caps.max_n = 4;
      cfg.caps.max_m = 3;
      cfg.caps.max_k = 2;
    }
    auto r = verify_rule(cfg);
    if (r.agreements != 100) o.fail(std::string(name) + " agreed on " + std::to_string(r.agreements) + "/100");
    o.detail << (o.detail.tellp() > 0 ? ", " : "") << name << " " << r.agreements << "/100";
  }
}

// 9. Output parameter depends on k alone and matches the declared table.
void purity(Outcome& o) {
  std::size_t rules = 0;
  std::vector<std::string_view> names(rule_names().begin(), rule_names().end());
  names.insert(names.end(), chain_names().begin(), chain_names().end());
  for (auto name : names) {
    ++rules;
    for (std::uint64_t k = 0; k <= 5; ++k) {
      std::set<std::uint64_t> hs;
      std::uint64_t declared = 0;
      for (std::uint64_t t = 0; t < 50; ++t) {
        Rng rng(trial_seed(9, name, k * 100 + t));
        RandomCaps caps;
        caps.max_n = rng.uniform(1, 6);
        caps.max_m = rng.uniform(1, 4);
        caps.max_k = 5;
        caps.max_modulus = rng.uniform(2, 60);
        caps.max_value = rng.uniform(1, 30);
        auto in = random_rule_input(name, rng, caps, 0.5, k);
        if (name == "subsetsum-to-change-slice") in.options.slice.d = k;
        declared = declared_h(name, k, in.options);
        try {
          auto r = apply_rule(name, in.instance, in.options);
          std::uint64_t out_k =
              std::holds_alternative<Instance>(r.out) ? r.instance().k : r.change().k;
          hs.insert(r.h_of_k);
          if (out_k != r.h_of_k) o.fail(std::string(name) + ": output k differs from h");
        } catch (const std::exception& e) {
          o.fail(std::string(name) + ": " + e.what());
        }
      }
      if (hs.size() != 1 || *hs.begin() != declared)
        o.fail(std::string(name) + " at k=" + std::to_string(k));
      if (declared != k && declared != k + 1 && declared != 2 * k && declared != 2 * k + 1)
        o.fail(std::string(name) + ": declared value outside the table");
    }
  }
  o.detail << rules << " rules and chains x 6 values of k x 50 instances";
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    void (*run)(Outcome&);
  };
  const Criterion all[] = {
      {1, "reduction soundness sweep", soundness_sweep},
      {2, "symmetric-group gadget", gadget},
      {3, "cyclic subgroup detection", cyclic_detection},
      {4, "CRT bijectivity and additivity", crt_exhaustive},
      {5, "digit checker vs numeric DP", digit_check},
      {6, "first-order encoding", fo_encoding},
      {7, "change-making constructions", change_constructions},
      {8, "composite chains", chains},
      {9, "parameter purity", purity},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    auto start = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s [%d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(),
                seconds_since(start));
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
