#include "facto/verify.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "facto/errors.hpp"

namespace facto {

namespace {

using MC = MonoidClass;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <class T>
T pick(Rng& rng, std::initializer_list<T> xs) {
  return *(xs.begin() + rng.uniform(0, xs.size() - 1));
}

const std::initializer_list<MC> kAll = {MC::Integers,     MC::Naturals,      MC::IntVectors, MC::NatVectors,
                                        MC::FiniteCyclic, MC::FiniteAbelian, MC::Symmetric,  MC::Transformation,
                                        MC::CyclicPerm,   MC::AbelianPerm};
const std::initializer_list<MC> kDistinctify = {MC::Symmetric, MC::FiniteCyclic, MC::CyclicPerm, MC::Integers,
                                                MC::Naturals};
const std::initializer_list<MC> kVectorLike = {MC::IntVectors,   MC::NatVectors, MC::CyclicPerm, MC::AbelianPerm,
                                          MC::FiniteAbelian, MC::Integers,   MC::FiniteCyclic, MC::Naturals};

ProblemKind any_kind(Rng& rng) { return pick(rng, {ProblemKind::F, ProblemKind::KS, ProblemKind::SSS}); }

Instance instance_of(Rng& rng, const RandomCaps& caps, double bias, std::optional<std::uint64_t> k, MC cls,
                     ProblemKind kind, bool exact, bool distinct = false) {
  RandomRequest req;
  req.monoid = cls;
  req.kind = kind;
  req.exact = exact;
  req.distinct = distinct;
  req.bias = bias;
  req.k = k;
  return random_instance(rng, req, caps);
}

ChangeInstance change_of(Rng& rng, const RandomCaps& caps, double bias, std::optional<std::uint64_t> k,
                         ChangeFlavor flavor, bool approx) {
  ChangeRequest req;
  req.flavor = flavor;
  req.approx = approx;
  req.bias = bias;
  req.k = k;
  return random_change_instance(rng, req, caps);
}

}  // namespace

RandomCaps sweep_caps() {
  RandomCaps c;
  c.max_n = 6;
  c.max_m = 4;
  c.max_k = 5;
  c.max_modulus = 60;
  c.max_value = 30;
  return c;
}

std::uint64_t trial_seed(std::uint64_t seed, std::string_view rule, std::uint64_t trial) {
  return splitmix(splitmix(seed ^ fnv1a(rule)) + trial);
}

RuleInput random_rule_input(std::string_view rule, Rng& rng, const RandomCaps& caps, double bias,
                            std::optional<std::uint64_t> k) {
  RuleInput in;
  auto inst = [&](std::initializer_list<MC> classes, ProblemKind kind, bool exact, bool distinct = false) {
    return instance_of(rng, caps, bias, k, pick(rng, classes), kind, exact, distinct);
  };
  const bool coin = rng.chance(0.5);
  if (rule == "expand-f-ks") {
    in.instance = inst(kAll, ProblemKind::F, coin);
  } else if (rule == "expand-ks-sss") {
    in.instance = inst(kAll, ProblemKind::KS, coin);
  } else if (rule == "shift-zn") {
    in.instance = inst({MC::Integers, MC::IntVectors}, pick(rng, {ProblemKind::KS, ProblemKind::SSS}), true);
  } else if (rule == "pack-vec") {
    in.instance = inst({MC::NatVectors}, pick(rng, {ProblemKind::KS, ProblemKind::SSS}), coin);
  } else if (rule == "exact-from-le") {
    in.instance = inst(kAll, any_kind(rng), false);
  } else if (rule == "le-from-exact") {
    in.instance = inst(kAll, any_kind(rng), true);
  } else if (rule == "distinctify") {
    in.instance = inst(kDistinctify, ProblemKind::SSS, true, coin);
  } else if (rule == "sss-to-f-sym") {
    in.instance = inst({MC::Symmetric}, ProblemKind::SSS, true, coin);
  } else if (rule == "fincyc-to-vec") {
    in.instance = inst({MC::FiniteCyclic}, ProblemKind::SSS, true);
  } else if (rule == "nat-to-cycperm") {
    in.instance = inst({MC::Naturals}, ProblemKind::SSS, true, coin);
  } else if (rule == "sss-to-ks-le" || rule == "thm20") {
    in.instance = inst(kVectorLike, ProblemKind::SSS, true, true);
  } else if (rule == "cycperm-to-fincyc") {
    in.instance = inst({MC::CyclicPerm}, any_kind(rng), coin);
  } else if (rule == "change-bridge") {
    if (coin)
      in.instance = inst({MC::Naturals}, ProblemKind::KS, false);
    else
      in.instance = change_of(rng, caps, bias, k, ChangeFlavor::Bounded, false);
  } else if (rule == "change-approx-i") {
    in.instance = inst({MC::Naturals}, ProblemKind::KS, false);
  } else if (rule == "change-approx-ii") {
    auto c = change_of(rng, caps, bias, k, ChangeFlavor::Unbounded, true);
    if (c.b == 0) c.a = 0;  // the only objective with b = 0 in the domain
    in.instance = c;
  } else if (rule == "change-approx-iii") {
    in.instance = inst({MC::Naturals}, ProblemKind::SSS, false, true);
  } else if (rule == "change-approx-iv") {
    in.instance = change_of(rng, caps, bias, k, ChangeFlavor::ZeroOne, true);
  } else if (rule == "change-approx-to-sss") {
    auto c = change_of(rng, caps, bias, k, ChangeFlavor::Bounded, true);
    if (c.a >= 1 && c.b == 0) c.b = rng.uniform(1, 3);
    in.instance = c;
  } else if (rule == "subsetsum-to-change-slice") {
    RandomRequest req;
    req.monoid = MC::Naturals;
    req.kind = ProblemKind::SSS;
    req.exact = false;
    req.bias = bias;
    req.k = k ? *k : rng.uniform(0, caps.max_k);
    req.m = rng.uniform(0, std::min<std::uint64_t>(caps.max_m, *req.k));
    in.instance = random_instance(rng, req, caps);
    in.options.slice.d = rng.uniform(0, 2);
    in.options.slice.flavor = pick(rng, {ChangeFlavor::Unbounded, ChangeFlavor::Bounded, ChangeFlavor::ZeroOne});
    in.options.slice.a = rng.uniform(1, 3);
  } else if (rule == "cor15") {
    in.instance = inst(kDistinctify, ProblemKind::SSS, false);
  } else if (rule == "cor18") {
    in.instance = inst({MC::CyclicPerm}, ProblemKind::SSS, true);
  } else {
    throw std::invalid_argument("unknown rule: " + std::string(rule));
  }
  return in;
}

TrialOutcome run_trial(std::string_view rule, const RuleInput& input, const SolveOptions& solve_opts) {
  TrialOutcome t;
  t.input = input;
  SolveOptions o = solve_opts;
  o.want_witness = false;
  RuleOptions ro = input.options;
  ro.solve = o;
  try {
    t.input_answer = solve(input.instance, o).answer;
    t.output = apply_rule(rule, input.instance, ro);
    t.output_answer = solve(t.output->out, o).answer;
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  return t;
}

VerifyReport verify_rule(const VerifyConfig& cfg) {
  if (!is_rule(cfg.rule)) throw std::invalid_argument("unknown rule: " + cfg.rule);
  auto start = std::chrono::steady_clock::now();
  VerifyReport r;
  r.rule = cfg.rule;
  r.trials = cfg.trials;
  r.seed = cfg.seed;
  for (std::uint64_t i = 0; i < cfg.trials; ++i) {
    const std::uint64_t ts = trial_seed(cfg.seed, cfg.rule, i);
    Rng rng(ts);
    auto input = random_rule_input(cfg.rule, rng, cfg.caps, cfg.bias);
    auto t = run_trial(cfg.rule, input, cfg.solve);
    if (t.agrees()) {
      ++r.agreements;
      if (*t.input_answer) ++r.positives;
      continue;
    }
    Disagreement d;
    d.trial = i;
    d.trial_seed = ts;
    d.input = to_json(input.instance);
    if (cfg.rule == "subsetsum-to-change-slice")
      d.options = {{"d", input.options.slice.d},
                   {"flavor", flavor_tag(input.options.slice.flavor)},
                   {"a", input.options.slice.a.str()}};
    if (t.output) d.output = reduction_to_json(*t.output);
    d.input_answer = t.input_answer;
    d.output_answer = t.output_answer;
    d.error = t.error;
    r.disagreements.push_back(std::move(d));
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json to_json(const VerifyReport& r, bool with_time) {
  nlohmann::json j;
  j["rule"] = r.rule;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["agreements"] = r.agreements;
  j["positives"] = r.positives;
  nlohmann::json ds = nlohmann::json::array();
  for (const auto& d : r.disagreements) {
    nlohmann::json x;
    x["trial"] = d.trial;
    x["trial_seed"] = d.trial_seed;
    x["input"] = d.input;
    if (!d.options.is_null()) x["options"] = d.options;
    x["output"] = d.output;
    x["input_answer"] = d.input_answer ? nlohmann::json(*d.input_answer) : nlohmann::json(nullptr);
    x["output_answer"] = d.output_answer ? nlohmann::json(*d.output_answer) : nlohmann::json(nullptr);
    if (!d.error.empty()) x["error"] = d.error;
    ds.push_back(std::move(x));
  }
  j["disagreements"] = ds;
  j["disagreement_count"] = r.disagreements.size();
  if (with_time) j["wall_ms"] = r.wall_ms;
  return j;
}

}  // namespace facto
