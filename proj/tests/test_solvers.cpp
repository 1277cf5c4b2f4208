#include <gtest/gtest.h>

#include "facto/errors.hpp"
#include "facto/random.hpp"
#include "facto/solvers.hpp"
#include "oracles.hpp"

using namespace facto;

namespace {

Instance make(const char* text) { return std::get<Instance>(parse_instance(text)); }
ChangeInstance change(const char* text) { return std::get<ChangeInstance>(parse_instance(text)); }

RandomCaps small_caps() {
  RandomCaps c;
  c.max_n = 4;
  c.max_m = 4;
  c.max_k = 4;
  c.max_modulus = 30;
  c.max_value = 12;
  return c;
}

Instance random_of(Rng& rng, MonoidClass cls, ProblemKind kind, bool exact, bool distinct = false) {
  RandomRequest req;
  req.monoid = cls;
  req.kind = kind;
  req.exact = exact;
  req.distinct = distinct;
  return random_instance(rng, req, small_caps());
}

}  // namespace

TEST(Solvers, FactorizationExamples) {
  auto yes = make(
      R"({"problem":"F","monoid":{"kind":"symmetric","n":3},"target":[3,1,2],"generators":[[2,1,3],[1,3,2]],"k":2})");
  auto v = solve_factorization(yes);
  EXPECT_TRUE(v.answer);
  EXPECT_TRUE(check_witness(yes, v));
  auto empty = make(R"({"problem":"F","monoid":{"kind":"symmetric","n":3},"target":[1,2,3],"generators":[],"k":0})");
  EXPECT_TRUE(solve_factorization(empty).answer);
  for (int k = 0; k < 7; ++k) {
    auto no = make(R"({"problem":"F","monoid":{"kind":"symmetric","n":3},"target":[2,1,3],"generators":[[2,3,1]],"k":0})");
    no.k = k;
    no.exact = k % 2 == 0;
    EXPECT_FALSE(solve_factorization(no).answer);
  }
}

TEST(Solvers, KnapsackExamples) {
  auto a = make(R"({"problem":"KS","monoid":{"kind":"finite_cyclic","n":"6"},"target":"0","generators":["2","3"],"k":3})");
  auto v = solve_knapsack(a);
  EXPECT_TRUE(v.answer);
  EXPECT_TRUE(check_witness(a, v));
  EXPECT_TRUE(solve(a).answer);
  auto b = make(R"({"problem":"KS","monoid":{"kind":"integers"},"target":"0","generators":["4"],"k":0})");
  EXPECT_TRUE(solve_knapsack(b).answer);
  for (int k = 0; k < 6; ++k) {
    auto c = make(R"({"problem":"KS","monoid":{"kind":"naturals"},"target":"3","generators":["2"],"k":0})");
    c.k = k;
    EXPECT_FALSE(solve_knapsack(c).answer);
    EXPECT_FALSE(solve(c).answer);
  }
}

TEST(Solvers, SubsetSumExamples) {
  auto a = make(R"({"problem":"SSS","monoid":{"kind":"integers"},"target":"5","generators":["1","2","3"],"k":2})");
  auto v = solve_subsetsum(a);
  EXPECT_TRUE(v.answer);
  EXPECT_EQ(v.witness, (std::vector<std::uint64_t>{1, 2}));
  auto b = make(R"({"problem":"SSS","monoid":{"kind":"integers"},"target":"0","generators":["1"],"k":0})");
  EXPECT_TRUE(solve_subsetsum(b).answer);
  auto c = make(
      R"({"problem":"SSS","monoid":{"kind":"symmetric","n":3},"target":[3,1,2],"generators":[[2,1,3],[1,3,2]],"k":2})");
  EXPECT_TRUE(solve_subsetsum(c).answer);
  EXPECT_TRUE(solve(c).answer);
  // Order matters: the reversed list multiplies to the other 3-cycle.
  std::swap(c.generators[0], c.generators[1]);
  EXPECT_FALSE(solve_subsetsum(c).answer);
  EXPECT_FALSE(solve(c).answer);
}

TEST(Solvers, NumericDpExamples) {
  auto a = make(R"({"problem":"SSS","monoid":{"kind":"finite_cyclic","n":"6"},"target":"5","generators":["2","3"],"k":2})");
  EXPECT_TRUE(solve_numeric_dp(a).answer);
  auto z = make(R"({"problem":"SSS","monoid":{"kind":"integers"},"target":"0","generators":["3"],"k":0})");
  EXPECT_TRUE(solve_numeric_dp(z).answer);
  auto s = make(R"({"problem":"SSS","monoid":{"kind":"symmetric","n":3},"target":[1,2,3],"generators":[],"k":0})");
  EXPECT_THROW(solve_numeric_dp(s), DomainError);
}

TEST(Solvers, NumericDpMatchesEnumerationOnIntegers) {
  Rng rng(5);
  RandomCaps caps = small_caps();
  caps.max_m = 12;
  caps.max_k = 5;
  caps.max_value = 20;
  for (int t = 0; t < 200; ++t) {
    RandomRequest req;
    req.monoid = MonoidClass::Integers;
    req.kind = ProblemKind::SSS;
    req.exact = t % 2 == 0;
    auto inst = random_instance(rng, req, caps);
    auto dp = solve_numeric_dp(inst);
    EXPECT_EQ(dp.answer, solve_subsetsum(inst).answer);
    EXPECT_EQ(dp.answer, oracle::subset_sum(inst));
    EXPECT_TRUE(check_witness(inst, dp));
  }
}

TEST(Solvers, AllSolversMatchBruteForce) {
  Rng rng(13);
  for (int t = 0; t < 1500; ++t) {
    auto cls = kAllMonoidClasses[t % 10];
    auto kind = static_cast<ProblemKind>((t / 10) % 3);
    bool exact = (t / 30) % 2 == 0;
    bool distinct = kind == ProblemKind::SSS && (t / 60) % 2 == 0;
    auto inst = random_of(rng, cls, kind, exact, distinct);
    bool truth = oracle::decide(inst);
    auto v = solve(inst);
    ASSERT_EQ(v.answer, truth) << serialize(inst);
    EXPECT_TRUE(check_witness(inst, v)) << serialize(inst);
    switch (kind) {
      case ProblemKind::F: {
        auto w = solve_factorization(inst);
        EXPECT_EQ(w.answer, truth);
        EXPECT_TRUE(check_witness(inst, w));
        break;
      }
      case ProblemKind::KS: {
        auto w = solve_knapsack(inst);
        EXPECT_EQ(w.answer, truth);
        EXPECT_TRUE(check_witness(inst, w));
        EXPECT_EQ(solve_prefix_dp(inst).answer, truth);
        break;
      }
      case ProblemKind::SSS: {
        auto w = solve_subsetsum(inst);
        EXPECT_EQ(w.answer, truth);
        EXPECT_TRUE(check_witness(inst, w));
        auto p = solve_prefix_dp(inst);
        EXPECT_EQ(p.answer, truth);
        EXPECT_TRUE(check_witness(inst, p));
        break;
      }
    }
    if (kind != ProblemKind::F && is_commutative(inst.monoid)) EXPECT_EQ(solve_numeric_dp(inst).answer, truth);
  }
}

TEST(Solvers, WitnessTamperingIsDetected) {
  auto a = make(R"({"problem":"SSS","monoid":{"kind":"integers"},"target":"5","generators":["1","2","3"],"k":2})");
  auto v = solve(a);
  ASSERT_TRUE(v.answer);
  auto bad = v;
  bad.witness = {0, 1};
  EXPECT_FALSE(check_witness(a, bad));
  bad.witness = {1, 1};
  EXPECT_FALSE(check_witness(a, bad));
  bad.witness = {0, 1, 2};
  EXPECT_FALSE(check_witness(a, bad));
}

TEST(Solvers, Monotonicity) {
  Rng rng(17);
  for (int t = 0; t < 400; ++t) {
    auto inst = random_of(rng, kAllMonoidClasses[t % 10], static_cast<ProblemKind>(t % 3), true,
                          t % 3 == 2 && t % 2 == 0);
    bool exact = solve(inst).answer;
    auto le = inst;
    le.exact = false;
    if (exact) EXPECT_TRUE(solve(le).answer);
    if (inst.distinct && exact) {
      auto nd = inst;
      nd.distinct = false;
      EXPECT_TRUE(solve(nd).answer);
    }
  }
}

TEST(Solvers, CommutativeCollapse) {
  Rng rng(19);
  const MonoidClass comm[] = {MonoidClass::Integers,     MonoidClass::Naturals,      MonoidClass::IntVectors,
                              MonoidClass::NatVectors,   MonoidClass::FiniteCyclic, MonoidClass::FiniteAbelian,
                              MonoidClass::CyclicPerm,   MonoidClass::AbelianPerm};
  for (int t = 0; t < 400; ++t) {
    auto inst = random_of(rng, comm[t % 8], ProblemKind::F, t % 2 == 0);
    auto ks = inst;
    ks.kind = ProblemKind::KS;
    EXPECT_EQ(solve_factorization(inst).answer, solve_knapsack(ks).answer) << serialize(inst);
  }
}

TEST(Solvers, DigitCheckExamples) {
  auto a = make(
      R"({"problem":"SSS","monoid":{"kind":"finite_abelian","moduli":["2","3"]},"target":["0","0"],"generators":[["1","1"],["1","2"]],"k":2})");
  auto v = solve_fabg_digitcheck(a);
  EXPECT_TRUE(v.answer);
  EXPECT_TRUE(check_witness(a, v));
  auto z = make(
      R"({"problem":"SSS","monoid":{"kind":"finite_abelian","moduli":["4"]},"target":["0"],"generators":[["1"]],"k":0})");
  EXPECT_TRUE(solve_fabg_digitcheck(z).answer);
}

TEST(Solvers, DigitCheckMatchesDp) {
  Rng rng(23);
  RandomCaps caps;
  caps.max_n = 3;
  caps.max_m = 8;
  caps.max_k = 4;
  caps.max_modulus = 9;
  for (int t = 0; t < 200; ++t) {
    RandomRequest req;
    req.monoid = MonoidClass::FiniteAbelian;
    req.kind = ProblemKind::SSS;
    auto inst = random_instance(rng, req, caps);
    auto dc = solve_fabg_digitcheck(inst);
    EXPECT_EQ(dc.answer, solve_numeric_dp(inst).answer) << serialize(inst);
    EXPECT_TRUE(check_witness(inst, dc));
  }
}

TEST(Solvers, ChangeExamples) {
  auto a = change(R"({"problem":"CHANGE","flavor":"unbounded","target":"17","generators":["1","5","10"],"k":5})");
  auto v = solve_change(a);
  EXPECT_TRUE(v.answer);
  EXPECT_TRUE(check_witness(a, v));
  a.k = 3;
  EXPECT_FALSE(solve_change(a).answer);
  auto b = change(
      R"({"problem":"CHANGE","flavor":"bounded","approx":true,"objective":["0","0"],"target":"7","generators":["3"],"bounds":["2"],"k":5})");
  EXPECT_FALSE(solve_change(b).answer);
  auto c = change(
      R"({"problem":"CHANGE","flavor":"unbounded","approx":true,"objective":["0","2"],"target":"8","generators":["5","3"],"k":4})");
  EXPECT_TRUE(solve_change(c).answer);
  c.c = 9;
  EXPECT_TRUE(solve_change(c).answer);  // 5 + 5 overshoots, objective 2*2 = 4
  c.c = 11;
  EXPECT_FALSE(solve_change(c).answer);
}

TEST(Solvers, ChangeMatchesBruteForce) {
  Rng rng(29);
  RandomCaps caps;
  caps.max_m = 4;
  caps.max_k = 5;
  caps.max_value = 15;
  for (int t = 0; t < 900; ++t) {
    ChangeRequest req;
    req.flavor = static_cast<ChangeFlavor>(t % 3);
    req.approx = (t / 3) % 2 == 1;
    auto inst = random_change_instance(rng, req, caps);
    bool truth = oracle::change(inst);
    SolveOptions greedy, plain;
    plain.change_greedy = false;
    auto v = solve_change(inst, greedy);
    EXPECT_EQ(v.answer, truth) << serialize(inst);
    EXPECT_EQ(solve_change(inst, plain).answer, truth) << serialize(inst);
    EXPECT_TRUE(check_witness(inst, v));
  }
}

TEST(Solvers, StateCapRaises) {
  RandomRequest req;
  req.monoid = MonoidClass::Symmetric;
  req.kind = ProblemKind::F;
  req.m = 4;
  req.k = 5;
  RandomCaps caps;
  caps.max_n = 6;
  auto inst = random_instance(3, req, caps);
  SolveOptions o;
  o.state_cap = 3;
  EXPECT_THROW(solve(inst, o), ResourceLimit);
}
