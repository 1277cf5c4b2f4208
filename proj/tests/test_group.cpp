#include <gtest/gtest.h>

#include "facto/group.hpp"
#include "facto/random.hpp"
#include "oracles.hpp"

using namespace facto;

namespace {

Permutation C(std::size_t n, std::vector<std::vector<Point>> cycles) { return Permutation::from_cycles(n, cycles); }

std::vector<std::uint32_t> img(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

BigInt lcm(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

}  // namespace

TEST(Group, PairExamples) {
  auto g = pair_cyclic_generator(C(5, {{1, 2}}), C(5, {{3, 4, 5}}));
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(*g, C(5, {{1, 2}, {3, 4, 5}}));
  EXPECT_EQ(order(*g), 6);
  EXPECT_FALSE(pair_cyclic_generator(C(3, {{1, 2}}), C(3, {{1, 3}})).has_value());
  auto id = pair_cyclic_generator(Permutation::identity(4), Permutation::identity(4));
  ASSERT_TRUE(id.has_value());
  EXPECT_TRUE(id->is_identity());
  EXPECT_THROW(pair_cyclic_generator(Permutation::identity(3), Permutation::identity(4)), std::invalid_argument);
}

TEST(Group, ListExamples) {
  std::vector<Permutation> l{C(5, {{1, 2}}), C(5, {{3, 4, 5}}), C(5, {{1, 2}, {3, 4, 5}})};
  auto g = list_cyclic_generator(l);
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(order(*g), 6);
  std::vector<Permutation> one{Permutation::identity(3)};
  EXPECT_TRUE(list_cyclic_generator(one)->is_identity());
  std::vector<Permutation> s3{C(3, {{1, 2}}), C(3, {{2, 3}}), C(3, {{1, 3}})};
  EXPECT_FALSE(list_cyclic_generator(s3).has_value());
  std::vector<Permutation> none;
  EXPECT_THROW(list_cyclic_generator(none), std::invalid_argument);
}

TEST(Group, PairMatchesBruteForceDegree4) {
  // Every ordered pair in S_4 (576 pairs).
  std::vector<Permutation> all;
  std::vector<Point> v{1, 2, 3, 4};
  do all.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  for (const auto& a : all)
    for (const auto& b : all) {
      auto group = oracle::generated({img(a), img(b)}, 4);
      auto g = pair_cyclic_generator(a, b);
      ASSERT_EQ(g.has_value(), oracle::is_cyclic(group)) << to_cycle_string(a) << " " << to_cycle_string(b);
      if (g) {
        EXPECT_EQ(order(*g), lcm(order(a), order(b)));
        EXPECT_EQ(order(*g), BigInt(group.size()));
        EXPECT_TRUE(cyclic_dlog(a, *g).has_value());
        EXPECT_TRUE(cyclic_dlog(b, *g).has_value());
      }
    }
}

TEST(Group, ListMatchesBruteForceRandom) {
  Rng rng(41);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + t % 6;
    std::vector<Permutation> l;
    std::vector<std::vector<std::uint32_t>> raw;
    // Bias toward commuting lists: powers of one element and disjoint cycles.
    auto base = rng.permutation(n);
    std::size_t m = rng.uniform(1, 4);
    for (std::size_t i = 0; i < m; ++i) {
      auto p = rng.chance(0.7) ? power(base, BigInt(rng.uniform(0, 6))) : rng.permutation(n);
      l.push_back(p);
      raw.push_back(img(p));
    }
    auto group = oracle::generated(raw, n);
    auto g = list_cyclic_generator(l);
    ASSERT_EQ(g.has_value(), oracle::is_cyclic(group));
    if (g) {
      EXPECT_EQ(order(*g), BigInt(group.size()));
      for (const auto& p : l) EXPECT_TRUE(cyclic_dlog(p, *g).has_value());
    }
  }
}

TEST(Group, DlogExamples) {
  auto s = C(3, {{1, 2, 3}});
  EXPECT_EQ(*cyclic_dlog(C(3, {{1, 3, 2}}), s), 2);
  EXPECT_EQ(*cyclic_dlog(Permutation::identity(3), s), 0);
  EXPECT_FALSE(cyclic_dlog(C(3, {{1, 2}}), s).has_value());
  // pi moving a point sigma fixes.
  EXPECT_FALSE(cyclic_dlog(C(4, {{1, 4}}), C(4, {{1, 2, 3}})).has_value());
}

TEST(Group, DlogOfPowers) {
  Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    auto s = rng.permutation(1 + t % 8);
    BigInt ord = order(s);
    for (unsigned e = 0; e <= 50; ++e) EXPECT_EQ(*cyclic_dlog(power(s, BigInt(e)), s), BigInt(e) % ord);
  }
}

TEST(Group, DlogNonMembersMatchBruteForce) {
  Rng rng(47);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + t % 6;
    auto s = rng.permutation(n), p = rng.permutation(n);
    auto cyc = oracle::generated({img(s)}, n);
    auto d = cyclic_dlog(p, s);
    EXPECT_EQ(d.has_value(), cyc.count(img(p)) == 1);
    if (d) EXPECT_EQ(power(s, *d), p);
  }
}

TEST(Group, CyclicIso) {
  auto s = C(5, {{1, 2}, {3, 4, 5}});
  CyclicIso iso(s);
  EXPECT_EQ(iso.modulus(), 6);
  EXPECT_EQ(*iso.log(power(s, BigInt(4))), 4);
  EXPECT_EQ(*iso.log(Permutation::identity(5)), 0);
  EXPECT_EQ(*iso.log(s), 1);
  EXPECT_EQ(iso.exp(5), power(s, BigInt(5)));
  // Homomorphism: log(xy) = log x + log y mod m.
  for (unsigned a = 0; a < 6; ++a)
    for (unsigned b = 0; b < 6; ++b)
      EXPECT_EQ(*iso.log(compose(iso.exp(a), iso.exp(b))), (a + b) % 6);
}

TEST(Group, OrderFactorization) {
  auto f = order_factorization(C(5, {{1, 2}, {3, 4, 5}}));
  EXPECT_EQ(f.value, 6);
  EXPECT_EQ(f.factors, (std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}}));
  auto id = order_factorization(Permutation::identity(3));
  EXPECT_EQ(id.value, 1);
  EXPECT_TRUE(id.factors.empty());
  auto e = order_factorization(Permutation::interval_cycle(8, 1, 8));
  EXPECT_EQ(e.factors, (std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}}));
  Rng rng(53);
  for (int t = 0; t < 200; ++t) {
    auto p = rng.permutation(1 + t % 12);
    auto of = order_factorization(p);
    BigInt prod = 1;
    std::uint32_t last = 0;
    for (auto [q, a] : of.factors) {
      EXPECT_GT(q, last);
      EXPECT_LE(q, p.degree());
      last = q;
      for (std::uint32_t i = 0; i < a; ++i) prod *= q;
    }
    EXPECT_EQ(prod, of.value);
    EXPECT_EQ(of.value, order(p));
  }
}
