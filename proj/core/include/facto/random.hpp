#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "facto/bigint.hpp"
#include "facto/instance.hpp"
#include "facto/perm.hpp"

namespace facto {

/// Seeded generator; every random object in the library is drawn through it
/// so that a seed fully determines the result.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi], both inclusive.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  std::int64_t uniform_signed(std::int64_t lo, std::int64_t hi);
  BigInt uniform_big(const BigInt& lo, const BigInt& hi);
  bool chance(double p);
  Permutation permutation(std::size_t degree);
  Transformation transformation(std::size_t degree);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform(0, i - 1)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct RandomCaps {
  std::size_t max_n = 4;        ///< degree of permutation/transformation monoids, vector dimension
  std::size_t max_m = 3;        ///< list length
  std::uint64_t max_k = 3;
  BigInt max_modulus = 60;
  BigInt max_value = 30;        ///< absolute value bound for integers, vector entries and coins
};

struct RandomRequest {
  MonoidClass monoid = MonoidClass::Integers;
  ProblemKind kind = ProblemKind::SSS;
  bool exact = true;
  bool distinct = false;
  /// Probability that the target is planted as an admissible product.
  double bias = 0.5;
  std::optional<std::uint64_t> k;  ///< fixed parameter instead of a draw from [0, max_k]
  std::optional<std::size_t> m;    ///< fixed list length
};

MonoidDesc random_monoid(Rng& rng, MonoidClass cls, const RandomCaps& caps);
/// A random member of m; for permutation groups a random product of generator powers.
Element random_element(Rng& rng, const MonoidDesc& m, const RandomCaps& caps);
Instance random_instance(std::uint64_t seed, const RandomRequest& req, const RandomCaps& caps);
Instance random_instance(Rng& rng, const RandomRequest& req, const RandomCaps& caps);

struct ChangeRequest {
  ChangeFlavor flavor = ChangeFlavor::Unbounded;
  bool approx = false;
  double bias = 0.5;
  std::uint64_t max_objective = 3;  ///< a, b drawn from [0, max_objective]
  std::optional<BigInt> a;          ///< fixed objective coefficients
  std::optional<BigInt> b;
  std::optional<std::uint64_t> k;
};

ChangeInstance random_change_instance(std::uint64_t seed, const ChangeRequest& req, const RandomCaps& caps);
ChangeInstance random_change_instance(Rng& rng, const ChangeRequest& req, const RandomCaps& caps);

}  // namespace facto
