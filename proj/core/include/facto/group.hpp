#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "facto/bigint.hpp"
#include "facto/perm.hpp"

namespace facto {

/// ord(f) as a product of prime powers; every prime is at most the degree.
struct OrderFactorization {
  BigInt value;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;  // (prime, exponent), primes increasing

  friend bool operator==(const OrderFactorization&, const OrderFactorization&) = default;
};

OrderFactorization order_factorization(const Permutation& f);

/// If <alpha, beta> is cyclic, a generator gamma = alpha^r beta^s of it with
/// ord(gamma) = lcm(ord alpha, ord beta); std::nullopt otherwise.
/// Throws std::invalid_argument on a degree mismatch.
std::optional<Permutation> pair_cyclic_generator(const Permutation& alpha, const Permutation& beta);

/// Folds pair_cyclic_generator over the list. Throws on an empty list.
std::optional<Permutation> list_cyclic_generator(std::span<const Permutation> perms);

/// Smallest e in [0, ord(sigma)-1] with sigma^e = pi, or std::nullopt if pi
/// is not in <sigma>. Solves one congruence per cycle of sigma and merges them.
std::optional<BigInt> cyclic_dlog(const Permutation& pi, const Permutation& sigma);

/// The isomorphism <sigma> -> Z_m, m = ord(sigma).
class CyclicIso {
 public:
  explicit CyclicIso(Permutation generator);

  const Permutation& generator() const noexcept { return generator_; }
  const BigInt& modulus() const noexcept { return order_; }
  /// std::nullopt when pi is not a member of <sigma>.
  std::optional<BigInt> log(const Permutation& pi) const { return cyclic_dlog(pi, generator_); }
  Permutation exp(const BigInt& e) const { return power(generator_, e); }

 private:
  Permutation generator_;
  BigInt order_;
};

inline CyclicIso cyclic_iso_to_Zm(const Permutation& sigma) { return CyclicIso(sigma); }

}  // namespace facto
