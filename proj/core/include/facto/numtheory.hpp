#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "facto/bigint.hpp"

namespace facto::nt {

/// Number of bits of N >= 1. Throws std::invalid_argument for N <= 0.
std::size_t bit_length(const BigInt& N);

/// Mathematical modulus, result in [0, m-1] for m >= 1.
BigInt floor_mod(const BigInt& a, const BigInt& m);

/// Inverse of a modulo m; std::nullopt when gcd(a, m) != 1.
std::optional<BigInt> mod_inverse(const BigInt& a, const BigInt& m);

/// Pairwise coprime moduli n_1..n_l >= 2 together with their product.
/// Construction precomputes the CRT idempotents so that combining is a
/// weighted sum modulo N.
class CrtBasis {
 public:
  /// Throws std::invalid_argument on an empty list, a modulus < 2, or a
  /// non-coprime pair.
  explicit CrtBasis(std::vector<BigInt> moduli);

  const std::vector<BigInt>& moduli() const noexcept { return moduli_; }
  const BigInt& product() const noexcept { return product_; }
  std::size_t size() const noexcept { return moduli_.size(); }

 private:
  std::vector<BigInt> moduli_;
  BigInt product_;
  std::vector<BigInt> idempotents_;  // e_i = 1 mod n_i, 0 mod n_j
  // Fast path used when N < 2^63.
  bool small_ = false;
  std::vector<std::uint64_t> small_moduli_;
  std::vector<std::uint64_t> small_idempotents_;
  std::uint64_t small_product_ = 0;

  friend BigInt crt_combine(std::span<const BigInt>, const CrtBasis&);
};

/// The unique x in [0, N-1] with x = residues[i] (mod n_i).
/// Throws std::invalid_argument on a length mismatch or an out-of-range residue.
BigInt crt_combine(std::span<const BigInt> residues, const CrtBasis& basis);

/// Inverse of crt_combine: the residues of x modulo each n_i.
std::vector<BigInt> crt_split(const BigInt& x, const CrtBasis& basis);

/// Solves x = a_i (mod m_i) for arbitrary moduli m_i >= 1. Returns
/// (x, lcm) with x in [0, lcm-1], or std::nullopt if inconsistent.
std::optional<std::pair<BigInt, BigInt>> solve_congruences(std::span<const std::pair<BigInt, BigInt>> system);

/// Deterministic trial division.
bool is_prime(const BigInt& p);

struct GeneratedPrime {
  BigInt value;
  bool unary_encodable = false;  ///< value <= the unary cap passed to gen_primes

  friend bool operator==(const GeneratedPrime&, const GeneratedPrime&) = default;
};

inline constexpr std::uint64_t kDefaultUnaryCap = 1u << 16;

/// The first `count` primes p >= lower_bound that do not divide
/// `excluded_divisors_of` (when given), in increasing order.
std::vector<GeneratedPrime> gen_primes(std::size_t count, const BigInt& lower_bound,
                                       const std::optional<BigInt>& excluded_divisors_of = std::nullopt,
                                       std::uint64_t unary_cap = kDefaultUnaryCap);

/// Convenience: values only.
std::vector<BigInt> prime_values(const std::vector<GeneratedPrime>& primes);

/// Least-significant-first digits in base `base`.
struct DigitExpansion {
  std::uint64_t base = 2;
  std::vector<std::uint64_t> digits;

  friend bool operator==(const DigitExpansion&, const DigitExpansion&) = default;
};

/// r = 2^ceil(log2 k), raised to 2 when k = 1. Requires k >= 1.
std::uint64_t digit_base_for(std::uint64_t k);

/// Base-r expansion of N >= 0 with r = digit_base_for(k).
DigitExpansion base_r_digits(const BigInt& N, std::uint64_t k);

/// Base-`base` expansion of N >= 0 for an arbitrary power-of-two or other base >= 2.
DigitExpansion digits_in_base(const BigInt& N, std::uint64_t base);

BigInt from_digits(const DigitExpansion& d);

}  // namespace facto::nt
