#include "facto/numtheory.hpp"

#include <stdexcept>

namespace facto::nt {

std::size_t bit_length(const BigInt& N) {
  if (N.sign() <= 0) throw std::invalid_argument("bit_length requires N >= 1");
  return static_cast<std::size_t>(msb(N)) + 1;
}

BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r.sign() < 0) r += m;
  return r;
}

std::optional<BigInt> mod_inverse(const BigInt& a, const BigInt& m) {
  if (m == 1) return BigInt(0);
  // Extended Euclid on (a mod m, m).
  BigInt old_r = floor_mod(a, m), r = m;
  BigInt old_s = 1, s = 0;
  while (!r.is_zero()) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) return std::nullopt;
  return floor_mod(old_s, m);
}

CrtBasis::CrtBasis(std::vector<BigInt> moduli) : moduli_(std::move(moduli)), product_(1) {
  if (moduli_.empty()) throw std::invalid_argument("CRT basis needs at least one modulus");
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (moduli_[i] < 2) throw std::invalid_argument("CRT modulus must be >= 2");
    for (std::size_t j = 0; j < i; ++j)
      if (gcd(moduli_[i], moduli_[j]) != 1)
        throw std::invalid_argument("CRT moduli not pairwise coprime: " + moduli_[j].str() + ", " + moduli_[i].str());
    product_ *= moduli_[i];
  }
  idempotents_.reserve(moduli_.size());
  for (const auto& n : moduli_) {
    BigInt rest = product_ / n;
    idempotents_.push_back(rest * *mod_inverse(rest, n) % product_);
  }
  if (msb(product_) < 63) {
    small_ = true;
    small_product_ = product_.convert_to<std::uint64_t>();
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      small_moduli_.push_back(moduli_[i].convert_to<std::uint64_t>());
      small_idempotents_.push_back(idempotents_[i].convert_to<std::uint64_t>());
    }
  }
}

__extension__ typedef unsigned __int128 u128;

BigInt crt_combine(std::span<const BigInt> residues, const CrtBasis& basis) {
  if (residues.size() != basis.size()) throw std::invalid_argument("residue count does not match CRT basis");
  if (basis.small_) {
    u128 acc = 0;
    for (std::size_t i = 0; i < residues.size(); ++i) {
      const auto& r = residues[i];
      if (r.sign() < 0 || r >= basis.small_moduli_[i]) throw std::invalid_argument("residue out of range");
      acc += static_cast<u128>(r.convert_to<std::uint64_t>()) * basis.small_idempotents_[i];
      acc %= basis.small_product_;
    }
    return BigInt(static_cast<std::uint64_t>(acc));
  }
  BigInt acc = 0;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (residues[i].sign() < 0 || residues[i] >= basis.moduli()[i]) throw std::invalid_argument("residue out of range");
    acc += residues[i] * basis.idempotents_[i];
  }
  return acc % basis.product();
}

std::vector<BigInt> crt_split(const BigInt& x, const CrtBasis& basis) {
  std::vector<BigInt> out;
  out.reserve(basis.size());
  for (const auto& n : basis.moduli()) out.push_back(floor_mod(x, n));
  return out;
}

std::optional<std::pair<BigInt, BigInt>> solve_congruences(std::span<const std::pair<BigInt, BigInt>> system) {
  BigInt x = 0, mod = 1;
  for (const auto& [a, m] : system) {
    if (m < 1) throw std::invalid_argument("congruence modulus must be >= 1");
    // Merge x (mod `mod`) with a (mod m).
    BigInt g = gcd(mod, m);
    BigInt diff = floor_mod(a - x, m);
    if (diff % g != 0) return std::nullopt;
    BigInt m_g = m / g;
    BigInt t = 0;
    if (m_g > 1) t = floor_mod((diff / g) * *mod_inverse(mod / g, m_g), m_g);
    x += mod * t;
    mod *= m_g;
    x = floor_mod(x, mod);
  }
  return std::make_pair(x, mod);
}

bool is_prime(const BigInt& p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (BigInt d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

std::vector<GeneratedPrime> gen_primes(std::size_t count, const BigInt& lower_bound,
                                       const std::optional<BigInt>& excluded_divisors_of, std::uint64_t unary_cap) {
  std::vector<GeneratedPrime> out;
  BigInt candidate = lower_bound < 2 ? BigInt(2) : lower_bound;
  while (out.size() < count) {
    if (is_prime(candidate) && !(excluded_divisors_of && !excluded_divisors_of->is_zero() &&
                                 *excluded_divisors_of % candidate == 0)) {
      out.push_back({candidate, candidate <= unary_cap});
    }
    ++candidate;
  }
  return out;
}

std::vector<BigInt> prime_values(const std::vector<GeneratedPrime>& primes) {
  std::vector<BigInt> out;
  out.reserve(primes.size());
  for (const auto& p : primes) out.push_back(p.value);
  return out;
}

std::uint64_t digit_base_for(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("digit base needs k >= 1");
  std::uint64_t r = 1;
  while (r < k) r <<= 1;
  return r < 2 ? 2 : r;
}

DigitExpansion digits_in_base(const BigInt& N, std::uint64_t base) {
  if (N.sign() < 0) throw std::invalid_argument("digit expansion of a negative number");
  if (base < 2) throw std::invalid_argument("digit base must be >= 2");
  DigitExpansion out{base, {}};
  BigInt rest = N;
  while (!rest.is_zero()) {
    out.digits.push_back(static_cast<std::uint64_t>(rest % base));
    rest /= base;
  }
  if (out.digits.empty()) out.digits.push_back(0);
  return out;
}

DigitExpansion base_r_digits(const BigInt& N, std::uint64_t k) { return digits_in_base(N, digit_base_for(k)); }

BigInt from_digits(const DigitExpansion& d) {
  BigInt acc = 0;
  for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) acc = acc * d.base + *it;
  return acc;
}

}  // namespace facto::nt
