#include "facto/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace facto {

BigInt parse_bigint(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  return BigInt(std::string(text.front() == '+' ? text.substr(1) : text));
}

std::size_t hash_bigint(const BigInt& x) noexcept {
  std::size_t h = x.sign() < 0 ? 0x9e3779b97f4a7c15ull : 0;
  const auto& backend = x.backend();
  const auto* limbs = backend.limbs();
  for (unsigned i = 0; i < backend.size(); ++i) {
    h ^= std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(limbs[i])) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::uint64_t to_u64(const BigInt& x) {
  if (x.is_zero()) return 0;
  if (x.sign() < 0 || msb(x) >= 64) throw std::out_of_range("value does not fit in 64 bits: " + x.str());
  return x.convert_to<std::uint64_t>();
}

std::int64_t to_i64(const BigInt& x) {
  if (x.is_zero()) return 0;
  if (msb(abs(x)) >= 63) throw std::out_of_range("value does not fit in 63 bits: " + x.str());
  return x.convert_to<std::int64_t>();
}

}  // namespace facto
