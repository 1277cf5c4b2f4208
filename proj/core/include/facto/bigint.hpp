#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace facto {

/// Arbitrary-precision signed integer used for every number that may grow
/// past machine width (group orders, CRT moduli, packed vectors, coins).
using BigInt = boost::multiprecision::cpp_int;

/// Parses an optionally signed decimal string. Throws std::invalid_argument.
BigInt parse_bigint(std::string_view text);

inline std::string to_string(const BigInt& x) { return x.str(); }

std::size_t hash_bigint(const BigInt& x) noexcept;

/// Narrowing conversion; throws std::out_of_range when x does not fit.
std::uint64_t to_u64(const BigInt& x);
std::int64_t to_i64(const BigInt& x);

}  // namespace facto
