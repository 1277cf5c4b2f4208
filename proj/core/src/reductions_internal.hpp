#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "facto/reductions.hpp"

namespace facto::detail {

[[noreturn]] void out_of_domain(std::string_view rule, const std::string& what);

/// Validates `out` and wraps it.
ReductionOutput finish(std::string_view rule, AnyInstance out, std::uint64_t h, std::vector<std::string> notes,
                       std::vector<std::size_t> source_index);

std::string join(const std::vector<BigInt>& xs);

/// Empty list and a non-identity target over a small monoid of class `cls`;
/// kind, exactness and k are copied from `shape`.
Instance negative_constant(const Instance& shape, MonoidClass cls);

}  // namespace facto::detail
