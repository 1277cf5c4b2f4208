#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "facto/bigint.hpp"

namespace facto {

/// A point of [1,n]. Points are 1-based everywhere, including serialization.
using Point = std::uint32_t;

class Permutation;

/// An arbitrary self-map of [1,n] (an element of the full transformation monoid T_n).
class Transformation {
 public:
  /// Throws std::invalid_argument unless images is nonempty and within [1,n].
  explicit Transformation(std::vector<Point> images);
  Transformation(const Permutation& p);  // NOLINT: every permutation is a transformation

  static Transformation identity(std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point a) const { return images_[a - 1]; }
  std::span<const Point> images() const noexcept { return images_; }
  bool is_bijective() const;

  friend bool operator==(const Transformation&, const Transformation&) = default;
  friend auto operator<=>(const Transformation&, const Transformation&) = default;

 private:
  std::vector<Point> images_;
};

/// A bijection of [1,n].
class Permutation {
 public:
  /// Throws std::invalid_argument unless images is a bijection on [1,n], n >= 1.
  explicit Permutation(std::vector<Point> images);
  /// Throws std::invalid_argument when t is not bijective.
  explicit Permutation(const Transformation& t);

  static Permutation identity(std::size_t degree);
  /// The cycle (first first+1 ... last) on [1,degree]; identity when first == last.
  static Permutation interval_cycle(std::size_t degree, Point first, Point last);
  /// Builds a permutation from disjoint cycles written as point lists.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point a) const { return images_[a - 1]; }
  std::span<const Point> images() const noexcept { return images_; }
  bool is_identity() const noexcept;
  Permutation inverse() const;
  /// The same action on [1,degree], extended by fixed points up to new_degree.
  Permutation extended(std::size_t new_degree) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<Point> images, Unchecked) : images_(std::move(images)) {}

  std::vector<Point> images_;

  friend Permutation compose(const Permutation&, const Permutation&);
};

/// Disjoint cycles in canonical form: each cycle starts at its minimum point,
/// cycles are sorted by that minimum, fixed points are omitted.
struct CycleDecomposition {
  std::vector<std::vector<Point>> cycles;

  friend bool operator==(const CycleDecomposition&, const CycleDecomposition&) = default;
};

/// Left-to-right composition: compose(f, g)(a) = g(f(a)). Throws on degree mismatch.
Permutation compose(const Permutation& f, const Permutation& g);
Transformation compose(const Transformation& f, const Transformation& g);

/// f^e. The exponent is reduced modulo ord(f) before repeated squaring.
Permutation power(const Permutation& f, const BigInt& e);
Transformation power(const Transformation& f, std::uint64_t e);

CycleDecomposition cycle_decomposition(const Permutation& f);
Permutation from_cycle_decomposition(std::size_t degree, const CycleDecomposition& c);

/// lcm of the cycle lengths.
BigInt order(const Permutation& f);

/// Places the factors on consecutive disjoint intervals of points.
Permutation direct_sum(std::span<const Permutation> factors);

/// Cycle notation, "()" for the identity.
std::string to_cycle_string(const Permutation& f);

std::size_t hash_points(std::span<const Point> images) noexcept;

}  // namespace facto
