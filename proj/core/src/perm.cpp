#include "facto/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace facto {

namespace {

void check_range(const std::vector<Point>& images) {
  if (images.empty()) throw std::invalid_argument("degree must be at least 1");
  const auto n = images.size();
  for (Point p : images) {
    if (p < 1 || p > n) throw std::invalid_argument("image outside [1,n]");
  }
}

bool bijective(std::span<const Point> images) {
  std::vector<bool> seen(images.size() + 1, false);
  for (Point p : images) {
    if (seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

void check_degrees(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("degree mismatch");
}

}  // namespace

std::size_t hash_points(std::span<const Point> images) noexcept {
  std::size_t h = images.size();
  for (Point p : images) h = h * 0x100000001b3ull ^ (p + 0x9e3779b9u + (h >> 17));
  return h;
}

// --- Transformation -------------------------------------------------------

Transformation::Transformation(std::vector<Point> images) : images_(std::move(images)) { check_range(images_); }

Transformation::Transformation(const Permutation& p) : images_(p.images().begin(), p.images().end()) {}

Transformation Transformation::identity(std::size_t degree) {
  std::vector<Point> v(degree);
  std::iota(v.begin(), v.end(), Point{1});
  return Transformation(std::move(v));
}

bool Transformation::is_bijective() const { return bijective(images_); }

Transformation compose(const Transformation& f, const Transformation& g) {
  check_degrees(f.degree(), g.degree());
  std::vector<Point> out(f.degree());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = g(f.images()[a]);
  return Transformation(std::move(out));
}

Transformation power(const Transformation& f, std::uint64_t e) {
  Transformation result = Transformation::identity(f.degree());
  Transformation base = f;
  while (e > 0) {
    if (e & 1) result = compose(result, base);
    e >>= 1;
    if (e > 0) base = compose(base, base);
  }
  return result;
}

// --- Permutation ----------------------------------------------------------

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  check_range(images_);
  if (!bijective(images_)) throw std::invalid_argument("images are not a bijection");
}

Permutation::Permutation(const Transformation& t) : Permutation(std::vector<Point>(t.images().begin(), t.images().end())) {}

Permutation Permutation::identity(std::size_t degree) {
  if (degree == 0) throw std::invalid_argument("degree must be at least 1");
  std::vector<Point> v(degree);
  std::iota(v.begin(), v.end(), Point{1});
  return Permutation(std::move(v), Unchecked{});
}

Permutation Permutation::interval_cycle(std::size_t degree, Point first, Point last) {
  if (first < 1 || last > degree || first > last) throw std::invalid_argument("cycle interval outside [1,n]");
  auto id = identity(degree);
  std::vector<Point> v(id.images_.begin(), id.images_.end());
  for (Point a = first; a < last; ++a) v[a - 1] = a + 1;
  v[last - 1] = first;
  return Permutation(std::move(v), Unchecked{});
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  auto id = identity(degree);
  std::vector<Point> v(id.images_.begin(), id.images_.end());
  std::vector<bool> used(degree + 1, false);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      Point a = c[i];
      if (a < 1 || a > degree) throw std::invalid_argument("cycle point outside [1,n]");
      if (used[a]) throw std::invalid_argument("cycles are not disjoint");
      used[a] = true;
      v[a - 1] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(v), Unchecked{});
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i + 1) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> v(images_.size());
  for (std::size_t a = 0; a < images_.size(); ++a) v[images_[a] - 1] = static_cast<Point>(a + 1);
  return Permutation(std::move(v), Unchecked{});
}

Permutation Permutation::extended(std::size_t new_degree) const {
  if (new_degree < degree()) throw std::invalid_argument("cannot shrink a permutation");
  std::vector<Point> v(images_);
  for (std::size_t a = degree() + 1; a <= new_degree; ++a) v.push_back(static_cast<Point>(a));
  return Permutation(std::move(v), Unchecked{});
}

Permutation compose(const Permutation& f, const Permutation& g) {
  check_degrees(f.degree(), g.degree());
  std::vector<Point> out(f.degree());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = g.images_[f.images_[a] - 1];
  return Permutation(std::move(out), Permutation::Unchecked{});
}

CycleDecomposition cycle_decomposition(const Permutation& f) {
  CycleDecomposition out;
  std::vector<bool> seen(f.degree() + 1, false);
  for (Point a = 1; a <= f.degree(); ++a) {
    if (seen[a] || f(a) == a) continue;
    std::vector<Point> cycle;
    for (Point b = a; !seen[b]; b = f(b)) {
      seen[b] = true;
      cycle.push_back(b);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

Permutation from_cycle_decomposition(std::size_t degree, const CycleDecomposition& c) {
  return Permutation::from_cycles(degree, c.cycles);
}

BigInt order(const Permutation& f) {
  BigInt result = 1;
  for (const auto& c : cycle_decomposition(f).cycles) {
    BigInt len = c.size();
    result = result / gcd(result, len) * len;
  }
  return result;
}

Permutation power(const Permutation& f, const BigInt& e) {
  if (e.sign() < 0) throw std::invalid_argument("negative exponent");
  BigInt reduced = e % order(f);
  Permutation result = Permutation::identity(f.degree());
  Permutation base = f;
  while (!reduced.is_zero()) {
    if (bit_test(reduced, 0)) result = compose(result, base);
    reduced >>= 1;
    if (!reduced.is_zero()) base = compose(base, base);
  }
  return result;
}

Permutation direct_sum(std::span<const Permutation> factors) {
  std::vector<Point> v;
  Point shift = 0;
  for (const auto& f : factors) {
    for (Point p : f.images()) v.push_back(p + shift);
    shift += static_cast<Point>(f.degree());
  }
  return Permutation(std::move(v));
}

std::string to_cycle_string(const Permutation& f) {
  auto dec = cycle_decomposition(f);
  if (dec.cycles.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : dec.cycles) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << ')';
  }
  return os.str();
}

}  // namespace facto
