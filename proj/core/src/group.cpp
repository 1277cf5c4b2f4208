#include "facto/group.hpp"

#include <map>
#include <stdexcept>

#include "facto/numtheory.hpp"

namespace facto {

OrderFactorization order_factorization(const Permutation& f) {
  OrderFactorization out{order(f), {}};
  BigInt rest = out.value;
  for (std::uint32_t p = 2; p <= f.degree() && rest > 1; ++p) {
    if (!nt::is_prime(p)) continue;
    std::uint32_t e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e > 0) out.factors.emplace_back(p, e);
  }
  if (rest != 1) throw std::logic_error("order has a prime factor above the degree");
  return out;
}

std::optional<Permutation> pair_cyclic_generator(const Permutation& alpha, const Permutation& beta) {
  if (alpha.degree() != beta.degree()) throw std::invalid_argument("degree mismatch");
  const auto fa = order_factorization(alpha);
  const auto fb = order_factorization(beta);

  std::map<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>> exps;  // p -> (a_i, b_i)
  for (auto [p, e] : fa.factors) exps[p].first = e;
  for (auto [p, e] : fb.factors) exps[p].second = e;

  // The prime power goes to whichever element carries more of it; ties go to beta.
  BigInt r = 1, s = 1;
  for (const auto& [p, ab] : exps) {
    const auto [a, b] = ab;
    if (a < b) r *= boost::multiprecision::pow(BigInt(p), a);
    if (b <= a) s *= boost::multiprecision::pow(BigInt(p), b);
  }
  Permutation gamma = compose(power(alpha, r), power(beta, s));
  if (cyclic_dlog(alpha, gamma) && cyclic_dlog(beta, gamma)) return gamma;
  return std::nullopt;
}

std::optional<Permutation> list_cyclic_generator(std::span<const Permutation> perms) {
  if (perms.empty()) throw std::invalid_argument("empty generator list");
  Permutation acc = perms.front();
  for (std::size_t i = 1; i < perms.size(); ++i) {
    auto next = pair_cyclic_generator(acc, perms[i]);
    if (!next) return std::nullopt;
    acc = std::move(*next);
  }
  return acc;
}

std::optional<BigInt> cyclic_dlog(const Permutation& pi, const Permutation& sigma) {
  if (pi.degree() != sigma.degree()) throw std::invalid_argument("degree mismatch");
  std::vector<std::pair<BigInt, BigInt>> system;
  std::vector<bool> seen(sigma.degree() + 1, false);
  for (Point a = 1; a <= sigma.degree(); ++a) {
    if (seen[a]) continue;
    // Walk the sigma-cycle through a, recording each point's offset from a.
    std::vector<Point> cycle;
    for (Point b = a; !seen[b]; b = sigma(b)) {
      seen[b] = true;
      cycle.push_back(b);
    }
    if (cycle.size() == 1) {
      if (pi(a) != a) return std::nullopt;
      continue;
    }
    const Point target = pi(a);
    std::size_t offset = cycle.size();
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (cycle[i] == target) {
        offset = i;
        break;
      }
    }
    if (offset == cycle.size()) return std::nullopt;
    system.emplace_back(BigInt(offset), BigInt(cycle.size()));
  }
  auto solution = nt::solve_congruences(system);
  if (!solution) return std::nullopt;
  // The tracked points fix e per cycle; the remaining points must agree.
  if (power(sigma, solution->first) != pi) return std::nullopt;
  return solution->first;
}

CyclicIso::CyclicIso(Permutation generator) : generator_(std::move(generator)), order_(order(generator_)) {}

}  // namespace facto
