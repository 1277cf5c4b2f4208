// SSS over Z_{n_1} x ... x Z_{n_d}: guess k tuples, then per coordinate guess
// the wrap count y and certify t_{i_1,j} + ... + t_{i_k,j} = u_j + y n_j
// digit by digit in base r, with explicit carry-arrival certificates.

#include <algorithm>
#include <chrono>

#include "facto/errors.hpp"
#include "facto/numtheory.hpp"
#include "facto/solvers.hpp"

namespace facto {
namespace {

constexpr std::uint64_t kTableLimit = 1U << 20;

// Digit-sum lookup: for every k-tuple of base-r digits, (sum mod r, sum div r).
class DigitTable {
 public:
  DigitTable(std::uint64_t r, std::uint64_t k) : r_(r), k_(k) {
    std::uint64_t size = 1;
    for (std::uint64_t i = 0; i < k && size <= kTableLimit; ++i) size *= r;
    if (k == 0 || size > kTableLimit) return;
    mod_.resize(size);
    div_.resize(size);
    std::vector<std::uint64_t> tuple(k, 0);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      std::uint64_t sum = 0;
      for (auto a : tuple) sum += a;
      mod_[idx] = static_cast<std::uint32_t>(sum % r);
      div_[idx] = static_cast<std::uint32_t>(sum / r);
      for (std::uint64_t l = 0; l < k && ++tuple[l] == r; ++l) tuple[l] = 0;
    }
  }

  /// digits[l] is the digit of the l-th chosen tuple.
  std::pair<std::uint64_t, std::uint64_t> lookup(const std::vector<std::uint64_t>& digits) const {
    if (mod_.empty()) {
      std::uint64_t sum = 0;
      for (auto a : digits) sum += a;
      return {sum % r_, sum / r_};
    }
    std::uint64_t idx = 0;
    for (std::uint64_t l = k_; l-- > 0;) idx = idx * r_ + digits[l];
    return {mod_[idx], div_[idx]};
  }

 private:
  std::uint64_t r_, k_;
  std::vector<std::uint32_t> mod_, div_;
};

std::vector<std::uint64_t> padded_digits(const BigInt& x, std::uint64_t r, std::size_t len) {
  auto d = nt::digits_in_base(x, r).digits;
  d.resize(len, 0);
  return d;
}

}  // namespace

Verdict solve_fabg_digitcheck(const Instance& inst, const SolveOptions& opts) {
  if (inst.kind != ProblemKind::SSS) throw DomainError("solve_fabg_digitcheck: expected kind SSS");
  if (!inst.exact) throw DomainError("solve_fabg_digitcheck: expected the exact variant");
  const auto* group = std::get_if<FiniteAbelian>(&inst.monoid);
  if (group == nullptr) throw DomainError("solve_fabg_digitcheck: expected a finite abelian group");
  auto start = std::chrono::steady_clock::now();

  const auto& mods = group->moduli;
  const std::size_t d = mods.size();
  const std::size_t m = inst.generators.size();
  const std::uint64_t k = inst.k;
  const std::uint64_t ys = std::max<std::uint64_t>(k, 1);  // y ranges over [0, ys-1]
  const std::uint64_t r = nt::digit_base_for(ys);
  const auto& u = std::get<IntVector>(inst.target);

  // Positions 0..m_j hold digits of the inputs, position m_j+1 the final carry.
  std::vector<std::size_t> positions(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t len = 1;
    for (const auto& g : inst.generators) len = std::max(len, nt::digits_in_base(std::get<IntVector>(g)[j], r).digits.size());
    for (std::uint64_t y = 0; y < ys; ++y) len = std::max(len, nt::digits_in_base(u[j] + y * mods[j], r).digits.size());
    positions[j] = len + 1;
  }
  std::vector<std::vector<std::vector<std::uint64_t>>> tdig(m, std::vector<std::vector<std::uint64_t>>(d));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) tdig[i][j] = padded_digits(std::get<IntVector>(inst.generators[i])[j], r, positions[j]);
  std::vector<std::vector<std::vector<std::uint64_t>>> udig(ys, std::vector<std::vector<std::uint64_t>>(d));
  for (std::uint64_t y = 0; y < ys; ++y)
    for (std::size_t j = 0; j < d; ++j) udig[y][j] = padded_digits(u[j] + y * mods[j], r, positions[j]);

  DigitTable table(r, k);
  Verdict v;
  const std::uint64_t limit = opts.state_cap * 64;
  std::vector<std::uint64_t> chosen;
  std::vector<std::uint64_t> s, c, tuple(k);

  // Steps (d)-(g) for the chosen tuples, coordinate j and wrap count y.
  auto digits_match = [&](std::size_t j, std::uint64_t y) {
    const std::size_t P = positions[j];
    for (std::size_t p = 0; p < P; ++p) {
      ++v.stats.nodes;
      std::uint64_t up = udig[y][j][p];
      std::uint64_t delta = ((up + 2 * r) - s[p] - c[p]) % r;
      if (delta > 1) return false;
      if (delta == 0) {
        // No carry arrives: every carry generated below p is absorbed before p.
        for (std::size_t pp = 0; pp < p; ++pp) {
          if (s[pp] + c[pp] < r) continue;
          bool absorbed = false;
          for (std::size_t q = pp + 1; q < p && !absorbed; ++q) absorbed = s[q] + c[q] < r - 1;
          if (!absorbed) return false;
        }
      } else {
        // A carry arrives: after the start and after every absorbing position
        // below p there is a generating position before p.
        for (std::ptrdiff_t pp = -1; pp < static_cast<std::ptrdiff_t>(p); ++pp) {
          if (pp >= 0 && s[pp] + c[pp] >= r - 1) continue;
          bool generated = false;
          for (std::size_t q = static_cast<std::size_t>(pp + 1); q < p && !generated; ++q) generated = s[q] + c[q] >= r;
          if (!generated) return false;
        }
      }
    }
    return true;
  };

  auto coordinate_ok = [&](std::size_t j) {
    const std::size_t P = positions[j];
    s.assign(P, 0);
    c.assign(P + 1, 0);
    for (std::size_t p = 0; p + 1 < P; ++p) {
      for (std::uint64_t l = 0; l < k; ++l) tuple[l] = tdig[chosen[l]][j][p];
      auto [mod, div] = table.lookup(tuple);
      s[p] = mod;
      c[p + 1] = div;
    }
    for (std::uint64_t y = 0; y < ys; ++y)
      if (digits_match(j, y)) return true;
    return false;
  };

  bool found = false;
  auto guess = [&](auto&& self, std::size_t from) -> void {
    if (chosen.size() == k) {
      if (++v.stats.nodes > limit) throw ResourceLimit("solve_fabg_digitcheck: node cap exceeded");
      bool all = true;
      for (std::size_t j = 0; j < d && all; ++j) all = coordinate_ok(j);
      found = all;
      return;
    }
    for (std::size_t i = from; i + (k - chosen.size()) <= m; ++i) {
      chosen.push_back(i);
      self(self, i + 1);
      if (found) return;
      chosen.pop_back();
    }
  };
  if (k <= m) guess(guess, 0);

  v.answer = found;
  if (found) {
    v.witness_kind = WitnessKind::Subset;
    v.witness = chosen;
  }
  v.stats.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return v;
}

}  // namespace facto
