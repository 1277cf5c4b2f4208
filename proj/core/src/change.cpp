#include <algorithm>
#include <chrono>
#include <numeric>

#include "facto/errors.hpp"
#include "facto/solvers.hpp"

namespace facto {
namespace {

struct Coin {
  BigInt value;
  std::optional<BigInt> bound;
  std::size_t index;
};

// Positive coins with a nonzero bound, largest first; zero coins never help.
std::vector<Coin> usable_coins(const ChangeInstance& inst) {
  std::vector<Coin> coins;
  for (std::size_t i = 0; i < inst.coins.size(); ++i) {
    auto cap = coin_bound(inst, i);
    if (inst.coins[i] > 0 && (!cap || *cap > 0)) coins.push_back(Coin{inst.coins[i], cap, i});
  }
  std::sort(coins.begin(), coins.end(), [](const Coin& a, const Coin& b) { return a.value > b.value; });
  return coins;
}

std::uint64_t small(const BigInt& x) { return x > BigInt(std::numeric_limits<std::uint64_t>::max()) ? ~0ULL : to_u64(x); }

}  // namespace

Verdict solve_change(const ChangeInstance& inst, const SolveOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  Verdict v;
  const std::size_t m = inst.coins.size();
  const BigInt& c = inst.c;
  const BigInt K = inst.k;
  std::vector<std::uint64_t> x(m, 0);
  auto done = [&](bool answer) {
    v.answer = answer;
    if (answer) {
      v.witness_kind = WitnessKind::Exponents;
      v.witness = x;
    }
    v.stats.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return v;
  };
  std::vector<Coin> coins = usable_coins(inst);

  if (inst.approx && inst.a == 0 && inst.b == 0) {
    // The objective is always 0: only sum x_i c_i >= c matters.
    if (c == 0) return done(true);
    if (coins.empty()) return done(false);
    if (inst.flavor == ChangeFlavor::Unbounded) {
      const Coin& top = coins.front();
      x[top.index] = small((c + top.value - 1) / top.value);
      return done(true);
    }
    BigInt total = 0;
    for (const auto& coin : coins) {
      total += *coin.bound * coin.value;
      x[coin.index] = small(*coin.bound);
    }
    if (total >= c) return done(true);
    std::fill(x.begin(), x.end(), 0);
    return done(false);
  }

  if (inst.approx && inst.a == 0 && opts.change_greedy) {
    // Largest coins first within the coin budget floor(k/b).
    BigInt budget = K / inst.b;
    BigInt sum = 0;
    for (const auto& coin : coins) {
      if (budget == 0 || sum >= c) break;
      BigInt take = coin.bound ? std::min(*coin.bound, budget) : budget;
      x[coin.index] = small(take);
      sum += take * coin.value;
      budget -= take;
    }
    if (sum >= c) return done(true);
    std::fill(x.begin(), x.end(), 0);
    return done(false);
  }

  // Enumeration. Count budget: k (decision) or floor(k/b) (approx, b >= 1).
  // Sum budget: c (decision) or c + floor(k/a) (approx, a >= 1).
  std::optional<BigInt> count_cap, sum_cap;
  if (!inst.approx) {
    count_cap = K;
    sum_cap = c;
  } else {
    if (inst.b > 0) count_cap = K / inst.b;
    if (inst.a > 0) sum_cap = c + K / inst.a;
  }
  const std::uint64_t limit = opts.state_cap * 64;
  auto success = [&](const BigInt& sum, const BigInt& count) {
    if (!inst.approx) return sum == c;
    return sum >= c && inst.a * (sum - c) + inst.b * count <= K;
  };
  bool found = false;
  auto dfs = [&](auto&& self, std::size_t pos, const BigInt& sum, const BigInt& count) -> void {
    if (++v.stats.nodes > limit) throw ResourceLimit("solve_change: node cap exceeded");
    if (success(sum, count)) {
      found = true;
      return;
    }
    if (pos == coins.size()) return;
    if (inst.approx && sum >= c) return;  // more coins only raise the objective
    const Coin& coin = coins[pos];
    std::optional<BigInt> top = coin.bound;
    auto clamp = [&](const BigInt& t) { top = top ? std::min(*top, t) : t; };
    if (count_cap) clamp(*count_cap - count);
    if (sum_cap) clamp(*sum_cap >= sum ? (*sum_cap - sum) / coin.value : BigInt(0));
    if (!top) {
      // Only approx with a = 0 and no greedy: the coin count is then capped above.
      throw std::logic_error("solve_change: unbounded enumeration");
    }
    for (BigInt t = *top; t >= 0 && !found; --t) {
      x[coin.index] = small(t);
      self(self, pos + 1, sum + t * coin.value, count + t);
    }
    if (!found) x[coin.index] = 0;
  };
  dfs(dfs, 0, BigInt(0), BigInt(0));
  return done(found);
}

}  // namespace facto
