#include "facto/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <string>
#include <unordered_map>

#include "facto/errors.hpp"

namespace facto {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void require_kind(const Instance& inst, ProblemKind k, const char* who) {
  if (inst.kind != k)
    throw DomainError(std::string(who) + ": expected kind " + std::string(kind_tag(k)) + ", got " +
                      std::string(kind_tag(inst.kind)));
}

[[noreturn]] void over_cap(const char* who, std::uint64_t cap) {
  throw ResourceLimit(std::string(who) + ": state cap " + std::to_string(cap) + " exceeded");
}

constexpr std::uint64_t kEnumerationFactor = 64;

// ---------------------------------------------------------------- BFS (F)

struct Back {
  const Element* parent;  // nullptr at the identity root
  std::uint32_t gen;
};
using Layer = std::unordered_map<Element, Back, ElementHash>;

std::vector<std::uint64_t> trace_layers(const std::vector<Layer>& layers, std::size_t depth, const Element& e) {
  std::vector<std::uint64_t> seq;
  const Element* cur = &e;
  for (std::size_t d = depth; d > 0; --d) {
    const Back& b = layers[d].at(*cur);
    seq.push_back(b.gen);
    cur = b.parent;
  }
  std::reverse(seq.begin(), seq.end());
  return seq;
}

std::vector<std::uint64_t> trace_visited(const Layer& visited, const Element& e) {
  std::vector<std::uint64_t> seq;
  const Back* b = &visited.at(e);
  while (b->parent != nullptr) {
    seq.push_back(b->gen);
    b = &visited.at(*b->parent);
  }
  std::reverse(seq.begin(), seq.end());
  return seq;
}

// ---------------------------------------------------------------- DP

struct DpKey {
  std::uint64_t count;
  Element value;
  friend bool operator==(const DpKey&, const DpKey&) = default;
};

struct DpKeyHash {
  std::size_t operator()(const DpKey& k) const noexcept {
    return ElementHash{}(k.value) ^ (k.count * 0x9e3779b97f4a7c15ULL);
  }
};

struct DpBack {
  const DpKey* prev;
  std::uint64_t x;
};
using DpLayer = std::unordered_map<DpKey, DpBack, DpKeyHash>;

struct Item {
  Element value;
  std::vector<std::size_t> indices;
  std::uint64_t bound;
};

// Coordinates of the ordered numeric classes, used for interval pruning.
bool ordered_numeric(MonoidClass c) {
  return c == MonoidClass::Integers || c == MonoidClass::Naturals || c == MonoidClass::IntVectors ||
         c == MonoidClass::NatVectors;
}

std::vector<BigInt> coords(const Element& x) {
  if (const auto* v = std::get_if<BigInt>(&x)) return {*v};
  return std::get<IntVector>(x);
}

// Breadth-first layers from `root` using right multiplication by `steps`.
// In the at-most mode a layer only holds elements not seen at a smaller depth.
struct Side {
  std::vector<Layer> layers;
};

void grow(Side& side, const MonoidDesc& M, const std::vector<Element>& steps, std::uint64_t depth, bool exact,
          std::uint64_t& stored, const SolveOptions& opts, SolveStats& stats) {
  for (std::uint64_t j = 1; j <= depth; ++j) {
    Layer next;
    for (const auto& [e, b] : side.layers.back()) {
      for (std::uint32_t g = 0; g < steps.size(); ++g) {
        ++stats.nodes;
        Element y = multiply(M, e, steps[g]);
        if (!exact && std::any_of(side.layers.begin(), side.layers.end(),
                                  [&](const Layer& l) { return l.count(y) > 0; }))
          continue;
        if (next.try_emplace(std::move(y), Back{&e, g}).second && ++stored > opts.state_cap)
          over_cap("solve_factorization", opts.state_cap);
      }
    }
    side.layers.push_back(std::move(next));
  }
}

}  // namespace

std::uint64_t default_state_cap() {
  if (const char* env = std::getenv("FACTO_STATE_CAP")) {
    try {
      std::uint64_t v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 1'000'000;
}

Verdict solve_factorization(const Instance& inst, const SolveOptions& opts) {
  require_kind(inst, ProblemKind::F, "solve_factorization");
  auto start = Clock::now();
  Verdict v;
  v.witness_kind = WitnessKind::Sequence;
  const MonoidDesc& M = inst.monoid;
  const auto& gens = inst.generators;
  const std::size_t m = gens.size();
  const std::uint64_t k = inst.k;
  Element id = identity(M);

  auto finish = [&](bool answer, std::vector<std::uint64_t> seq) {
    v.answer = answer;
    if (answer) v.witness = std::move(seq);
    else v.witness_kind = WitnessKind::None;
    v.stats.time_ms = elapsed_ms(start);
    return v;
  };

  if ((k == 0 || !inst.exact) && inst.target == id) return finish(true, {});
  if (k == 0 || m == 0) return finish(false, {});

  // In a group: meet in the middle, forward from the identity and backward
  // from the target by right multiplication with inverses.
  std::vector<Element> inverses;
  bool invertible = true;
  for (const auto& g : gens) {
    auto inv = inverse(M, g);
    if (!inv) {
      invertible = false;
      break;
    }
    inverses.push_back(std::move(*inv));
  }
  if (invertible) {
    const std::uint64_t fd = (k + 1) / 2, bd = k / 2;
    std::uint64_t stored = 2;
    Side fwd, bwd;
    fwd.layers.push_back(Layer{{id, Back{nullptr, 0}}});
    bwd.layers.push_back(Layer{{inst.target, Back{nullptr, 0}}});
    grow(fwd, M, gens, fd, inst.exact, stored, opts, v.stats);
    grow(bwd, M, inverses, bd, inst.exact, stored, opts, v.stats);
    auto meet = [&](std::size_t i, std::size_t j, const Element& e) {
      auto seq = trace_layers(fwd.layers, i, e);
      auto back = trace_layers(bwd.layers, j, e);
      seq.insert(seq.end(), back.rbegin(), back.rend());
      return finish(true, std::move(seq));
    };
    if (inst.exact) {
      for (const auto& [e, b] : fwd.layers[fd]) {
        ++v.stats.nodes;
        if (bwd.layers[bd].count(e)) return meet(fd, bd, e);
      }
      return finish(false, {});
    }
    for (std::size_t i = 0; i <= fd; ++i)
      for (const auto& [e, b] : fwd.layers[i])
        for (std::size_t j = 0; j <= bd; ++j) {
          ++v.stats.nodes;
          if (bwd.layers[j].count(e)) return meet(i, j, e);
        }
    return finish(false, {});
  }

  std::uint64_t stored = 1;
  if (inst.exact) {
    std::vector<Layer> layers;
    layers.reserve(k);
    layers.push_back(Layer{{id, Back{nullptr, 0}}});
    for (std::uint64_t j = 1; j < k; ++j) {
      Layer next;
      for (const auto& [e, b] : layers.back()) {
        for (std::uint32_t g = 0; g < m; ++g) {
          ++v.stats.nodes;
          if (next.try_emplace(multiply(M, e, gens[g]), Back{&e, g}).second && ++stored > opts.state_cap)
            over_cap("solve_factorization", opts.state_cap);
        }
      }
      layers.push_back(std::move(next));
    }
    for (const auto& [e, b] : layers.back()) {
      for (std::uint32_t g = 0; g < m; ++g) {
        ++v.stats.nodes;
        if (multiply(M, e, gens[g]) == inst.target) {
          auto seq = trace_layers(layers, k - 1, e);
          seq.push_back(g);
          return finish(true, std::move(seq));
        }
      }
    }
    return finish(false, {});
  }

  Layer visited{{id, Back{nullptr, 0}}};
  std::vector<const Element*> frontier{&visited.begin()->first};
  for (std::uint64_t j = 1; j < k && !frontier.empty(); ++j) {
    std::vector<const Element*> next;
    for (const Element* e : frontier) {
      for (std::uint32_t g = 0; g < m; ++g) {
        ++v.stats.nodes;
        auto [it, inserted] = visited.try_emplace(multiply(M, *e, gens[g]), Back{e, g});
        if (!inserted) continue;
        if (it->first == inst.target) return finish(true, trace_visited(visited, it->first));
        if (++stored > opts.state_cap) over_cap("solve_factorization", opts.state_cap);
        next.push_back(&it->first);
      }
    }
    frontier = std::move(next);
  }
  for (const Element* e : frontier) {
    for (std::uint32_t g = 0; g < m; ++g) {
      ++v.stats.nodes;
      if (multiply(M, *e, gens[g]) == inst.target) {
        auto seq = trace_visited(visited, *e);
        seq.push_back(g);
        return finish(true, std::move(seq));
      }
    }
  }
  return finish(false, {});
}

Verdict solve_knapsack(const Instance& inst, const SolveOptions& opts) {
  require_kind(inst, ProblemKind::KS, "solve_knapsack");
  auto start = Clock::now();
  Verdict v;
  const MonoidDesc& M = inst.monoid;
  const auto& gens = inst.generators;
  const std::size_t m = gens.size();
  const std::uint64_t limit = opts.state_cap * kEnumerationFactor;
  std::vector<std::uint64_t> x(m, 0);
  bool found = false;

  auto dfs = [&](auto&& self, std::size_t i, std::uint64_t remaining, const Element& prefix) -> void {
    if (i == m) {
      ++v.stats.nodes;
      if ((!inst.exact || remaining == 0) && prefix == inst.target) found = true;
      return;
    }
    if (i + 1 == m && inst.exact) {
      // The last exponent is forced.
      x[i] = remaining;
      self(self, m, 0, multiply(M, prefix, power(M, gens[i], remaining)));
      if (!found) x[i] = 0;
      return;
    }
    Element cur = prefix;
    for (std::uint64_t e = 0; e <= remaining; ++e) {
      if (++v.stats.nodes > limit) over_cap("solve_knapsack", opts.state_cap);
      x[i] = e;
      self(self, i + 1, remaining - e, cur);
      if (found) return;
      if (e < remaining) cur = multiply(M, cur, gens[i]);
    }
    x[i] = 0;
  };

  if (m == 0) {
    found = (!inst.exact || inst.k == 0) && inst.target == identity(M);
  } else {
    dfs(dfs, 0, inst.k, identity(M));
  }
  v.answer = found;
  if (found) {
    v.witness_kind = WitnessKind::Exponents;
    v.witness = x;
  }
  v.stats.time_ms = elapsed_ms(start);
  return v;
}

Verdict solve_subsetsum(const Instance& inst, const SolveOptions& opts) {
  require_kind(inst, ProblemKind::SSS, "solve_subsetsum");
  auto start = Clock::now();
  Verdict v;
  const MonoidDesc& M = inst.monoid;
  const auto& gens = inst.generators;
  const std::size_t m = gens.size();
  const std::uint64_t k = inst.k;
  const std::uint64_t limit = opts.state_cap * kEnumerationFactor;
  std::vector<std::uint64_t> chosen;
  bool found = false;

  auto dfs = [&](auto&& self, std::size_t from, const Element& prefix) -> void {
    if (++v.stats.nodes > limit) over_cap("solve_subsetsum", opts.state_cap);
    if ((!inst.exact || chosen.size() == k) && prefix == inst.target) {
      found = true;
      return;
    }
    if (chosen.size() == k) return;
    std::size_t need = inst.exact ? static_cast<std::size_t>(k - chosen.size()) : 1;
    for (std::size_t i = from; i + need <= m; ++i) {
      chosen.push_back(i);
      self(self, i + 1, multiply(M, prefix, gens[i]));
      if (found) return;
      chosen.pop_back();
    }
  };

  if (!inst.exact || k <= m) dfs(dfs, 0, identity(M));
  v.answer = found;
  if (found) {
    v.witness_kind = WitnessKind::Subset;
    v.witness = chosen;
  }
  v.stats.time_ms = elapsed_ms(start);
  return v;
}

namespace {

Verdict prefix_dp(const Instance& inst, const SolveOptions& opts, const char* who) {
  if (inst.kind == ProblemKind::F) throw DomainError(std::string(who) + ": expected kind KS or SSS");
  auto start = Clock::now();
  Verdict v;
  const MonoidDesc& M = inst.monoid;
  const std::uint64_t k = inst.k;
  const bool ks = inst.kind == ProblemKind::KS;

  // Equal generators merge into one item with a multiplicity bound; without
  // commutativity only adjacent ones may.
  const bool commutative = is_commutative(M);
  std::vector<Item> items;
  for (std::size_t i = 0; i < inst.generators.size(); ++i) {
    auto it = commutative ? std::find_if(items.begin(), items.end(),
                                         [&](const Item& t) { return t.value == inst.generators[i]; })
                          : (!items.empty() && items.back().value == inst.generators[i] ? items.end() - 1 : items.end());
    if (it == items.end()) {
      items.push_back(Item{inst.generators[i], {i}, ks ? k : 1});
    } else {
      it->indices.push_back(i);
      if (!ks) ++it->bound;
    }
  }
  const std::size_t n_items = items.size();

  // Suffix data for interval pruning over Z, N and their vectors.
  const bool prune = ordered_numeric(class_of(M));
  std::vector<std::uint64_t> suffix_cap(n_items + 1, 0);
  for (std::size_t s = n_items; s-- > 0;) suffix_cap[s] = std::min<std::uint64_t>(k, suffix_cap[s + 1] + items[s].bound);
  std::vector<std::vector<BigInt>> lo(n_items + 1), hi(n_items + 1);
  std::vector<BigInt> target_coords;
  if (prune) {
    target_coords = coords(inst.target);
    for (std::size_t s = n_items; s-- > 0;) {
      auto c = coords(items[s].value);
      if (s + 1 == n_items) {
        lo[s] = c;
        hi[s] = c;
      } else {
        lo[s] = lo[s + 1];
        hi[s] = hi[s + 1];
        for (std::size_t j = 0; j < c.size(); ++j) {
          lo[s][j] = std::min(lo[s][j], c[j]);
          hi[s][j] = std::max(hi[s][j], c[j]);
        }
      }
    }
  }
  auto viable = [&](std::size_t s, const DpKey& key) {
    std::uint64_t left = k - key.count;
    std::uint64_t r_min = inst.exact ? left : 0;
    std::uint64_t r_max = std::min(left, suffix_cap[s]);
    if (r_min > r_max) return false;
    if (!prune) return true;
    auto val = coords(key.value);
    if (s == n_items) return val == target_coords;
    for (std::size_t j = 0; j < val.size(); ++j) {
      BigInt need = target_coords[j] - val[j];
      BigInt a = lo[s][j] * r_min, b = lo[s][j] * r_max;
      BigInt c = hi[s][j] * r_min, d = hi[s][j] * r_max;
      if (need < std::min(a, b) || need > std::max(c, d)) return false;
    }
    return true;
  };

  std::vector<DpLayer> layers;
  layers.reserve(n_items + 1);
  layers.push_back(DpLayer{});
  DpKey root{0, identity(M)};
  std::uint64_t stored = 0;
  if (viable(0, root)) {
    layers.back().try_emplace(root, DpBack{nullptr, 0});
    stored = 1;
  }
  for (std::size_t s = 0; s < n_items; ++s) {
    DpLayer next;
    // In the at-most variant only the smallest count per value matters.
    std::unordered_map<Element, std::uint64_t, ElementHash> best;
    const Item& item = items[s];
    for (const auto& [key, back] : layers.back()) {
      Element cur = key.value;
      std::uint64_t top = std::min(item.bound, k - key.count);
      for (std::uint64_t x = 0; x <= top; ++x) {
        ++v.stats.nodes;
        DpKey nk{key.count + x, cur};
        if (x < top) cur = multiply(M, cur, item.value);
        if (!viable(s + 1, nk)) continue;
        if (!inst.exact) {
          auto [it, fresh] = best.try_emplace(nk.value, nk.count);
          if (!fresh) {
            if (it->second <= nk.count) continue;
            next.erase(DpKey{it->second, nk.value});
            it->second = nk.count;
            --stored;
          }
        }
        if (next.try_emplace(std::move(nk), DpBack{&key, x}).second && ++stored > opts.state_cap)
          over_cap(who, opts.state_cap);
      }
    }
    if (!opts.want_witness) {
      stored = next.size();
      layers.back() = std::move(next);
    } else {
      layers.push_back(std::move(next));
    }
  }

  const DpLayer& last = layers.back();
  const DpKey* hit = nullptr;
  for (std::uint64_t c = inst.exact ? k : 0; c <= k && hit == nullptr; ++c) {
    auto it = last.find(DpKey{c, inst.target});
    if (it != last.end()) hit = &it->first;
  }
  v.answer = hit != nullptr;
  if (hit != nullptr && opts.want_witness) {
    std::vector<std::uint64_t> per_item(n_items, 0);
    const DpKey* cur = hit;
    for (std::size_t s = n_items; s > 0; --s) {
      const DpBack& b = layers[s].at(*cur);
      per_item[s - 1] = b.x;
      cur = b.prev;
    }
    if (ks) {
      v.witness_kind = WitnessKind::Exponents;
      v.witness.assign(inst.generators.size(), 0);
      for (std::size_t s = 0; s < n_items; ++s) v.witness[items[s].indices.front()] = per_item[s];
    } else {
      v.witness_kind = WitnessKind::Subset;
      for (std::size_t s = 0; s < n_items; ++s)
        for (std::uint64_t x = 0; x < per_item[s]; ++x) v.witness.push_back(items[s].indices[x]);
      std::sort(v.witness.begin(), v.witness.end());
    }
  }
  v.stats.time_ms = elapsed_ms(start);
  return v;
}

}  // namespace

Verdict solve_numeric_dp(const Instance& inst, const SolveOptions& opts) {
  if (!is_commutative(inst.monoid)) throw DomainError("solve_numeric_dp: monoid is not commutative");
  return prefix_dp(inst, opts, "solve_numeric_dp");
}

Verdict solve_prefix_dp(const Instance& inst, const SolveOptions& opts) {
  return prefix_dp(inst, opts, "solve_prefix_dp");
}

Verdict solve(const Instance& inst, const SolveOptions& opts) {
  switch (inst.kind) {
    case ProblemKind::F:
      return solve_factorization(inst, opts);
    case ProblemKind::KS:
    case ProblemKind::SSS:
      return solve_prefix_dp(inst, opts);
  }
  throw std::logic_error("unknown problem kind");
}

Verdict solve(const ChangeInstance& inst, const SolveOptions& opts) { return solve_change(inst, opts); }

Verdict solve(const AnyInstance& inst, const SolveOptions& opts) {
  return std::visit([&](const auto& x) { return solve(x, opts); }, inst);
}

bool check_witness(const Instance& inst, const Verdict& v) {
  if (!v.answer) return true;
  const MonoidDesc& M = inst.monoid;
  const std::size_t m = inst.generators.size();
  const auto& w = v.witness;
  auto count_ok = [&](std::uint64_t used) { return inst.exact ? used == inst.k : used <= inst.k; };
  Element acc = identity(M);
  switch (inst.kind) {
    case ProblemKind::F:
      if (v.witness_kind != WitnessKind::Sequence || !count_ok(w.size())) return false;
      for (auto i : w) {
        if (i >= m) return false;
        acc = multiply(M, acc, inst.generators[i]);
      }
      break;
    case ProblemKind::KS: {
      if (v.witness_kind != WitnessKind::Exponents || w.size() != m) return false;
      std::uint64_t used = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (w[i] > inst.k) return false;
        used += w[i];
        acc = multiply(M, acc, power(M, inst.generators[i], w[i]));
      }
      if (!count_ok(used)) return false;
      break;
    }
    case ProblemKind::SSS:
      if (v.witness_kind != WitnessKind::Subset || !count_ok(w.size())) return false;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] >= m || (j > 0 && w[j] <= w[j - 1])) return false;
        acc = multiply(M, acc, inst.generators[w[j]]);
      }
      break;
  }
  return acc == inst.target;
}

bool check_witness(const ChangeInstance& inst, const Verdict& v) {
  if (!v.answer) return true;
  if (v.witness_kind != WitnessKind::Exponents || v.witness.size() != inst.coins.size()) return false;
  BigInt sum = 0, count = 0;
  for (std::size_t i = 0; i < inst.coins.size(); ++i) {
    BigInt x = v.witness[i];
    if (auto cap = coin_bound(inst, i); cap && x > *cap) return false;
    sum += x * inst.coins[i];
    count += x;
  }
  if (!inst.approx) return sum == inst.c && count <= inst.k;
  return sum >= inst.c && inst.a * (sum - inst.c) + inst.b * count <= inst.k;
}

nlohmann::json verdict_to_json(const Verdict& v) {
  nlohmann::json j;
  j["answer"] = v.answer;
  if (v.witness_kind == WitnessKind::None) {
    j["witness"] = nullptr;
  } else {
    const char* kind = v.witness_kind == WitnessKind::Sequence ? "sequence"
                       : v.witness_kind == WitnessKind::Exponents ? "exponents"
                                                                   : "subset";
    j["witness"] = {{"kind", kind}, {"values", v.witness}};
  }
  j["stats"] = {{"nodes", v.stats.nodes}, {"time_ms", v.stats.time_ms}};
  return j;
}

}  // namespace facto
