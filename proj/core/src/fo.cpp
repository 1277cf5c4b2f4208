#include "facto/fo.hpp"

#include <algorithm>

#include "facto/errors.hpp"

namespace facto::fo {

namespace {

using Env = std::map<std::string, std::size_t, std::less<>>;

void check_tuple(const Structure& s, const std::vector<std::size_t>& t, const std::string& path) {
  for (auto x : t)
    if (x >= s.size) throw ValidationError(path, "element " + std::to_string(x) + " outside the universe");
}

std::size_t eval_term(const Structure& s, const Term& t, const Env& env) {
  if (t.kind == Term::Kind::Var) {
    auto it = env.find(t.name);
    if (it == env.end()) throw DomainError("free variable " + t.name);
    return it->second;
  }
  auto f = s.functions.find(t.name);
  if (f == s.functions.end()) throw DomainError("uninterpreted function symbol " + t.name);
  if (f->second.arity != t.args.size()) throw DomainError("arity mismatch for " + t.name);
  std::vector<std::size_t> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(eval_term(s, a, env));
  auto v = f->second.table.find(args);
  if (v == f->second.table.end()) throw DomainError("function " + t.name + " is not total");
  return v->second;
}

bool eval(const Structure& s, const Formula& f, Env& env) {
  switch (f.kind) {
    case Formula::Kind::Rel: {
      auto r = s.relations.find(f.name);
      if (r == s.relations.end()) throw DomainError("uninterpreted relation symbol " + f.name);
      if (r->second.arity != f.terms.size()) throw DomainError("arity mismatch for " + f.name);
      std::vector<std::size_t> args;
      for (const auto& t : f.terms) args.push_back(eval_term(s, t, env));
      return r->second.tuples.count(args) > 0;
    }
    case Formula::Kind::Eq: return eval_term(s, f.terms[0], env) == eval_term(s, f.terms[1], env);
    case Formula::Kind::Not: return !eval(s, f.subs[0], env);
    case Formula::Kind::And:
      for (const auto& g : f.subs)
        if (!eval(s, g, env)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& g : f.subs)
        if (eval(s, g, env)) return true;
      return false;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      const bool ex = f.kind == Formula::Kind::Exists;
      auto saved = env.find(f.name) != env.end() ? std::optional<std::size_t>(env[f.name]) : std::nullopt;
      bool result = !ex;
      for (std::size_t x = 0; x < s.size; ++x) {
        env[f.name] = x;
        if (eval(s, f.subs[0], env) == ex) {
          result = ex;
          break;
        }
      }
      if (saved)
        env[f.name] = *saved;
      else
        env.erase(f.name);
      return result;
    }
  }
  return false;
}

void free_vars(const Term& t, const std::set<std::string>& bound, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var) {
    if (!bound.count(t.name)) out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) free_vars(a, bound, out);
}

void free_vars(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Rel:
    case Formula::Kind::Eq:
      for (const auto& t : f.terms) free_vars(t, bound, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool fresh = bound.insert(f.name).second;
      free_vars(f.subs[0], bound, out);
      if (fresh) bound.erase(f.name);
      return;
    }
    default:
      for (const auto& g : f.subs) free_vars(g, bound, out);
  }
}

bool has_function(const Term& t) { return t.kind == Term::Kind::App; }

// Prenex prefix as a list of (is_exists, var).
using Prefix = std::vector<std::pair<bool, std::string>>;

std::vector<std::pair<bool, std::size_t>> blocks_of(const Prefix& p) {
  std::vector<std::pair<bool, std::size_t>> b;
  for (const auto& [ex, v] : p) {
    if (b.empty() || b.back().first != ex)
      b.emplace_back(ex, 1);
    else
      ++b.back().second;
  }
  return b;
}

// Interleaves two prefixes block by block, existential blocks first, so that
// alternations are not multiplied. Valid because the variables are distinct.
Prefix merge(const Prefix& a, const Prefix& b) {
  auto split = [](const Prefix& p) {
    std::vector<Prefix> out;
    for (const auto& q : p) {
      if (out.empty() || out.back().front().first != q.first) out.emplace_back();
      out.back().push_back(q);
    }
    return out;
  };
  auto A = split(a), B = split(b);
  Prefix out;
  std::size_t i = 0, j = 0;
  while (i < A.size() || j < B.size()) {
    bool want = out.empty() ? true : !out.back().first;
    bool took = false;
    if (i < A.size() && A[i].front().first == want) {
      out.insert(out.end(), A[i].begin(), A[i].end());
      ++i;
      took = true;
    }
    if (j < B.size() && B[j].front().first == want) {
      out.insert(out.end(), B[j].begin(), B[j].end());
      ++j;
      took = true;
    }
    if (!took) {
      // Both remaining blocks have the other quantifier: open a block of that kind.
      const auto& blk = i < A.size() ? A[i++] : B[j++];
      out.insert(out.end(), blk.begin(), blk.end());
    }
  }
  return out;
}

Prefix prefix_of(const Formula& f, bool& func) {
  switch (f.kind) {
    case Formula::Kind::Rel:
    case Formula::Kind::Eq:
      for (const auto& t : f.terms) func = func || has_function(t);
      return {};
    case Formula::Kind::Not: {
      auto p = prefix_of(f.subs[0], func);
      for (auto& q : p) q.first = !q.first;
      return p;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      Prefix p;
      for (const auto& g : f.subs) p = merge(p, prefix_of(g, func));
      return p;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      Prefix p{{f.kind == Formula::Kind::Exists, f.name}};
      auto rest = prefix_of(f.subs[0], func);
      p.insert(p.end(), rest.begin(), rest.end());
      return p;
    }
  }
  return {};
}

void bound_names(const Formula& f, std::vector<std::string>& out) {
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) out.push_back(f.name);
  for (const auto& g : f.subs) bound_names(g, out);
}

}  // namespace

void validate(const Structure& s) {
  if (!s.names.empty() && s.names.size() != s.size) throw ValidationError("/names", "one name per element");
  for (const auto& [name, r] : s.relations)
    for (const auto& t : r.tuples) {
      if (t.size() != r.arity) throw ValidationError("/relations/" + name, "tuple arity mismatch");
      check_tuple(s, t, "/relations/" + name);
    }
  for (const auto& [name, f] : s.functions) {
    std::size_t expected = 1;
    for (std::size_t i = 0; i < f.arity; ++i) expected *= s.size;
    for (const auto& [args, v] : f.table) {
      if (args.size() != f.arity) throw ValidationError("/functions/" + name, "argument arity mismatch");
      check_tuple(s, args, "/functions/" + name);
      check_tuple(s, {v}, "/functions/" + name);
    }
    if (f.table.size() != expected) throw ValidationError("/functions/" + name, "function is not total");
  }
}

std::size_t length(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args) n += length(a);
  return n;
}

std::size_t length(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Rel:
    case Formula::Kind::Eq: {
      std::size_t n = 1;
      for (const auto& t : f.terms) n += length(t);
      return n;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::size_t n = f.subs.empty() ? 0 : f.subs.size() - 1;
      for (const auto& g : f.subs) n += length(g);
      return n;
    }
    default: return length(f.subs[0]) + 1;
  }
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars(f, bound, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

bool evaluate(const Structure& s, const Formula& f) {
  auto fv = free_variables(f);
  if (!fv.empty()) throw DomainError("formula has free variable " + *fv.begin());
  if (s.size == 0) throw DomainError("empty universe");
  Env env;
  return eval(s, f, env);
}

std::string Fragment::tag() const {
  if (!in_sigma) return "none";
  std::string t = "Sigma_{" + std::to_string(std::max<std::size_t>(l, 1));
  if (l >= 2) t += "," + std::to_string(u);
  t += "}";
  if (func) t += "^func";
  return t;
}

Fragment classify_fragment(const Formula& f) {
  Fragment out;
  std::vector<std::string> names;
  bound_names(f, names);
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  auto fv = free_variables(f);
  bool clash = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
               std::any_of(names.begin(), names.end(), [&](const std::string& v) { return fv.count(v) > 0; });
  auto prefix = prefix_of(f, out.func);
  auto blocks = blocks_of(prefix);
  for (const auto& b : blocks) out.block_sizes.push_back(b.second);
  out.l = blocks.size();
  for (std::size_t i = 1; i < blocks.size(); ++i) out.u = std::max(out.u, blocks[i].second);
  if (clash) {
    out.reason = "bound variables are not pairwise distinct";
  } else if (!fv.empty()) {
    out.reason = "not a sentence";
  } else if (!blocks.empty() && !blocks.front().first) {
    out.reason = "prefix starts with a universal block";
  } else {
    out.in_sigma = true;
  }
  return out;
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const Structure& s) {
  nlohmann::json j;
  j["size"] = s.size;
  if (!s.names.empty()) j["names"] = s.names;
  j["relations"] = nlohmann::json::object();
  for (const auto& [name, r] : s.relations) {
    nlohmann::json tuples = nlohmann::json::array();
    for (const auto& t : r.tuples) tuples.push_back(t);
    j["relations"][name] = {{"arity", r.arity}, {"tuples", tuples}};
  }
  j["functions"] = nlohmann::json::object();
  for (const auto& [name, f] : s.functions) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& [args, v] : f.table) {
      auto row = args;
      row.push_back(v);
      table.push_back(row);
    }
    j["functions"][name] = {{"arity", f.arity}, {"table", table}};
  }
  return j;
}

Structure structure_from_json(const nlohmann::json& j) {
  auto need = [](const nlohmann::json& o, const char* key, const std::string& path) -> const nlohmann::json& {
    if (!o.is_object() || !o.contains(key)) throw ParseError(path + "/" + key, "missing field");
    return o.at(key);
  };
  auto index = [](const nlohmann::json& x, const std::string& path) {
    if (!x.is_number_unsigned()) throw ParseError(path, "expected a nonnegative integer");
    return x.get<std::size_t>();
  };
  Structure s;
  s.size = index(need(j, "size", ""), "/size");
  if (j.contains("names")) {
    if (!j["names"].is_array()) throw ParseError("/names", "expected an array");
    for (const auto& n : j["names"]) s.names.push_back(n.is_string() ? n.get<std::string>() : n.dump());
  }
  if (j.contains("relations")) {
    for (const auto& [name, r] : j["relations"].items()) {
      std::string path = "/relations/" + name;
      Structure::Relation rel;
      rel.arity = index(need(r, "arity", path), path + "/arity");
      const auto& tuples = need(r, "tuples", path);
      if (!tuples.is_array()) throw ParseError(path + "/tuples", "expected an array");
      for (std::size_t i = 0; i < tuples.size(); ++i) {
        std::vector<std::size_t> t;
        if (!tuples[i].is_array()) throw ParseError(path + "/tuples/" + std::to_string(i), "expected an array");
        for (const auto& x : tuples[i]) t.push_back(index(x, path + "/tuples/" + std::to_string(i)));
        rel.tuples.insert(std::move(t));
      }
      s.relations[name] = std::move(rel);
    }
  }
  if (j.contains("functions")) {
    for (const auto& [name, f] : j["functions"].items()) {
      std::string path = "/functions/" + name;
      Structure::Function fn;
      fn.arity = index(need(f, "arity", path), path + "/arity");
      const auto& table = need(f, "table", path);
      if (!table.is_array()) throw ParseError(path + "/table", "expected an array");
      for (std::size_t i = 0; i < table.size(); ++i) {
        std::string rp = path + "/table/" + std::to_string(i);
        if (!table[i].is_array() || table[i].size() != fn.arity + 1) throw ParseError(rp, "expected arity+1 entries");
        std::vector<std::size_t> row;
        for (const auto& x : table[i]) row.push_back(index(x, rp));
        std::size_t v = row.back();
        row.pop_back();
        if (!fn.table.emplace(row, v).second) throw ValidationError(rp, "duplicate argument tuple");
      }
      s.functions[name] = std::move(fn);
    }
  }
  validate(s);
  return s;
}

// ---------------------------------------------------------------- pF[T] encoding

Encoded encode_tm_factorization(const Transformation& f, std::vector<Transformation> B, std::uint64_t k) {
  if (B.empty()) throw DomainError("encode: B must be nonempty");
  const std::size_t n = f.degree();
  for (const auto& b : B)
    if (b.degree() != n) throw DomainError("encode: degree mismatch in B");
  std::vector<Transformation> list;
  for (auto& b : B)
    if (std::find(list.begin(), list.end(), b) == list.end()) list.push_back(std::move(b));
  auto id = Transformation::identity(n);
  if (std::find(list.begin(), list.end(), id) == list.end()) list.push_back(id);

  Encoded e;
  e.B = list;
  Structure& s = e.structure;
  s.size = n + list.size();
  for (std::size_t a = 1; a <= n; ++a) s.names.push_back(std::to_string(a));
  for (std::size_t i = 0; i < list.size(); ++i) s.names.push_back("B" + std::to_string(i + 1));

  const std::size_t g = n + static_cast<std::size_t>(std::min_element(list.begin(), list.end()) - list.begin());
  auto& P = s.relations["P"];
  P.arity = 1;
  auto& Q = s.relations["Q"];
  Q.arity = 2;
  auto& h = s.functions["h"];
  h.arity = 2;
  for (std::size_t i = 0; i < list.size(); ++i) P.tuples.insert({n + i});
  for (std::size_t a = 0; a < n; ++a) Q.tuples.insert({a, static_cast<std::size_t>(f(static_cast<Point>(a + 1)) - 1)});
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j < list.size(); ++j) Q.tuples.insert({n + i, n + j});
  for (std::size_t x = 0; x < s.size; ++x)
    for (std::size_t p = 0; p < s.size; ++p) {
      std::size_t v = g;
      if (x < n && p >= n) v = list[p - n](static_cast<Point>(x + 1)) - 1;
      h.table[{x, p}] = v;
    }

  Term chain = Term::var("z");
  std::vector<Formula> conj;
  for (std::uint64_t i = 1; i <= k; ++i) {
    std::string xi = "x" + std::to_string(i);
    conj.push_back(Formula::rel("P", {Term::var(xi)}));
    chain = Term::app("h", {std::move(chain), Term::var(xi)});
  }
  Formula body = Formula::forall("z", Formula::rel("Q", {Term::var("z"), std::move(chain)}));
  if (!conj.empty()) {
    conj.push_back(std::move(body));
    body = Formula::conj(std::move(conj));
  }
  for (std::uint64_t i = k; i >= 1; --i) body = Formula::exists("x" + std::to_string(i), std::move(body));
  e.sentence = std::move(body);
  return e;
}

}  // namespace facto::fo
