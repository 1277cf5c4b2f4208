#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "facto/perm.hpp"

namespace facto::fo {

/// Universe elements are 0..size-1. Names are optional and only used for printing.
struct Structure {
  std::size_t size = 0;
  std::vector<std::string> names;

  struct Relation {
    std::size_t arity = 0;
    std::set<std::vector<std::size_t>> tuples;
  };
  /// Total map: table[args] for every tuple of `arity` universe elements.
  struct Function {
    std::size_t arity = 0;
    std::map<std::vector<std::size_t>, std::size_t> table;
  };
  std::map<std::string, Relation, std::less<>> relations;
  std::map<std::string, Function, std::less<>> functions;
};

/// Throws ValidationError unless every tuple lies in the universe and every function is total.
void validate(const Structure& s);

struct Term {
  enum class Kind { Var, App };
  Kind kind = Kind::Var;
  std::string name;  ///< variable or function symbol
  std::vector<Term> args;

  static Term var(std::string v) { return Term{Kind::Var, std::move(v), {}}; }
  static Term app(std::string f, std::vector<Term> args) { return Term{Kind::App, std::move(f), std::move(args)}; }
};

struct Formula {
  enum class Kind { Rel, Eq, Not, And, Or, Exists, Forall };
  Kind kind = Kind::Rel;
  std::string name;         ///< relation symbol, or the bound variable of a quantifier
  std::vector<Term> terms;  ///< Rel arguments, or the two sides of Eq
  std::vector<Formula> subs;

  static Formula rel(std::string r, std::vector<Term> ts) { return Formula{Kind::Rel, std::move(r), std::move(ts), {}}; }
  static Formula eq(Term a, Term b) { return Formula{Kind::Eq, {}, {std::move(a), std::move(b)}, {}}; }
  static Formula neg(Formula f) { return Formula{Kind::Not, {}, {}, {std::move(f)}}; }
  static Formula conj(std::vector<Formula> fs) { return Formula{Kind::And, {}, {}, std::move(fs)}; }
  static Formula disj(std::vector<Formula> fs) { return Formula{Kind::Or, {}, {}, std::move(fs)}; }
  static Formula exists(std::string v, Formula f) { return Formula{Kind::Exists, std::move(v), {}, {std::move(f)}}; }
  static Formula forall(std::string v, Formula f) { return Formula{Kind::Forall, std::move(v), {}, {std::move(f)}}; }
};

std::size_t length(const Term& t);
/// Formula length; an n-ary conjunction or disjunction counts n-1 connectives.
std::size_t length(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
bool is_sentence(const Formula& f);

/// Throws DomainError on an uninterpreted symbol, an arity mismatch, or a free variable.
bool evaluate(const Structure& s, const Formula& f);

/// Shape of the prenex form obtained by pulling quantifiers outward.
struct Fragment {
  bool in_sigma = false;  ///< prefix starts with an existential block (or is empty)
  std::size_t l = 0;      ///< number of alternating quantifier blocks
  std::size_t u = 0;      ///< largest block among blocks 2..l
  bool func = false;      ///< some term applies a function symbol
  std::vector<std::size_t> block_sizes;
  std::string reason;     ///< why in_sigma is false

  /// "Sigma_{2,1}^func", "Sigma_{1}", or "none".
  std::string tag() const;
};

/// Quantifier blocks of the prenex form. Bound variables must be pairwise distinct
/// and distinct from free ones, otherwise in_sigma is false.
Fragment classify_fragment(const Formula& f);

/// S-expression syntax:
///   (exists x F) (forall x F) (exists (x y) F) (and F ...) (or F ...) (not F) (= t t) (R t ...)
/// Terms are variables or (f t ...). Throws ParseError with a byte offset.
Formula parse_sentence(std::string_view text);
std::string to_string(const Term& t);
std::string to_string(const Formula& f);

/// JSON: {"size": N, "names"?: [...], "relations": {R: {"arity": a, "tuples": [[...]]}},
///        "functions": {f: {"arity": a, "table": [[args..., value], ...]}}}
nlohmann::json to_json(const Structure& s);
Structure structure_from_json(const nlohmann::json& j);

struct Encoded {
  Structure structure;
  Formula sentence;
  std::vector<Transformation> B;  ///< list used, identity adjoined when missing
};

/// Structure ([1,n] + B, P = B, Q = graph of f plus B x B, h = action) and the sentence
/// "exists x_1..x_k with P(x_i) such that for all z, Q(z, h(..h(z,x_1)..,x_k))".
/// True iff f is a product of at most k elements of B. Throws DomainError on an empty B.
Encoded encode_tm_factorization(const Transformation& f, std::vector<Transformation> B, std::uint64_t k);

}  // namespace facto::fo
