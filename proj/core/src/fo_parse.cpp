#include <cctype>

#include "facto/errors.hpp"
#include "facto/fo.hpp"

namespace facto::fo {

namespace {

// A parsed s-expression: an atom or a list, with the byte offset where it starts.
struct Sexp {
  std::size_t pos = 0;
  std::string atom;
  std::vector<Sexp> list;
  bool is_list = false;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : s_(text) {}

  Sexp read_top() {
    Sexp e = read();
    skip();
    if (i_ != s_.size()) throw ParseError(i_, "trailing input");
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  Sexp read() {
    skip();
    if (i_ >= s_.size()) throw ParseError(i_, "unexpected end of input");
    Sexp e;
    e.pos = i_;
    if (s_[i_] == '(') {
      e.is_list = true;
      ++i_;
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw ParseError(i_, "missing ')'");
        if (s_[i_] == ')') {
          ++i_;
          return e;
        }
        e.list.push_back(read());
      }
    }
    if (s_[i_] == ')') throw ParseError(i_, "unexpected ')'");
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')')
      e.atom.push_back(s_[i_++]);
    return e;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

bool keyword(const std::string& a) {
  return a == "exists" || a == "forall" || a == "and" || a == "or" || a == "not" || a == "=";
}

Term to_term(const Sexp& e) {
  if (!e.is_list) {
    if (e.atom.empty() || keyword(e.atom)) throw ParseError(e.pos, "expected a term");
    return Term::var(e.atom);
  }
  if (e.list.empty() || e.list[0].is_list || keyword(e.list[0].atom))
    throw ParseError(e.pos, "expected a function application");
  std::vector<Term> args;
  for (std::size_t i = 1; i < e.list.size(); ++i) args.push_back(to_term(e.list[i]));
  return Term::app(e.list[0].atom, std::move(args));
}

Formula to_formula(const Sexp& e) {
  if (!e.is_list || e.list.empty() || e.list[0].is_list) throw ParseError(e.pos, "expected a formula");
  const std::string& head = e.list[0].atom;
  const auto n = e.list.size();
  if (head == "exists" || head == "forall") {
    if (n != 3) throw ParseError(e.pos, head + " takes a variable (or list) and a body");
    std::vector<std::string> vars;
    const Sexp& v = e.list[1];
    if (v.is_list) {
      for (const auto& x : v.list) {
        if (x.is_list || keyword(x.atom)) throw ParseError(x.pos, "expected a variable");
        vars.push_back(x.atom);
      }
      if (vars.empty()) throw ParseError(v.pos, "empty variable list");
    } else {
      if (keyword(v.atom)) throw ParseError(v.pos, "expected a variable");
      vars.push_back(v.atom);
    }
    Formula body = to_formula(e.list[2]);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      body = head == "exists" ? Formula::exists(*it, std::move(body)) : Formula::forall(*it, std::move(body));
    return body;
  }
  if (head == "and" || head == "or") {
    if (n < 3) throw ParseError(e.pos, head + " needs at least two operands");
    std::vector<Formula> subs;
    for (std::size_t i = 1; i < n; ++i) subs.push_back(to_formula(e.list[i]));
    return head == "and" ? Formula::conj(std::move(subs)) : Formula::disj(std::move(subs));
  }
  if (head == "not") {
    if (n != 2) throw ParseError(e.pos, "not takes one operand");
    return Formula::neg(to_formula(e.list[1]));
  }
  if (head == "=") {
    if (n != 3) throw ParseError(e.pos, "= takes two terms");
    return Formula::eq(to_term(e.list[1]), to_term(e.list[2]));
  }
  std::vector<Term> args;
  for (std::size_t i = 1; i < n; ++i) args.push_back(to_term(e.list[i]));
  return Formula::rel(head, std::move(args));
}

}  // namespace

Formula parse_sentence(std::string_view text) { return to_formula(Reader(text).read_top()); }

std::string to_string(const Term& t) {
  if (t.kind == Term::Kind::Var) return t.name;
  std::string s = "(" + t.name;
  for (const auto& a : t.args) s += " " + to_string(a);
  return s + ")";
}

std::string to_string(const Formula& f) {
  std::string s;
  switch (f.kind) {
    case Formula::Kind::Rel:
      s = "(" + f.name;
      for (const auto& t : f.terms) s += " " + to_string(t);
      return s + ")";
    case Formula::Kind::Eq: return "(= " + to_string(f.terms[0]) + " " + to_string(f.terms[1]) + ")";
    case Formula::Kind::Not: return "(not " + to_string(f.subs[0]) + ")";
    case Formula::Kind::And:
    case Formula::Kind::Or:
      s = f.kind == Formula::Kind::And ? "(and" : "(or";
      for (const auto& g : f.subs) s += " " + to_string(g);
      return s + ")";
    case Formula::Kind::Exists: return "(exists " + f.name + " " + to_string(f.subs[0]) + ")";
    case Formula::Kind::Forall: return "(forall " + f.name + " " + to_string(f.subs[0]) + ")";
  }
  return s;
}

}  // namespace facto::fo
