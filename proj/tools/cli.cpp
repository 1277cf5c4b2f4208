#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "facto/errors.hpp"
#include "facto/fo.hpp"
#include "facto/instance.hpp"
#include "facto/random.hpp"
#include "facto/reductions.hpp"
#include "facto/solvers.hpp"
#include "facto/verify.hpp"

namespace facto::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ChangeFlavor flavor_from(const std::string& s) {
  if (s == "unbounded") return ChangeFlavor::Unbounded;
  if (s == "bounded") return ChangeFlavor::Bounded;
  if (s == "zero_one") return ChangeFlavor::ZeroOne;
  throw UsageError("unknown flavor " + s);
}

ProblemKind kind_from(const std::string& s) {
  if (s == "F") return ProblemKind::F;
  if (s == "KS") return ProblemKind::KS;
  if (s == "SSS") return ProblemKind::SSS;
  throw UsageError("unknown problem kind " + s);
}

struct CapFlags {
  std::size_t max_n = 6;
  std::size_t max_m = 4;
  std::uint64_t max_k = 5;
  std::string max_modulus = "60";
  std::string max_value = "30";

  void add(CLI::App* app) {
    app->add_option("--max-n", max_n, "degree / dimension cap")->capture_default_str();
    app->add_option("--max-m", max_m, "list length cap")->capture_default_str();
    app->add_option("--max-k", max_k, "parameter cap")->capture_default_str();
    app->add_option("--max-modulus", max_modulus, "modulus cap")->capture_default_str();
    app->add_option("--max-value", max_value, "value and coin cap")->capture_default_str();
  }

  RandomCaps caps() const {
    RandomCaps c;
    c.max_n = max_n;
    c.max_m = max_m;
    c.max_k = max_k;
    c.max_modulus = parse_bigint(max_modulus);
    c.max_value = parse_bigint(max_value);
    return c;
  }
};

json mc_document(const json& doc) {
  json out;
  if (doc.contains("sentence")) {
    if (!doc["sentence"].is_string()) throw ParseError(std::string("/sentence"), "expected an s-expression string");
    if (!doc.contains("structure")) throw ParseError(std::string("/structure"), "missing field");
    auto s = fo::structure_from_json(doc["structure"]);
    auto f = fo::parse_sentence(doc["sentence"].get<std::string>());
    out["result"] = fo::evaluate(s, f);
    out["length"] = fo::length(f);
    out["fragment"] = fo::classify_fragment(f).tag();
    return out;
  }
  // A factorization instance over T_n (or S_n): encode and check.
  auto any = instance_from_json(doc);
  const auto* inst = std::get_if<Instance>(&any);
  if (!inst || inst->kind != ProblemKind::F ||
      (class_of(inst->monoid) != MonoidClass::Transformation && class_of(inst->monoid) != MonoidClass::Symmetric))
    throw DomainError("mc expects {structure, sentence} or a factorization instance over T_n or S_n");
  auto as_t = [](const Element& x) {
    if (const auto* p = std::get_if<Permutation>(&x)) return Transformation(*p);
    return std::get<Transformation>(x);
  };
  std::vector<Transformation> B;
  for (const auto& g : inst->generators) B.push_back(as_t(g));
  if (B.empty()) B.push_back(Transformation::identity(degree_of(inst->monoid)));
  auto enc = fo::encode_tm_factorization(as_t(inst->target), B, inst->k);
  out["result"] = fo::evaluate(enc.structure, enc.sentence);
  out["length"] = fo::length(enc.sentence);
  out["fragment"] = fo::classify_fragment(enc.sentence).tag();
  out["universe"] = enc.structure.size;
  out["sentence"] = fo::to_string(enc.sentence);
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parameterized factorization in monoids: solvers, reductions and verification", "facto"};
  app.require_subcommand(1);
  app.fallthrough();
  int indent = 2;
  app.add_option("--indent", indent, "JSON indentation, -1 for one line")->capture_default_str();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "decide an instance and print the verdict");
  std::string solve_file;
  std::uint64_t state_cap = default_state_cap();
  bool no_witness = false;
  solve_cmd->add_option("file", solve_file, "instance JSON, - for stdin")->required();
  solve_cmd->add_option("--state-cap", state_cap, "solver state cap")->capture_default_str();
  solve_cmd->add_flag("--no-witness", no_witness, "skip witness reconstruction");

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "apply a reduction rule or chain");
  std::string reduce_file, rule;
  std::uint64_t slice_d = 1;
  std::string slice_flavor = "unbounded", slice_a = "1";
  reduce_cmd->add_option("--rule", rule, "rule or chain name")->required();
  reduce_cmd->add_option("file", reduce_file, "instance JSON, - for stdin")->required();
  reduce_cmd->add_option("--slice-d", slice_d, "slice index for subsetsum-to-change-slice")->capture_default_str();
  reduce_cmd->add_option("--slice-flavor", slice_flavor, "unbounded|bounded|zero_one")->capture_default_str();
  reduce_cmd->add_option("--slice-a", slice_a, "objective coefficient a >= 1")->capture_default_str();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "compare oracle verdicts before and after a rule");
  std::string verify_rule_name;
  std::uint64_t trials = 200, seed = 1;
  double bias = 0.5;
  bool no_time = false;
  CapFlags verify_caps;
  verify_cmd->add_option("--rule", verify_rule_name, "rule or chain name")->required();
  verify_cmd->add_option("--trials", trials)->capture_default_str();
  verify_cmd->add_option("--seed", seed)->capture_default_str();
  verify_cmd->add_option("--bias", bias, "probability of a planted positive")->capture_default_str();
  verify_cmd->add_flag("--no-time", no_time, "omit wall time for byte-identical output");
  verify_caps.add(verify_cmd);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "print a random instance");
  std::string gen_monoid = "integers", gen_kind = "SSS", gen_rule, gen_change;
  bool gen_le = false, gen_distinct = false, gen_approx = false;
  std::uint64_t gen_seed = 1;
  double gen_bias = 0.5;
  std::optional<std::uint64_t> gen_k;
  std::optional<std::size_t> gen_m;
  CapFlags gen_caps;
  gen_cmd->add_option("--monoid", gen_monoid, "monoid kind tag")->capture_default_str();
  gen_cmd->add_option("--kind", gen_kind, "F|KS|SSS")->capture_default_str();
  gen_cmd->add_flag("--le", gen_le, "at-most-k variant");
  gen_cmd->add_flag("--distinct", gen_distinct, "pairwise distinct list (SSS)");
  gen_cmd->add_option("--k", gen_k, "fixed parameter");
  gen_cmd->add_option("--m", gen_m, "fixed list length");
  gen_cmd->add_option("--seed", gen_seed)->capture_default_str();
  gen_cmd->add_option("--bias", gen_bias)->capture_default_str();
  gen_cmd->add_option("--rule", gen_rule, "draw from the domain of this rule instead");
  gen_cmd->add_option("--change", gen_change, "change-making flavor: unbounded|bounded|zero_one");
  gen_cmd->add_flag("--approx", gen_approx, "change-making approximation variant");
  gen_caps.add(gen_cmd);

  // mc
  auto* mc_cmd = app.add_subcommand("mc", "first-order model checking");
  std::string mc_file;
  mc_cmd->add_option("file", mc_file, "{structure, sentence} JSON or an F instance over T_n")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve_cmd) {
      auto inst = parse_instance(read_input(solve_file));
      SolveOptions o;
      o.state_cap = state_cap;
      o.want_witness = !no_witness;
      auto v = solve(inst, o);
      out << verdict_to_json(v).dump(indent) << "\n";
      return 0;
    }
    if (*reduce_cmd) {
      if (!is_rule(rule)) throw UsageError("unknown rule: " + rule);
      auto inst = parse_instance(read_input(reduce_file));
      RuleOptions ro;
      ro.slice.d = slice_d;
      ro.slice.flavor = flavor_from(slice_flavor);
      ro.slice.a = parse_bigint(slice_a);
      out << reduction_to_json(apply_rule(rule, inst, ro)).dump(indent) << "\n";
      return 0;
    }
    if (*verify_cmd) {
      if (!is_rule(verify_rule_name)) throw UsageError("unknown rule: " + verify_rule_name);
      VerifyConfig cfg;
      cfg.rule = verify_rule_name;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.bias = bias;
      cfg.caps = verify_caps.caps();
      auto report = verify_rule(cfg);
      out << to_json(report, !no_time).dump(indent) << "\n";
      return report.disagreements.empty() ? 0 : 1;
    }
    if (*gen_cmd) {
      Rng rng(gen_seed);
      auto caps = gen_caps.caps();
      AnyInstance inst;
      if (!gen_rule.empty()) {
        if (!is_rule(gen_rule)) throw UsageError("unknown rule: " + gen_rule);
        inst = random_rule_input(gen_rule, rng, caps, gen_bias, gen_k).instance;
      } else if (!gen_change.empty()) {
        ChangeRequest req;
        req.flavor = flavor_from(gen_change);
        req.approx = gen_approx;
        req.bias = gen_bias;
        req.k = gen_k;
        inst = random_change_instance(rng, req, caps);
      } else {
        auto cls = class_from_tag(gen_monoid);
        if (!cls) throw UsageError("unknown monoid kind " + gen_monoid);
        RandomRequest req;
        req.monoid = *cls;
        req.kind = kind_from(gen_kind);
        req.exact = !gen_le;
        req.distinct = gen_distinct;
        req.bias = gen_bias;
        req.k = gen_k;
        req.m = gen_m;
        inst = random_instance(rng, req, caps);
      }
      out << serialize(inst, indent) << "\n";
      return 0;
    }
    if (*mc_cmd) {
      std::string text = read_input(mc_file);
      json doc;
      try {
        doc = json::parse(text);
      } catch (const json::parse_error& e) {
        throw ParseError(e.byte, e.what());
      }
      out << mc_document(doc).dump(indent) << "\n";
      return 0;
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace facto::cli
