// prymcheck: command-line front end for the prym library.
//
//   bn {rho|expdim|pairs|slope}
//   lattice {pair|member|prove|peel|decomp|replay|model}
//   class {pencils|solve|srange}
//   verify-all
//
// Exit status: 0 success, 1 verification failure, 2 usage or parameter error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "prym/brill_noether.hpp"
#include "prym/divisor.hpp"
#include "prym/effectivity.hpp"
#include "prym/errors.hpp"
#include "prym/lattice.hpp"
#include "prym/report.hpp"

using namespace prym;
using nlohmann::json;

namespace {

struct Options {
  bool json = false;
  std::optional<long> g, i, r, d, e, f;
  std::string model = "standard";
  std::string cls;
  std::string with;
  int depth = kDefaultMaxDepth;
  std::string out;
  std::string file;
  int max_i = 10;
  int max_g = 20;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

long need(const std::optional<long>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required option ") + flag);
  return *v;
}

LatticeModel select_model(const Options& o) {
  const ModelKind kind = parse_model_kind(o.model);
  if (kind == ModelKind::nonstandard || kind == ModelKind::nonstandard_hyperelliptic) {
    return build_model(kind, static_cast<int>(need(o.i, "--i")));
  }
  return build_model(kind, static_cast<int>(need(o.g, "--g")));
}

// Prints either the JSON document or the text lines, and writes the JSON to
// --out when given.
void emit(const Options& o, const json& j, const std::string& text) {
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot write " + o.out);
    f << j.dump(2) << "\n";
  }
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  }
}

int cmd_bn(const std::string& what, const Options& o) {
  if (what == "rho") {
    const auto v = rho(need(o.g, "--g"), need(o.r, "--r"), need(o.d, "--d"));
    emit(o, {{"rho", v}}, std::to_string(v));
  } else if (what == "expdim") {
    std::int64_t v = 0;
    if (o.r) {
      v = secant_expected_dim(need(o.e, "--e"), need(o.f, "--f"), *o.r);
    } else {
      v = prym_secant_expected_dim(need(o.g, "--g"), need(o.e, "--e"), need(o.f, "--f"));
    }
    emit(o, {{"expected_dim", v}}, std::to_string(v));
  } else if (what == "pairs") {
    const auto pairs = divisorial_pairs(need(o.g, "--g"));
    json arr = json::array();
    std::string text;
    for (const auto& [e, f] : pairs) {
      arr.push_back({{"e", e}, {"f", f}});
      text += "(" + std::to_string(e) + ", " + std::to_string(f) + ")\n";
    }
    emit(o, {{"g", *o.g}, {"pairs", arr}}, text.empty() ? "none\n" : text);
  } else if (what == "slope") {
    const auto s = hurwitz_slope(need(o.g, "--g"));
    emit(o, {{"slope", s.str()}}, s.str());
  }
  return 0;
}

std::string certificate_text(const LatticeModel& m, const NonEffectivityCertificate& c) {
  std::string t = "not effective: " + m.format(c.target()) + "\n";
  t += "depth " + std::to_string(c.depth()) + ", " + std::to_string(c.nodes.size()) + " node(s)\n";
  const auto& root = c.root();
  if (!root.peeled.empty()) t += "after peeling: " + m.format(root.reduced) + "\n";
  t += "root: " + to_string(root.kind) + "\n";
  for (const auto& cand : root.candidates) {
    t += "  D = " + m.format(cand.d) + "  (B.D = " + cand.pairing.str() + ")  " + to_string(cand.reason.tag) +
         " on " + cand.reason.subject + "\n";
  }
  if (!root.contradictions.empty()) {
    t += "  " + std::to_string(root.contradictions.size()) + " branch(es) closed by B.D >= 0\n";
  }
  return t;
}

int cmd_lattice(const std::string& what, const Options& o) {
  if (what == "replay") {
    std::ifstream in(o.file);
    if (!in) throw UsageError("cannot read " + o.file);
    const json j = json::parse(in);
    const LatticeModel m = j.contains("model") ? LatticeModel::from_json(j.at("model")) : select_model(o);
    const auto cert = NonEffectivityCertificate::from_json(j, m);
    const auto problems = replay_certificate(m, cert);
    std::string text = problems.empty() ? "certificate valid\n" : "certificate INVALID\n";
    for (const auto& p : problems) text += "  " + p + "\n";
    emit(o, {{"valid", problems.empty()}, {"problems", problems}}, text);
    return problems.empty() ? 0 : 1;
  }

  const LatticeModel m = select_model(o);
  if (what == "model") {
    emit(o, m.to_json(), m.to_json().dump(2));
    return 0;
  }
  const std::string expr = o.cls.empty() && what == "decomp" ? "L - e" : o.cls;
  if (expr.empty()) throw UsageError("missing required option --class");
  const LatticeClass a = m.class_from_expr(expr);

  if (what == "pair") {
    const LatticeClass b = o.with.empty() ? a : m.class_from_expr(o.with);
    const auto v = m.pair(a, b);
    emit(o, {{"pairing", v.str()}}, v.str());
  } else if (what == "member") {
    const bool v = m.is_member(a);
    emit(o, {{"member", v}, {"class", a.to_json()}}, v ? "true" : "false");
  } else if (what == "peel") {
    const auto t = peel_with_trace(m, a);
    json steps = json::array();
    for (auto s : t.steps) steps.push_back(m.format(m.known_neg2_curves()[s]));
    emit(o, {{"result", t.result.to_json()}, {"result_text", m.format(t.result)}, {"subtracted", steps}},
         m.format(t.result));
  } else if (what == "decomp") {
    const auto rep = check_no_moving_decomposition(m, a);
    emit(o, rep.to_json(m),
         std::string(rep.no_moving_decomposition ? "no moving decomposition" : "moving decomposition found") + " (" +
             std::to_string(rep.inspected.size()) + " inspected)");
    return rep.no_moving_decomposition ? 0 : 1;
  } else if (what == "prove") {
    const auto outcome = prove_non_effective(m, a, {o.depth, kDefaultCoefficientCap});
    if (!outcome.proven()) {
      json surv = json::array();
      std::string text = "no proof found: " + outcome.message + "\n";
      for (const auto& s : outcome.survivors) {
        surv.push_back(m.format(s));
        text += "  survivor D = " + m.format(s) + "\n";
      }
      emit(o, {{"proven", false}, {"message", outcome.message}, {"survivors", surv}}, text);
      return 1;
    }
    emit(o, outcome.certificate->to_json(m), certificate_text(m, *outcome.certificate));
  }
  return 0;
}

int cmd_class(const std::string& what, const Options& o) {
  if (what == "pencils") {
    const auto g = need(o.g, "--g");
    const auto s = standard_pencil_vector(g);
    json j = {{"standard", s.to_json()}};
    auto line = [](const TestCurveVector& t) {
      return t.name + ": (" + t.lambda.str() + ", " + t.d0p.str() + ", " + t.d0pp.str() + ", " + t.d0ram.str() +
             ")  pullback delta0 = " + pullback_delta0(t).str() + "\n";
    };
    std::string text = line(s);
    if (g % 2 == 1 && g >= 3) {
      const auto n = nonstandard_pencil_vector(g);
      j["nonstandard"] = n.to_json();
      text += line(n);
    }
    emit(o, j, text);
  } else if (what == "solve") {
    const auto sol = solve_difference_class(need(o.i, "--i"));
    const auto& v = sol.normalized;
    emit(o, sol.to_json(),
         "(" + v.lambda.str() + ", " + v.d0p.str() + ", undetermined [" + sol.d0pp_annotation.str() + "], " +
             v.d0ram.str() + ")");
  } else if (what == "srange") {
    const auto [a, b] = srange_coefficients(need(o.i, "--i"));
    emit(o, {{"i", *o.i}, {"coefficients", {a.str(), b.str()}}}, "(" + a.str() + ", " + b.str() + ")");
  }
  return 0;
}

int cmd_verify_all(const Options& o) {
  const auto rep = verify_all(o.max_i, o.max_g);
  std::string text;
  for (const auto& e : rep.entries) {
    text += e.suite + " " + std::to_string(e.parameter) + ": " + to_string(e.status);
    if (e.status != Status::pass) text += " (" + e.message + ")";
    text += "\n";
  }
  text += rep.all_pass() ? "all pass\n" : "FAILURES\n";
  emit(o, rep.to_json(), text);
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for Nikulin lattices, Prym secant loci and test-curve classes"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "print JSON")->configurable(false);
  app.fallthrough();

  std::string chosen;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* sc = parent->add_subcommand(name, help);
    sc->callback([&chosen, parent, name] { chosen = parent->get_name() + " " + name; });
    sc->add_option("--out", o.out, "also write the JSON result to FILE");
    return sc;
  };
  auto int_opt = [](CLI::App* sc, const std::string& flag, std::optional<long>& v, const std::string& help) {
    sc->add_option_function<long>(flag, [&v](const long& x) { v = x; }, help);
  };
  auto model_opts = [&](CLI::App* sc) {
    sc->add_option("--model", o.model, "standard | standard-hyp | nonstandard | nonstandard-hyp");
    int_opt(sc, "--g", o.g, "genus (standard models)");
    int_opt(sc, "--i", o.i, "index i, L^2 = 16i - 4 (non-standard models)");
  };

  auto* bn = app.add_subcommand("bn", "Brill-Noether and secant dimension counts");
  bn->require_subcommand(1);
  {
    auto* s = leaf(bn, "rho", "g - (r+1)(g-d+r)");
    int_opt(s, "--g", o.g, "genus");
    int_opt(s, "--r", o.r, "rank");
    int_opt(s, "--d", o.d, "degree");
    s = leaf(bn, "expdim", "expected secant dimension (Prym-canonical unless --r is given)");
    int_opt(s, "--g", o.g, "genus");
    int_opt(s, "--e", o.e, "degree of the divisor");
    int_opt(s, "--f", o.f, "number of failed conditions");
    int_opt(s, "--r", o.r, "dimension of the linear system");
    s = leaf(bn, "pairs", "(e, f) with expected dimension -1");
    int_opt(s, "--g", o.g, "genus");
    s = leaf(bn, "slope", "slope 6 + 12/(g+1)");
    int_opt(s, "--g", o.g, "genus");
  }

  auto* lat = app.add_subcommand("lattice", "Nikulin lattice computations");
  lat->require_subcommand(1);
  const std::pair<const char*, const char*> lattice_cmds[] = {
      {"pair", "intersection number of two classes"},
      {"member", "whether a class lies in the lattice"},
      {"prove", "search for a non-effectivity certificate"},
      {"peel", "subtract (-2)-curves in the base locus"},
      {"decomp", "look for a decomposition with a moving part"},
      {"model", "print the model (basis, Gram matrix, named classes)"},
  };
  for (const auto& [name, help] : lattice_cmds) {
    auto* s = leaf(lat, name, help);
    model_opts(s);
    if (std::string(name) != "model") s->add_option("--class", o.cls, "class expression, e.g. \"L - 3*E - e\"");
    if (std::string(name) == "pair") s->add_option("--with", o.with, "second class (default: the same class)");
    if (std::string(name) == "prove") s->add_option("--depth", o.depth, "maximum recursion depth")->check(CLI::PositiveNumber);
  }
  {
    auto* s = leaf(lat, "replay", "check a certificate file");
    s->add_option("file", o.file, "certificate JSON")->required();
    model_opts(s);
  }

  auto* cls = app.add_subcommand("class", "divisor classes on the moduli of Prym curves");
  cls->require_subcommand(1);
  {
    auto* s = leaf(cls, "pencils", "test-curve vectors of the two Nikulin pencils");
    int_opt(s, "--g", o.g, "genus");
    s = leaf(cls, "solve", "class of the difference divisor");
    int_opt(s, "--i", o.i, "g = 2i + 1");
    s = leaf(cls, "srange", "binomial multipliers");
    int_opt(s, "--i", o.i, "index");
  }

  auto* va = app.add_subcommand("verify-all", "run every suite");
  va->callback([&chosen] { chosen = "verify-all"; });
  va->add_option("--max-i", o.max_i, "largest i");
  va->add_option("--max-g", o.max_g, "largest g for the decomposition suite");
  va->add_option("--out", o.out, "also write the report to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto space = chosen.find(' ');
    const std::string group = chosen.substr(0, space);
    const std::string what = space == std::string::npos ? "" : chosen.substr(space + 1);
    if (group == "bn") return cmd_bn(what, o);
    if (group == "lattice") return cmd_lattice(what, o);
    if (group == "class") return cmd_class(what, o);
    if (group == "verify-all") return cmd_verify_all(o);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedShape& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
