#include <functional>
#include <future>

#include "prym/effectivity.hpp"
#include "prym/errors.hpp"
#include "structure.hpp"

namespace prym {

// ------------------------------------------------------------------ decomposition

nlohmann::json DecompositionReport::to_json(const LatticeModel& model) const {
  nlohmann::json j;
  j["no_moving_decomposition"] = no_moving_decomposition;
  j["rigid_cap"] = rigid_cap;
  j["inspected_count"] = inspected.size();
  auto list = nlohmann::json::array();
  for (const auto& d : inspected) {
    list.push_back({{"A1", model.format(d.a1)},
                    {"A2", model.format(d.a2)},
                    {"A1_rigid", d.a1_rigid},
                    {"A2_rigid", d.a2_rigid}});
  }
  j["decompositions"] = std::move(list);
  return j;
}

DecompositionReport check_no_moving_decomposition(const LatticeModel& model, const LatticeClass& h,
                                                  std::int64_t rigid_cap) {
  const detail::Structure st = detail::analyze(model);
  if (st.positive.size() != 1) {
    throw UnsupportedShape("decomposition check needs a model with one non-curve coordinate, got " +
                           std::to_string(st.positive.size()));
  }
  if (!model.is_member(h)) throw UnsupportedShape(model.format(h) + " is not a lattice member");
  const std::size_t lc = st.positive.front();
  if (h.doubled(lc) != 2) {
    throw UnsupportedShape("decomposition check needs " + model.labels()[lc] + "-coefficient 1, got " +
                           h.coeff(lc).str());
  }
  if (rigid_cap < 0) throw ParameterError("rigid_cap must be nonnegative");

  DecompositionReport rep;
  rep.rigid_cap = rigid_cap;
  std::vector<std::int64_t> d(model.rank(), 0);
  // The part with L-coefficient 0 is sum n_j N_j; the other carries L.
  std::function<void(std::size_t)> walk = [&](std::size_t pos) {
    if (pos == st.exceptional.size()) {
      const LatticeClass rigid(model.name(), d);
      const LatticeClass rest = h - rigid;
      if (!model.is_member(rigid) || !model.is_member(rest)) return;
      rep.inspected.push_back({rigid, rest, true, false});
      rep.inspected.push_back({rest, rigid, false, true});
      return;
    }
    for (std::int64_t n = 0; n <= rigid_cap; ++n) {
      d[st.exceptional[pos]] = 2 * n;
      walk(pos + 1);
    }
    d[st.exceptional[pos]] = 0;
  };
  walk(0);
  rep.no_moving_decomposition = std::all_of(rep.inspected.begin(), rep.inspected.end(),
                                            [](const Decomposition& x) { return x.a1_rigid || x.a2_rigid; });
  return rep;
}

// ------------------------------------------------------------------ suites

std::string to_string(VanishingSuite s) {
  switch (s) {
    case VanishingSuite::lemma_4_2: return "lemma_4_2";
    case VanishingSuite::lemma_4_4: return "lemma_4_4";
    case VanishingSuite::thm_3_1_decomposition: return "thm_3_1_decomposition";
    case VanishingSuite::thm_4_1_chain: return "thm_4_1_chain";
  }
  return "?";
}

VanishingSuite parse_vanishing_suite(const std::string& s) {
  for (auto k : {VanishingSuite::lemma_4_2, VanishingSuite::lemma_4_4, VanishingSuite::thm_3_1_decomposition,
                 VanishingSuite::thm_4_1_chain}) {
    if (to_string(k) == s) return k;
  }
  throw ParameterError("unknown suite '" + s + "'");
}

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::error: return "error";
  }
  return "?";
}

int suite_depth(int i) { return std::max(kDefaultMaxDepth, i + 1); }

namespace {

// Proves and replays one class; appends a line to `msg` on failure.
bool prove_and_replay(const LatticeModel& m, const std::string& expr, int depth, nlohmann::json& out,
                      std::string& msg) {
  const LatticeClass b = m.class_from_expr(expr);
  const auto outcome = prove_non_effective(m, b, {depth, kDefaultCoefficientCap});
  if (!outcome.proven()) {
    msg += expr + ": " + outcome.message + "; ";
    out = {{"class", expr}, {"proven", false}, {"message", outcome.message}};
    return false;
  }
  const auto problems = replay_certificate(m, *outcome.certificate);
  out = {{"class", expr}, {"proven", true}, {"replay_ok", problems.empty()}, {"certificate",
                                                                               outcome.certificate->to_json(m)}};
  if (!problems.empty()) {
    msg += expr + ": replay failed (" + problems.front() + "); ";
    return false;
  }
  return true;
}

SuiteEntry run_one(VanishingSuite kind, int p) {
  SuiteEntry e;
  e.suite = to_string(kind);
  e.parameter = p;
  try {
    bool ok = true;
    std::string msg;
    switch (kind) {
      case VanishingSuite::lemma_4_2: {
        const auto m = build_model(ModelKind::standard_hyperelliptic, 2 * p + 1);
        const std::string expr = "L - " + std::to_string(p) + "E - e";
        ok = prove_and_replay(m, expr, suite_depth(p), e.artifact, msg);
        break;
      }
      case VanishingSuite::lemma_4_4: {
        const auto m = build_model(ModelKind::nonstandard_hyperelliptic, p);
        const std::string i = std::to_string(p);
        const std::string im1 = std::to_string(p - 1);
        e.artifact = nlohmann::json::array();
        for (const auto& expr : {im1 + "E + e", i + "E - e", "R - " + im1 + "E - e", "R - " + i + "E + e"}) {
          nlohmann::json one;
          ok = prove_and_replay(m, expr, suite_depth(p), one, msg) && ok;
          e.artifact.push_back(std::move(one));
        }
        break;
      }
      case VanishingSuite::thm_3_1_decomposition: {
        const auto m = build_model(ModelKind::standard, p);
        const auto rep = check_no_moving_decomposition(m, m.class_from_expr("L - e"));
        ok = rep.no_moving_decomposition;
        if (!ok) msg = "a decomposition with two moving parts exists";
        e.artifact = rep.to_json(m);
        e.artifact.erase("decompositions");
        break;
      }
      case VanishingSuite::thm_4_1_chain: {
        const auto m = build_model(ModelKind::standard_hyperelliptic, 2 * p + 1);
        const std::string i = std::to_string(p);
        const auto start = m.class_from_expr("L + e - " + i + "E");
        const auto peeled = peel_base_curves(m, start);
        const auto expect = m.class_from_expr("L - e - " + i + "E");
        e.artifact["peel"] = {{"from", m.format(start)}, {"to", m.format(peeled)}};
        if (peeled != expect) {
          ok = false;
          msg += "peeling gave " + m.format(peeled) + "; ";
        }
        nlohmann::json a, b;
        ok = prove_and_replay(m, "L - e - " + i + "E", suite_depth(p), a, msg) && ok;
        ok = prove_and_replay(m, i + "E - e", suite_depth(p), b, msg) && ok;
        e.artifact["proofs"] = {std::move(a), std::move(b)};
        break;
      }
    }
    e.status = ok ? Status::pass : Status::fail;
    e.message = ok ? "ok" : msg;
  } catch (const std::exception& ex) {
    e.status = Status::error;
    e.message = ex.what();
  }
  return e;
}

}  // namespace

std::vector<SuiteEntry> verify_vanishing_suite(VanishingSuite kind, int first, int last) {
  std::vector<std::future<SuiteEntry>> jobs;
  for (int p = first; p <= last; ++p) jobs.push_back(std::async(std::launch::async, run_one, kind, p));
  std::vector<SuiteEntry> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace prym
