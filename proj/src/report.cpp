#include "prym/report.hpp"

#include <algorithm>
#include <ctime>

#include "prym/brill_noether.hpp"
#include "prym/divisor.hpp"
#include "prym/errors.hpp"

namespace prym {

bool SuiteReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const SuiteEntry& e) { return e.status == Status::pass; });
}

nlohmann::json to_json(const SuiteEntry& e) {
  return {{"suite", e.suite},
          {"parameter", e.parameter},
          {"status", to_string(e.status)},
          {"message", e.message},
          {"artifact", e.artifact}};
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["tool_version"] = tool_version;
  j["timestamp"] = timestamp;
  auto list = nlohmann::json::array();
  for (const auto& e : entries) list.push_back(prym::to_json(e));
  j["entries"] = std::move(list);
  j["all_pass"] = all_pass();
  return j;
}

namespace {

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <typename F>
SuiteEntry run_check(const std::string& suite, int p, F&& check) {
  SuiteEntry e;
  e.suite = suite;
  e.parameter = p;
  try {
    std::string msg;
    const bool ok = check(e.artifact, msg);
    e.status = ok ? Status::pass : Status::fail;
    e.message = ok ? "ok" : msg;
  } catch (const std::exception& ex) {
    e.status = Status::error;
    e.message = ex.what();
  }
  return e;
}

bool check_class(std::int64_t i, nlohmann::json& art, std::string& msg) {
  const auto sol = solve_difference_class(i);
  art = sol.to_json();
  const bool ok = sol.normalized.lambda == Rational(3 * i + 1) && sol.normalized.d0p == Rational(-i, 2) &&
                  sol.normalized.d0ram == Rational(-(2 * i + 1), 4) &&
                  std::all_of(sol.residuals.begin(), sol.residuals.end(), [](const Rational& r) { return r.sign() == 0; });
  if (!ok) msg = "normalized class differs from (3i+1, -i/2, *, -(2i+1)/4)";
  return ok;
}

bool check_pencils(std::int64_t i, nlohmann::json& art, std::string& msg) {
  const std::int64_t g = 2 * i + 1;
  const auto s = standard_pencil_vector(g);
  const auto n = nonstandard_pencil_vector(g);
  art = {{"standard", s.to_json()},
         {"nonstandard", n.to_json()},
         {"standard_pullback_delta0", pullback_delta0(s).str()},
         {"nonstandard_pullback_delta0", pullback_delta0(n).str()}};
  bool ok = true;
  auto want = [&](const TestCurveVector& t, std::int64_t l, std::int64_t a, std::int64_t r) {
    if (t.lambda != Rational(l) || t.d0p != Rational(a) || t.d0pp != Rational(0) || t.d0ram != Rational(r)) {
      ok = false;
      msg += t.name + " pencil differs; ";
    }
  };
  want(s, 2 * i + 2, 12 * i + 8, 8);
  want(n, 2 * i + 1, 12 * i + 6, 4);
  if (pullback_delta0(s) != Rational(euler_nodal_count(24, 2 * g - 2))) {
    ok = false;
    msg += "standard pullback differs from the nodal count; ";
  }
  return ok;
}

bool check_pairs(std::int64_t i, nlohmann::json& art, std::string& msg) {
  const std::int64_t g = 2 * i + 1;
  const auto pairs = divisorial_pairs(g);
  art = nlohmann::json::array();
  for (const auto& [e, f] : pairs) art.push_back({e, f});
  bool ok = std::find(pairs.begin(), pairs.end(), std::make_pair(i, std::int64_t{1})) != pairs.end();
  if (!ok) msg = "(i, 1) missing";
  for (const auto& [e, f] : pairs) {
    if (e - f * (g - 1 - e + f) != -1) {
      ok = false;
      msg += " spurious pair";
    }
  }
  return ok;
}

}  // namespace

SuiteReport verify_all(int max_i, int max_g) {
  if (max_i < 2 || max_g < 6) {
    throw ParameterError("verify_all needs max_i >= 2 and max_g >= 6, got " + std::to_string(max_i) + ", " +
                         std::to_string(max_g));
  }
  SuiteReport r;
  r.tool_version = kToolVersion;
  r.timestamp = utc_now();
  auto add = [&r](std::vector<SuiteEntry> v) {
    for (auto& e : v) r.entries.push_back(std::move(e));
  };
  add(verify_vanishing_suite(VanishingSuite::lemma_4_2, 2, max_i));
  add(verify_vanishing_suite(VanishingSuite::lemma_4_4, 2, max_i));
  add(verify_vanishing_suite(VanishingSuite::thm_4_1_chain, 2, max_i));
  add(verify_vanishing_suite(VanishingSuite::thm_3_1_decomposition, 6, max_g));
  for (int i = 1; i <= max_i; ++i) r.entries.push_back(run_check("difference_class", i, [i](auto& a, auto& m) { return check_class(i, a, m); }));
  for (int i = 1; i <= max_i; ++i) r.entries.push_back(run_check("pencils", i, [i](auto& a, auto& m) { return check_pencils(i, a, m); }));
  for (int i = 1; i <= max_i; ++i) r.entries.push_back(run_check("divisorial_pairs", i, [i](auto& a, auto& m) { return check_pairs(i, a, m); }));
  return r;
}

}  // namespace prym
