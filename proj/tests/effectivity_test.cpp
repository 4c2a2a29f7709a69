#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "prym/effectivity.hpp"
#include "prym/errors.hpp"

using namespace prym;

namespace {

std::vector<Rational> row(std::initializer_list<int> xs) {
  std::vector<Rational> r;
  for (int x : xs) r.emplace_back(x);
  return r;
}

// Rank 3: L^2 = 4 and two disjoint (-2)-curves. Everything integral.
LatticeModel toy_model() {
  LatticeModel::Data d;
  d.name = "toy";
  d.labels = {"L", "N1", "N2"};
  d.gram = {row({4, 0, 0}), row({0, -2, 0}), row({0, 0, -2})};
  d.named_classes = {{"L", row({1, 0, 0})}, {"N1", row({0, 1, 0})}, {"N2", row({0, 0, 1})}};
  d.nef = {row({1, 0, 0})};
  d.neg2 = {row({0, 1, 0}), row({0, 0, 1})};
  return LatticeModel(d);
}

// No nef class, so nothing bounds the L-coordinate.
LatticeModel unbounded_model() {
  LatticeModel::Data d;
  d.name = "open";
  d.labels = {"L", "N1"};
  d.gram = {row({4, 0}), row({0, -2})};
  d.named_classes = {{"L", row({1, 0})}, {"N1", row({0, 1})}};
  d.neg2 = {row({0, 1})};
  return LatticeModel(d);
}

NonEffectivityCertificate prove(const LatticeModel& m, const std::string& expr, int depth = kDefaultMaxDepth) {
  const auto out = prove_non_effective(m, m.class_from_expr(expr), {depth, kDefaultCoefficientCap});
  REQUIRE_MESSAGE(out.proven(), expr << ": " << out.message);
  return *out.certificate;
}

}  // namespace

TEST_CASE("peeling base curves") {
  for (int i = 2; i <= 6; ++i) {
    const auto m = build_model(ModelKind::standard_hyperelliptic, 2 * i + 1);
    const auto is = std::to_string(i);
    const auto t = peel_with_trace(m, m.class_from_expr("L + e - " + is + "E"));
    CHECK(t.result == m.class_from_expr("L - e - " + is + "E"));
    CHECK(t.steps.size() == 8);
  }
  const auto m = build_model(ModelKind::standard, 6);
  CHECK(peel_base_curves(m, m.named("L")) == m.named("L"));
  CHECK(peel_base_curves(m, m.named("e")) == -m.named("e"));
  CHECK_THROWS_AS((void)peel_base_curves(m, m.class_from_expr("3e"), 5), DomainError);
}

TEST_CASE("candidates for L - iE - e") {
  const auto m = build_model(ModelKind::standard_hyperelliptic, 7);
  const auto b = m.class_from_expr("L - 3E - e");
  const auto en = enumerate_minus2_candidates(m, b);
  std::set<LatticeClass> with_l, without_l;
  for (const auto& d : en.candidates) {
    CHECK(m.square(d) == Rational(-2));
    CHECK(m.is_member(d));
    CHECK(m.pair(b, d).sign() < 0);
    (d.coeff(0) == Rational(1) ? with_l : without_l).insert(d);
  }
  // a = 1: exactly L - 3E - Nj.
  std::set<LatticeClass> expect_l, expect_0;
  for (int j = 1; j <= 8; ++j) {
    expect_l.insert(m.class_from_expr("L - 3E - N" + std::to_string(j)));
    expect_0.insert(m.class_from_expr("-N" + std::to_string(j)));
  }
  CHECK(with_l == expect_l);
  // a = 0: D = bE - Nj has B.D = 2b - 1, so only b = 0 survives.
  CHECK(without_l == expect_0);
  for (int b = 1; b <= 4; ++b) {
    const auto d = m.class_from_expr(std::to_string(b) + "E - N1");
    CHECK(m.pair(m.class_from_expr("L - 3E - e"), d) == Rational(2 * b - 1));
  }
  CHECK_FALSE(en.contradictions.empty());
  for (const auto& c : en.contradictions) {
    CHECK(c.pairing.sign() >= 0);
    CHECK(c.pairing * c.pairing >= c.curve_weight * c.norm);
  }
}

TEST_CASE("enumeration preconditions") {
  const auto m = build_model(ModelKind::standard_hyperelliptic, 7);
  CHECK_THROWS_AS((void)enumerate_minus2_candidates(m, m.named("L")), UnsupportedShape);
  CHECK_THROWS_AS((void)enumerate_minus2_candidates(m, m.class_from_expr("N1/2")), UnsupportedShape);
  const auto open = unbounded_model();
  CHECK_THROWS_AS((void)enumerate_minus2_candidates(open, open.class_from_expr("L - 2N1")), UnboundedSearch);
  // The E-range of L - 20E - e reaches -40, past the default cap.
  const auto big = build_model(ModelKind::standard_hyperelliptic, 41);
  CHECK_THROWS_AS((void)enumerate_minus2_candidates(big, big.class_from_expr("L - 20E - e")), UnboundedSearch);
  CHECK_NOTHROW((void)enumerate_minus2_candidates(big, big.class_from_expr("L - 20E - e"), 64));
}

TEST_CASE("leaf proofs") {
  for (auto kind : {ModelKind::standard, ModelKind::standard_hyperelliptic}) {
    const auto m = build_model(kind, 5);
    const auto c = prove(m, "-L");
    CHECK(c.depth() == 0);
    CHECK(c.root().kind == NodeKind::negative_on_nef);
    CHECK(*c.root().value == Rational(-8));
    CHECK(replay_certificate(m, c).empty());
  }
  const auto m = build_model(ModelKind::standard, 5);
  const auto c = prove(m, "N1 - N2");
  CHECK(c.root().kind == NodeKind::exceptional_support);
  CHECK(replay_certificate(m, c).empty());
  const auto eff = prove_non_effective(m, m.class_from_expr("N1 + N2"));
  CHECK_FALSE(eff.proven());
}

TEST_CASE("prover preconditions") {
  const auto m = build_model(ModelKind::standard_hyperelliptic, 7);
  CHECK_THROWS_AS((void)prove_non_effective(m, m.class_from_expr("L - 3E - e"), {0, 32}), ParameterError);
  CHECK_THROWS_AS((void)prove_non_effective(m, m.class_from_expr("N1/2")), UnsupportedShape);
  CHECK_THROWS_AS((void)prove_non_effective(m, m.named("E")), UnsupportedShape);
  const auto open = unbounded_model();
  CHECK_THROWS_AS((void)prove_non_effective(open, open.class_from_expr("L - 2N1")), UnboundedSearch);
}

TEST_CASE("L - iE - e closes in one step") {
  for (int i = 2; i <= 10; ++i) {
    const auto m = build_model(ModelKind::standard_hyperelliptic, 2 * i + 1);
    const auto c = prove(m, "L - " + std::to_string(i) + "E - e");
    CHECK(c.depth() == 1);
    CHECK(c.root().candidates.size() == 16);
    for (const auto& cand : c.root().candidates) {
      CHECK(cand.reason.tag == EliminationTag::exceptional_support);
      if (cand.d.coeff(0) == Rational(1)) {
        CHECK(cand.reason.subject == "B-D");
      } else {
        CHECK(cand.reason.subject == "D");
      }
    }
    CHECK(replay_certificate(m, c).empty());
  }
}

TEST_CASE("the four non-standard classes") {
  for (int i = 2; i <= 5; ++i) {
    const auto m = build_model(ModelKind::nonstandard_hyperelliptic, i);
    const auto is = std::to_string(i), im = std::to_string(i - 1);
    for (const auto& expr : {im + "E + e", is + "E - e", "R - " + im + "E - e", "R - " + is + "E + e"}) {
      CAPTURE(expr);
      CHECK(m.square(m.class_from_expr(expr)) == Rational(-4));
      const auto c = prove(m, expr, suite_depth(i));
      CHECK(replay_certificate(m, c).empty());
    }
    // R - iE + e: peeling N3..N8 leaves L/2 - iE - (N3 + ... + N8)/2.
    const auto c = prove(m, "R - " + is + "E + e");
    CHECK(c.root().peeled.size() == 6);
    CHECK(c.root().reduced == m.class_from_expr("L/2 - " + is + "E - (N3+N4+N5+N6+N7+N8)/2"));
    CHECK(c.depth() == 1);
  }
}

TEST_CASE("iE - e needs depth i") {
  const auto m = build_model(ModelKind::standard_hyperelliptic, 9);
  for (int d = 1; d < 4; ++d) CHECK_FALSE(prove_non_effective(m, m.class_from_expr("4E - e"), {d, 32}).proven());
  const auto c = prove(m, "4E - e", 4);
  CHECK(c.depth() == 4);
  CHECK(replay_certificate(m, c).empty());
}

TEST_CASE("failed search reports survivors") {
  const auto m = build_model(ModelKind::standard_hyperelliptic, 9);
  const auto out = prove_non_effective(m, m.class_from_expr("4E - e"), {1, 32});
  CHECK_FALSE(out.proven());
  CHECK_FALSE(out.survivors.empty());
  CHECK_FALSE(out.message.empty());
}

TEST_CASE("larger depth never loses a proof") {
  const auto m = build_model(ModelKind::nonstandard_hyperelliptic, 4);
  for (const std::string expr : {"3E + e", "4E - e", "R - 3E - e", "R - 4E + e", "-L", "N1 - N2", "N1 + N2"}) {
    bool seen = false;
    for (int d = 1; d <= 7; ++d) {
      const bool ok = prove_non_effective(m, m.class_from_expr(expr), {d, 32}).proven();
      if (seen) CHECK_MESSAGE(ok, expr << " lost at depth " << d);
      seen = seen || ok;
    }
  }
}

TEST_CASE("recorded candidates are exactly the enumeration") {
  const auto m = build_model(ModelKind::nonstandard_hyperelliptic, 3);
  const auto c = prove(m, "3E - e", 4);
  for (const auto& node : c.nodes) {
    if (node.kind != NodeKind::enumeration) continue;
    const auto en = enumerate_minus2_candidates(m, node.reduced);
    std::set<LatticeClass> a(en.candidates.begin(), en.candidates.end()), b;
    for (const auto& cand : node.candidates) b.insert(cand.d);
    CHECK(a == b);
    for (const auto& cand : node.candidates) {
      if (cand.reason.sub) CHECK(c.nodes[*cand.reason.sub].depth < node.depth);
    }
  }
}

TEST_CASE("replay catches tampering") {
  const auto m = build_model(ModelKind::nonstandard_hyperelliptic, 3);
  const auto good = prove(m, "R - 2E - e");
  REQUIRE(replay_certificate(m, good).empty());

  auto c = good;
  c.nodes[0].candidates.pop_back();
  CHECK_FALSE(replay_certificate(m, c).empty());

  c = good;
  c.nodes[0].candidates[0].pairing = Rational(-7);
  CHECK_FALSE(replay_certificate(m, c).empty());

  c = good;
  c.nodes[0].depth += 1;
  CHECK_FALSE(replay_certificate(m, c).empty());

  c = good;
  c.nodes[0].bounds.box[0].hi += Rational(1);
  CHECK_FALSE(replay_certificate(m, c).empty());

  c = good;
  c.nodes[0].bounds.inequalities[0].constant += Rational(1);
  CHECK_FALSE(replay_certificate(m, c).empty());

  c = good;
  c.nodes[0].target = m.class_from_expr("R - 3E - e");
  CHECK_FALSE(replay_certificate(m, c).empty());

  c = good;
  for (auto& cand : c.nodes[0].candidates) {
    if (cand.reason.tag == EliminationTag::exceptional_support) {
      cand.reason.witness = cand.reason.witness + m.named("L");
      break;
    }
  }
  CHECK_FALSE(replay_certificate(m, c).empty());

  if (!good.nodes[0].contradictions.empty()) {
    c = good;
    c.nodes[0].contradictions[0].pairing = Rational(-1);
    CHECK_FALSE(replay_certificate(m, c).empty());
  }

  CHECK_FALSE(replay_certificate(build_model(ModelKind::nonstandard_hyperelliptic, 4), good).empty());
}

TEST_CASE("certificate JSON round trip") {
  const auto m = build_model(ModelKind::standard_hyperelliptic, 11);
  for (const std::string expr : {"L - 5E - e", "5E - e", "-L"}) {
    const auto c = prove(m, expr, 6);
    const auto j = c.to_json(m);
    CHECK(j.contains("target"));
    CHECK(j.contains("bounds") == (c.root().kind == NodeKind::enumeration));
    CHECK(j.contains("candidates"));
    CHECK(j.contains("sub_certificates"));
    CHECK(j.contains("depth"));
    const auto text = j.dump();
    const auto back_model = LatticeModel::from_json(nlohmann::json::parse(text).at("model"));
    const auto back = NonEffectivityCertificate::from_json(nlohmann::json::parse(text), back_model);
    CHECK(replay_certificate(back_model, back).empty());
    CHECK(back.to_json(back_model) == j);
  }
  CHECK_THROWS_AS((void)NonEffectivityCertificate::from_json(nlohmann::json{{"model_name", m.name()}}, m), StructuralError);
}

TEST_CASE("toy model: never proves an effective class") {
  // Effective cone declared by hand: nonnegative integral combinations of
  // L, N1, N2. L + 2N1, L + 2N2 and 2L + 3N1 + N2 have square -4.
  const auto m = toy_model();
  int checked = 0;
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      for (int c = 0; c <= 3; ++c) {
        const LatticeClass v("toy", {2 * a, 2 * b, 2 * c});
        for (int depth = 1; depth <= 4; ++depth) {
          bool proven = false;
          try {
            proven = prove_non_effective(m, v, {depth, 32}).proven();
          } catch (const UnsupportedShape&) {
          }
          CHECK_FALSE(proven);
        }
        ++checked;
      }
    }
  }
  CHECK(checked == 64);
  CHECK(prove_non_effective(m, m.class_from_expr("-L")).proven());
}

TEST_CASE("toy model: brute-force candidate set") {
  const auto m = toy_model();
  for (const std::string expr : {"L - 2N1", "L - 2N2", "2L - 3N1 - N2", "2L - N1 + 3N2", "N1 - N2"}) {
    CAPTURE(expr);
    const auto b = m.class_from_expr(expr);
    REQUIRE(m.square(b) == Rational(-4));
    const auto en = enumerate_minus2_candidates(m, b);
    std::set<LatticeClass> brute;
    for (int x = -8; x <= 8; ++x) {
      for (int y = -8; y <= 8; ++y) {
        for (int z = -8; z <= 8; ++z) {
          const LatticeClass d("toy", {2 * x, 2 * y, 2 * z});
          if (m.square(d) != Rational(-2) || m.pair(b, d).sign() >= 0) continue;
          if (m.pair(d, m.named("L")).sign() < 0 || m.pair(b - d, m.named("L")).sign() < 0) continue;
          bool ok = true;
          for (const auto& n : m.known_neg2_curves()) {
            if (m.pair(b, n).sign() >= 0 && m.pair(d, n).sign() < 0) ok = false;
          }
          if (ok) brute.insert(d);
        }
      }
    }
    CHECK(std::set<LatticeClass>(en.candidates.begin(), en.candidates.end()) == brute);
  }
}

TEST_CASE("decomposition check") {
  for (int g = 6; g <= 20; ++g) {
    const auto m = build_model(ModelKind::standard, g);
    const auto rep = check_no_moving_decomposition(m, m.class_from_expr("L - e"));
    CHECK(rep.no_moving_decomposition);
    CHECK(rep.inspected.size() == 2 * 256);
    for (const auto& d : rep.inspected) CHECK((d.a1 + d.a2) == m.class_from_expr("L - e"));
  }
  const auto m = build_model(ModelKind::standard, 8);
  CHECK_THROWS_AS((void)check_no_moving_decomposition(m, m.named("N1")), UnsupportedShape);
  CHECK_THROWS_AS((void)check_no_moving_decomposition(m, m.class_from_expr("2L - e")), UnsupportedShape);
  const auto h = build_model(ModelKind::standard_hyperelliptic, 8);
  CHECK_THROWS_AS((void)check_no_moving_decomposition(h, h.class_from_expr("L - e")), UnsupportedShape);
  CHECK(check_no_moving_decomposition(m, m.class_from_expr("L - e"), 2).inspected.size() > 256);
}

TEST_CASE("suites") {
  const auto r = verify_vanishing_suite(VanishingSuite::lemma_4_2, 2, 4);
  REQUIRE(r.size() == 3);
  for (std::size_t k = 0; k < r.size(); ++k) {
    CHECK(r[k].parameter == static_cast<int>(k) + 2);
    CHECK(r[k].status == Status::pass);
  }
  const auto chain = verify_vanishing_suite(VanishingSuite::thm_4_1_chain, 2, 3);
  for (const auto& e : chain) CHECK(e.status == Status::pass);
  // A bad parameter is recorded, not thrown.
  const auto bad = verify_vanishing_suite(VanishingSuite::thm_3_1_decomposition, 1, 6);
  CHECK(bad.front().status == Status::error);
  CHECK(bad.back().status == Status::pass);
  CHECK(parse_vanishing_suite("lemma_4_4") == VanishingSuite::lemma_4_4);
  CHECK_THROWS_AS((void)parse_vanishing_suite("lemma_9"), ParameterError);
  CHECK(parse_elimination_tag(to_string(EliminationTag::recursive)) == EliminationTag::recursive);
}
