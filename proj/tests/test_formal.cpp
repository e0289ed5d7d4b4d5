#include <doctest.h>

#include <set>

#include "formal/engine.hpp"

using namespace bfvlab;
using namespace bfvlab::formal;

TEST_CASE("DSL parser") {
  Expr e = parse_expression("Lie(xiP, h)");
  CHECK(e.terms.size() == 1);
  CHECK(e.kind() == Kind::Metric);

  Expr p = parse_expression("psiN * xiN");
  CHECK(*p.gdeg() == 1);

  // Accepted syntactically; the odd square collapses.
  CHECK(parse_expression("grad(h, xiN*xiN)").is_zero());

  SUBCASE("round trip through the printer") {
    for (const char* text :
         {"Hn*xiN + Lie(xiP, psiN) - 2*Lie(sharp(psiP), xiN)",
          "tildePi*xiN + volh*sharp2(G)*xiN + volh*sharp2(DH(xiN)) - "
          "Lie(xiP, Pi)",
          "1/2*Bracket(xiP, xiP) + xiN*grad(h, xiN)"}) {
      Expr a = parse_expression(text);
      CHECK(parse_expression(a.str()) == a);
    }
  }

  SUBCASE("kind errors name the operator") {
    CHECK_THROWS_WITH_AS(parse_expression("Lie(h, xiN)"),
                         doctest::Contains("Lie"), InputError);
    CHECK_THROWS_AS(parse_expression("d(chiP)"), InputError);
    CHECK_THROWS_AS(parse_expression("sharp(xiN)"), InputError);
  }
  SUBCASE("syntax errors carry a position") {
    CHECK_THROWS_WITH_AS(parse_expression("Lie(xiP,"),
                         doctest::Contains("position"), InputError);
    CHECK_THROWS_AS(parse_expression("nosuchsym"), InputError);
  }
}

TEST_CASE("koszul normal form") {
  Expr xi = Expr::symbol(sym::xiN);
  Expr chi = Expr::symbol(sym::chiN);
  CHECK((xi * xi).is_zero());
  CHECK(chi * xi + xi * chi == Expr::zero());  // odd generators anticommute
}

TEST_CASE("q images match the displayed equations") {
  auto imgs = q_image_strings(Which::Q_tilde);
  CHECK(parse_expression(imgs[sym::psiP]) ==
        parse_expression("Hp*xiN + Lie(xiP, psiP) - psiN*d(xiN)"));
  CHECK(parse_expression(imgs[sym::psiN]) ==
        parse_expression("Hn*xiN + Lie(xiP, psiN) - 2*Lie(sharp(psiP), xiN)"));
  auto bfvimgs = q_image_strings(Which::Q_BFV);
  CHECK(parse_expression(bfvimgs[sym::h]) ==
        parse_expression("-2*K*xiN - Lie(xiP, h)"));
  CHECK(parse_expression(bfvimgs[sym::xiP]) ==
        parse_expression("xiN*grad(h, xiN) + 1/2*Bracket(xiP, xiP)"));
  // Q_0 drops the chi-dependent term of Q(Pi).
  auto q0 = q_image_strings(Which::Q_0);
  CHECK(q0[sym::Pi].find("chiP") == std::string::npos);
}

TEST_CASE("ideal preservation with auditable trace") {
  auto rs = verify_ideal_preservation(false);
  REQUIRE(rs.size() == 2);
  for (const auto& r : rs) {
    CHECK(r.pass);
    CHECK(r.residual == "0");
  }
  std::set<std::string> rules;
  for (const auto& s : rs[1].trace.steps) rules.insert(s.rule);
  // The paper's proof steps all appear: Leibniz split, nilpotency kill,
  // recombination, ideal reduction, and the psi-sharp rule.
  CHECK(rules.count("qtilde-leibniz"));
  CHECK(rules.count("odd-nilpotency"));
  CHECK(rules.count("lie-recombine"));
  CHECK(rules.count("ideal-monomial"));
  CHECK(rules.count("psi-sharp-xi"));

  SUBCASE("control: dropping the psi-sharp rule breaks the psiN case") {
    auto ctl = verify_ideal_preservation(true);
    CHECK(ctl[0].pass);   // the psiP case never needed the rule
    CHECK(!ctl[1].pass);
    CHECK(ctl[1].residual != "0");
  }
}

TEST_CASE("qtilde squares to zero via the four-term cancellation") {
  auto rs = verify_qtilde_nilpotency(false);
  REQUIRE(rs.size() == 5);
  for (const auto& r : rs) CHECK(r.pass);

  // The four-term display is present in the trace.
  bool saw_four = false;
  for (const auto& s : rs[0].trace.steps)
    if (s.rule == "q-leibniz-four-terms" &&
        s.after.find("Q(Q(") != std::string::npos)
      saw_four = true;
  CHECK(saw_four);

  SUBCASE("control: flipped crossing signs break the cancellation") {
    auto ctl = verify_qtilde_nilpotency(true);
    CHECK(!ctl[0].pass);
    CHECK(ctl[0].residual.find("Q(") != std::string::npos);
  }
}

TEST_CASE("psi_n simplification reaches the displayed normal form") {
  auto r = derive_psi_n_form(false);
  CHECK(r.pass);
  bool saw_rem35 = false, saw_kill = false;
  for (const auto& s : r.trace.steps) {
    if (s.rule == "remark35-halfdensity") saw_rem35 = true;
    if (s.rule == "odd-nilpotency" && s.before.find("Div") != std::string::npos)
      saw_kill = true;
  }
  CHECK(saw_rem35);
  CHECK(saw_kill);  // the Div term dies against xiN nilpotency

  SUBCASE("control: without the half-density rule a residual remains") {
    auto ctl = derive_psi_n_form(true);
    CHECK(!ctl.pass);
    CHECK(ctl.residual.find("LieHalf") != std::string::npos);
  }
}

TEST_CASE("normalization is idempotent and additive on bundled inputs") {
  FormalDerivation Qt = define_Q(Which::Q_tilde);
  Expr a = Qt.apply(mul_keep(Expr::symbol(sym::psiP), Expr::symbol(sym::xiN)));
  Expr b = Qt.apply(mul_keep(Expr::symbol(sym::psiN), Expr::symbol(sym::xiN)));
  RuleSet rs = RuleSet::ideal_preservation();
  Expr na = normalize(a, rs);
  CHECK(normalize(na, rs) == na);
  CHECK(normalize(a + b, rs) == normalize(a, rs) + normalize(b, rs));
}

TEST_CASE("rule applications conserve ghost degree") {
  FormalDerivation Qt = define_Q(Which::Q_tilde);
  Expr e = Qt.apply(mul_keep(Expr::symbol(sym::psiN), Expr::symbol(sym::xiN)));
  auto d0 = e.gdeg();
  REQUIRE(d0.has_value());
  Trace tr;
  Expr nf = normalize(e, RuleSet::ideal_preservation(), &tr);
  CHECK(!tr.steps.empty());
  // Not all intermediate states are materialized here, but the final
  // normal form (zero) is compatible with the starting degree, and each
  // recorded replacement parses back with the same degree when nonzero.
  for (const auto& s : tr.steps) {
    if (s.after == "0" || s.rule == "qtilde-leibniz") continue;
    Expr before = parse_expression(s.before.find("  +  ") == std::string::npos
                                       ? s.before
                                       : "0");
    Expr after = parse_expression(s.after);
    if (!before.is_zero() && !after.is_zero())
      CHECK(*before.gdeg() == *after.gdeg());
  }
  CHECK(nf.is_zero());
}
