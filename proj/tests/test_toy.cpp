#include <doctest.h>

#include "graded/random.hpp"
#include "toy/toy.hpp"

using namespace bfvlab;
using namespace bfvlab::toy;
using bfv::BFVModel;
using graded::parse_poly;
using graded::Poly;

namespace {

BFVModel so3() {
  return BFVModel::make(3, {"x2*p3 - x3*p2", "x3*p1 - x1*p3", "x1*p2 - x2*p1"},
                        {{1, 2, 3, "1"}, {2, 3, 1, "1"}, {3, 1, 2, "1"}});
}
BFVModel nonconstant() {
  return BFVModel::make(2, {"p1", "-x1*x2*p1 + p2"}, {{1, 2, 1, "x2"}});
}
// Three constraints with two non-constant structure functions.
BFVModel triple() {
  return BFVModel::make(3, {"p1", "-x1*x3*p1 + p2", "p3"},
                        {{1, 2, 1, "x3"}, {2, 3, 1, "-x1"}});
}

}  // namespace

TEST_CASE("hamiltonian commutator defect") {
  auto pair = nonconstant();
  const auto& alg = pair.algebra();
  Poly p2 = Poly::generator(alg, pair.p(1));

  auto cd = hamiltonian_commutator_defect(pair, 0, 1, p2);
  CHECK(cd.match());
  CHECK(cd.defect == parse_poly(alg, "p1"));  // {x2, p2} H1

  // Constant structure functions: defect vanishes.
  auto s = so3();
  auto cd3 = hamiltonian_commutator_defect(
      s, 0, 1, parse_poly(s.algebra(), "x1*p2 + p3"));
  CHECK(cd3.match());
  CHECK(cd3.defect.is_zero());

  // Bracket with a constant vanishes.
  auto cdc = hamiltonian_commutator_defect(pair, 0, 1,
                                           Poly::constant(alg, 1));
  CHECK(cdc.defect.is_zero());
}

TEST_CASE("alternative 1: bracket, Leibniz, anchor defect") {
  auto s = so3();
  Section u1 = constant_section(s, 0), u2 = constant_section(s, 1);

  SUBCASE("constant sections bracket to the structure constants") {
    Section br = alt1_bracket(s, u1, u2);
    CHECK(br.comp[0].is_zero());
    CHECK(br.comp[1].is_zero());
    CHECK(br.comp[2] == Poly::constant(s.algebra(), 1));
  }

  SUBCASE("anchor on constraints lands in the constraint span") {
    // rho1(u1)(H2) = {H1, H2} = H3 by first-class closure.
    Poly v = alt1_anchor(s, u1, s.H(1));
    CHECK(v == s.H(2));
  }

  SUBCASE("Leibniz holds exactly on random data") {
    auto pair = nonconstant();
    const auto& alg = pair.algebra();
    graded::Rng rng(3);
    graded::RandomPolyOptions opt;
    opt.max_factors = 2;
    opt.restrict_to = {pair.x(0), pair.x(1), pair.p(0), pair.p(1)};
    for (int t = 0; t < 30; ++t) {
      Section s1, s2;
      for (int i = 0; i < 2; ++i) {
        s1.comp.push_back(graded::random_poly(alg, rng, opt));
        s2.comp.push_back(graded::random_poly(alg, rng, opt));
      }
      Poly g = graded::random_poly(alg, rng, opt);
      for (const auto& c : alt1_leibniz_defect(pair, s1, g, s2).comp)
        CHECK(c.is_zero());
    }
  }

  SUBCASE("anchor defect equals the closed form") {
    auto pair = nonconstant();
    const auto& alg = pair.algebra();
    Section v1 = constant_section(pair, 0), v2 = constant_section(pair, 1);
    Poly p2 = Poly::generator(alg, pair.p(1));
    auto ad = alt1_anchor_defect(pair, v1, v2, p2);
    CHECK(ad.match());
    CHECK(ad.defect == parse_poly(alg, "-p1"));  // -s1 s2 {f,g} H
    CHECK(in_constraint_ideal(pair, ad.defect, 3));

    // Vanishes for so(3) and for constant g.
    CHECK(alt1_anchor_defect(s, u1, u2, parse_poly(s.algebra(), "x2*p1"))
              .defect.is_zero());
    CHECK(alt1_anchor_defect(pair, v1, v2, Poly::constant(alg, 2))
              .defect.is_zero());
  }
}

TEST_CASE("alternative 1: Q-manifold form") {
  auto s = so3();
  auto pair = nonconstant();
  const auto& alg = pair.algebra();

  SUBCASE("constant structure functions square to zero") {
    for (int i = 0; i < 3; ++i) {
      CHECK(alt1_q_square(s, Poly::generator(s.algebra(), s.x(i))).is_zero());
      CHECK(alt1_q_square(s, Poly::generator(s.algebra(), s.c(i))).is_zero());
    }
  }

  SUBCASE("the residue is a constraint-ideal element") {
    Poly p2 = Poly::generator(alg, pair.p(1));
    Poly q2 = alt1_q_square(pair, p2);
    CHECK(q2 == parse_poly(alg, "p1*c1*c2"));
    CHECK(q2 == alt1_q_square_expected(pair, p2));
    CHECK(in_constraint_ideal(pair, q2, 3));
    CHECK(!in_constraint_ideal(pair, Poly::generator(alg, pair.x(0)), 3));
  }

  SUBCASE("honest double application matches the re-derived forms") {
    auto tr = triple();
    CHECK(bfv::verify_first_class(tr).ok());
    graded::Rng rng(9);
    graded::RandomPolyOptions opt;
    opt.max_factors = 2;
    opt.restrict_to.clear();
    for (int i = 0; i < 3; ++i) {
      opt.restrict_to.push_back(tr.x(i));
      opt.restrict_to.push_back(tr.p(i));
    }
    for (int t = 0; t < 20; ++t) {
      Poly g = graded::random_poly(tr.algebra(), rng, opt);
      CHECK(alt1_q_square(tr, g) == alt1_q_square_expected(tr, g));
    }
    for (int i = 0; i < 3; ++i)
      CHECK(alt1_q_square(tr, Poly::generator(tr.algebra(), tr.c(i))) ==
            alt1_q_square_expected_ghost(tr, i));
  }
}

TEST_CASE("alternative 2") {
  auto pair = nonconstant();
  const auto& alg = pair.algebra();
  Section u1 = constant_section(pair, 0), u2 = constant_section(pair, 1);

  SUBCASE("Leibniz and homomorphism hold exactly") {
    graded::Rng rng(17);
    graded::RandomPolyOptions opt;
    opt.max_factors = 2;
    opt.restrict_to = {pair.x(0), pair.x(1), pair.p(0), pair.p(1)};
    for (int t = 0; t < 100; ++t) {
      Section s1, s2;
      for (int i = 0; i < 2; ++i) {
        s1.comp.push_back(graded::random_poly(alg, rng, opt));
        s2.comp.push_back(graded::random_poly(alg, rng, opt));
      }
      Poly g = graded::random_poly(alg, rng, opt);
      Poly a = graded::random_poly(alg, rng, opt);
      CHECK(alt2_leibniz_defect(pair, s1, g, s2).is_zero());
      CHECK(alt2_homomorphism_defect(pair, s1, s2, a).is_zero());
    }
  }

  SUBCASE("documented non-linearity witness") {
    Poly x1 = Poly::generator(alg, pair.x(0));
    Poly p1 = Poly::generator(alg, pair.p(0));
    CHECK(alt2_nonlinearity_defect(pair, u1, x1, p1) ==
          parse_poly(alg, "p1"));
    auto w = alt2_nonlinearity_witness(pair);
    REQUIRE(w.found);
    CHECK(w.section_index == 0);
    CHECK(w.g == x1);
    CHECK(w.argument == p1);
    CHECK(w.defect == p1);
  }

  SUBCASE("constant g gives no defect") {
    Poly two = Poly::constant(alg, 2);
    Poly a = Poly::generator(alg, pair.p(0));
    CHECK(alt2_nonlinearity_defect(pair, u1, two, a).is_zero());
  }
}
