#include <doctest.h>

#include "graded/derivation.hpp"
#include "graded/parse.hpp"
#include "graded/random.hpp"

using namespace bfvlab;
using namespace bfvlab::graded;

namespace {

AlgebraPtr toy_algebra() {
  return Algebra::make({{"x", 0},
                        {"p", 0},
                        {"c1", 1},
                        {"c2", 1},
                        {"b", -1},
                        {"xi", 1},
                        {"psiN", 0},
                        {"psiP", 0}});
}

Monomial mono(const AlgebraPtr& alg, std::initializer_list<const char*> names) {
  std::vector<int> word;
  for (const char* n : names) word.push_back(alg->id_of(n));
  int sign;
  bool killed;
  Monomial m = Monomial::from_word(*alg, word, sign, killed);
  REQUIRE(!killed);
  REQUIRE(sign == 1);
  return m;
}

}  // namespace

TEST_CASE("koszul antisymmetry and odd nilpotency") {
  auto alg = toy_algebra();
  Poly c1 = Poly::generator(alg, alg->id_of("c1"));
  Poly c2 = Poly::generator(alg, alg->id_of("c2"));
  Poly xi = Poly::generator(alg, alg->id_of("xi"));
  Poly x = Poly::generator(alg, alg->id_of("x"));

  CHECK(c1 * c2 == -(c2 * c1));
  CHECK((xi * xi).is_zero());
  // (2x + c1 c2) c1 = 2 x c1: the c1 c2 c1 term dies after reordering.
  Poly lhs = (x * Rat(2) + c1 * c2) * c1;
  CHECK(lhs == parse_poly(alg, "2*x*c1"));
}

TEST_CASE("parser round trip and errors") {
  auto alg = toy_algebra();
  Poly p = parse_poly(alg, "2*x*p - 1/2*c1*c2 + (x + p)^2");
  CHECK(parse_poly(alg, p.str()) == p);
  CHECK_THROWS_AS(parse_poly(alg, "2*q"), InputError);
  CHECK_THROWS_AS(parse_poly(alg, "1/0"), InputError);
  CHECK_THROWS_AS(parse_poly(alg, "x +"), InputError);
}

TEST_CASE("relation reduction") {
  auto alg = toy_algebra();
  RelationSet rel(alg);
  rel.annihilate(mono(alg, {"psiN", "xi"}));
  rel.annihilate(mono(alg, {"psiN", "psiP"}));

  CHECK(rel.reduce(parse_poly(alg, "psiN*xi")).is_zero());
  CHECK(rel.reduce(parse_poly(alg, "psiN*psiP")).is_zero());
  Poly xp = parse_poly(alg, "x*p");
  CHECK(rel.reduce(xp) == xp);  // untouched

  SUBCASE("substitution and idempotence") {
    RelationSet sub(alg);
    sub.substitute(mono(alg, {"x", "p"}), parse_poly(alg, "p*p + 1"));
    Poly q = parse_poly(alg, "3*x*p*c1");
    Poly r = sub.reduce(q);
    CHECK(r == parse_poly(alg, "3*p*p*c1 + 3*c1"));
    CHECK(sub.reduce(r) == r);
  }

  SUBCASE("non-terminating rule set hits the step budget") {
    RelationSet bad(alg);
    bad.substitute(mono(alg, {"x"}), parse_poly(alg, "x*x"));
    bad.set_step_budget(1000);
    CHECK_THROWS_AS(bad.reduce(parse_poly(alg, "x")), ConfigError);
  }
}

TEST_CASE("derivations: Leibniz images") {
  auto alg = toy_algebra();
  int c1 = alg->id_of("c1"), x = alg->id_of("x"), b = alg->id_of("b");

  SUBCASE("d/dc is odd of degree -1") {
    Derivation D(alg, -1, {{c1, Poly::constant(alg, 1)}});
    D.set_implicit_zero(true);
    CHECK(D.apply(parse_poly(alg, "c1*x")) == parse_poly(alg, "x"));
  }
  SUBCASE("Koszul differential") {
    Derivation D(alg, 1, {{b, parse_poly(alg, "x*x + p")}});
    D.set_implicit_zero(true);
    CHECK((Poly::generator(alg, b) * Poly::generator(alg, b)).is_zero());
    CHECK(D.apply(parse_poly(alg, "b*x")) == parse_poly(alg, "(x*x + p)*x"));
  }
  SUBCASE("odd image on a square") {
    Derivation D(alg, 1, {{c1, parse_poly(alg, "x*c1")}});
    D.set_implicit_zero(true);
    // c1^2 vanishes structurally, so its image does too.
    CHECK(D.apply(Poly::generator(alg, c1) * Poly::generator(alg, c1))
              .is_zero());
  }
  SUBCASE("missing image is an error") {
    Derivation D(alg, 1, {});
    CHECK_THROWS_AS(D.apply(parse_poly(alg, "x")), ConfigError);
  }
}

TEST_CASE("derivation commutators") {
  auto alg = Algebra::make({{"x", 0}, {"c", 1}});
  int x = alg->id_of("x"), c = alg->id_of("c");
  Poly zero(alg), one = Poly::constant(alg, 1);

  SUBCASE("[d/dx, x d/dx] = d/dx") {
    Derivation D1(alg, 0, {{x, one}, {c, zero}});
    Derivation D2(alg, 0, {{x, parse_poly(alg, "x")}, {c, zero}});
    Derivation C = Derivation::commutator(D1, D2);
    CHECK(C.image(x) == one);
    CHECK(C.image(c).is_zero());
  }
  SUBCASE("[D,D] = 2 D^2 for odd D") {
    Derivation D(alg, 1, {{x, parse_poly(alg, "x*c")}, {c, zero}});
    Derivation C = Derivation::commutator(D, D);
    for (int g : {x, c}) CHECK(C.image(g) == D.apply(D.image(g)) * Rat(2));
  }
  SUBCASE("disjoint supports commute") {
    auto alg2 = Algebra::make({{"u", 0}, {"v", 0}});
    Derivation A(alg2, 0, {{0, Poly::constant(alg2, 1)}, {1, Poly(alg2)}});
    Derivation B(alg2, 0, {{0, Poly(alg2)}, {1, Poly::constant(alg2, 1)}});
    Derivation C = Derivation::commutator(A, B);
    CHECK(C.image(0).is_zero());
    CHECK(C.image(1).is_zero());
  }
}

TEST_CASE("nilpotency witness") {
  auto alg = Algebra::make({{"x", 0}, {"c", 1}, {"b", -1}});
  RelationSet none(alg);
  SUBCASE("Koszul differential is nilpotent") {
    Derivation D(alg, 1,
                 {{alg->id_of("b"), parse_poly(alg, "x")},
                  {alg->id_of("x"), Poly(alg)},
                  {alg->id_of("c"), Poly(alg)}});
    CHECK(check_nilpotent(D, none).ok);
  }
  SUBCASE("failing generator and residue are reported") {
    Derivation D(alg, 1,
                 {{alg->id_of("c"), parse_poly(alg, "x*c")},
                  {alg->id_of("x"), Poly(alg)},
                  {alg->id_of("b"), Poly(alg)}});
    auto rep = check_nilpotent(D, none);
    CHECK(!rep.ok);
    CHECK(rep.failing_gen == alg->id_of("c"));
    CHECK(rep.residue == parse_poly(alg, "x^2*c"));
  }
  SUBCASE("even derivations are rejected") {
    Derivation D(alg, 0, {});
    CHECK_THROWS_AS(check_nilpotent(D, none), ConfigError);
  }
}

TEST_CASE("substitution homomorphism") {
  auto alg = Algebra::make(
      {{"h", 0}, {"xiN", 1}, {"chiN", -1}, {"chiP", -1}, {"psiN", 0},
       {"psiP", 0}});
  std::map<int, Poly> images;
  images[alg->id_of("psiN")] = parse_poly(alg, "chiN*xiN");
  images[alg->id_of("psiP")] = parse_poly(alg, "chiP*xiN");

  CHECK(parse_poly(alg, "psiN*h").substitute(images) ==
        parse_poly(alg, "chiN*xiN*h"));
  CHECK(parse_poly(alg, "psiP*xiN").substitute(images).is_zero());
  CHECK(parse_poly(alg, "psiN*psiP + h").substitute({}) ==
        parse_poly(alg, "psiN*psiP + h"));

  SUBCASE("degree mismatch is rejected") {
    std::map<int, Poly> bad;
    bad[alg->id_of("psiN")] = parse_poly(alg, "xiN");
    CHECK_THROWS_AS(parse_poly(alg, "psiN").substitute(bad), ConfigError);
  }
}

TEST_CASE("poly operands must share the generator table") {
  auto a1 = Algebra::make({{"x", 0}});
  auto a2 = Algebra::make({{"x", 0}});
  CHECK_THROWS_AS(Poly::generator(a1, 0) * Poly::generator(a2, 0),
                  ConfigError);
}
