#include <doctest.h>

#include <cmath>

#include "lattice/checks.hpp"

using namespace bfvlab::lattice;
using bfvlab::graded::Rng;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TEST_CASE("odd coefficient algebra is exact") {
  Rng rng(1);
  auto random_odd = [&](int grade_cap) {
    Odd o;
    for (unsigned m = 0; m < Odd::N; ++m)
      if (__builtin_popcount(m) <= grade_cap) o.c[m] = rng.uniform(-2, 2);
    return o;
  };

  SUBCASE("anticommutation and squares") {
    for (int a = 0; a < Odd::K; ++a) {
      CHECK((Odd::generator(a) * Odd::generator(a)).is_zero());
      for (int b = 0; b < Odd::K; ++b) {
        if (a == b) continue;
        Odd lhs = Odd::generator(a) * Odd::generator(b);
        Odd rhs = Odd::generator(b) * Odd::generator(a);
        CHECK((lhs + rhs).is_zero());
      }
    }
  }
  SUBCASE("associativity holds exactly") {
    for (int t = 0; t < 50; ++t) {
      Odd a = random_odd(4), b = random_odd(4), c = random_odd(4);
      Odd lhs = (a * b) * c;
      Odd rhs = a * (b * c);
      CHECK((lhs - rhs).max_abs() < 1e-12);
    }
  }
  SUBCASE("inverse and square root") {
    for (int t = 0; t < 20; ++t) {
      Odd a = random_odd(4);
      a.c[0] = 1.5 + rng.unit();
      CHECK((a * inv(a) - Odd(1.0)).max_abs() < 1e-12);
      Odd r = sqrt(a);
      CHECK((r * r - a).max_abs() < 1e-12);
    }
  }
  SUBCASE("left derivative") {
    Odd a = Odd::basis(0b011, 2.0);  // 2 e0 e1
    CHECK(left_derivative(a, 0).component(0b010) == doctest::Approx(2.0));
    CHECK(left_derivative(a, 1).component(0b001) == doctest::Approx(-2.0));
  }
}

TEST_CASE("lie derivatives against closed forms") {
  Torus g(2, 32);

  SUBCASE("constant vector on a plane wave") {
    Field<double> X(g, 2), phi(g, 1);
    for (int s = 0; s < g.sites; ++s) {
      X.at(s, 0) = 0.7;
      X.at(s, 1) = 0.0;
      phi.at(s) = std::sin(kTwoPi * g.coord(s, 0));
    }
    Field<double> lx = lie_scalar(X, phi);
    double worst = 0;
    for (int s = 0; s < g.sites; ++s)
      worst = std::max(worst,
                       std::abs(lx.at(s) - 0.7 * kTwoPi *
                                               std::cos(kTwoPi * g.coord(s, 0))));
    CHECK(worst < 0.05);  // O(dx^2)
  }

  SUBCASE("constant metric is invariant under constant flows") {
    Field<double> X(g, 2), h(g, 3);
    for (int s = 0; s < g.sites; ++s) {
      X.at(s, 0) = 1.0;
      X.at(s, 1) = -2.0;
      h.at(s, 0) = 1.3;
      h.at(s, 1) = 0.2;
      h.at(s, 2) = 0.9;
    }
    Field<double> lh = lie_metric(X, h);
    for (const double& v : lh.v) CHECK(v == 0.0);
  }

  SUBCASE("vector bracket coordinate formula") {
    Field<double> X(g, 2), Y(g, 2);
    for (int s = 0; s < g.sites; ++s) {
      X.at(s, 0) = std::sin(kTwoPi * g.coord(s, 1));
      X.at(s, 1) = 0;
      Y.at(s, 0) = 0;
      Y.at(s, 1) = 1;
    }
    Field<double> Z = lie_vector(X, Y);
    double worst = 0;
    for (int s = 0; s < g.sites; ++s) {
      double exact = -kTwoPi * std::cos(kTwoPi * g.coord(s, 1));
      worst = std::max(worst, std::abs(Z.at(s, 0) - exact));
      worst = std::max(worst, std::abs(Z.at(s, 1)));
    }
    CHECK(worst < 0.05);
  }
}

TEST_CASE("constraint densities on closed-form data") {
  SUBCASE("flat data gives vanishing constraints") {
    Torus g(2, 8);
    Field<double> h(g, 3), pi(g, 3), X(g, 2), one(g, 1);
    for (int s = 0; s < g.sites; ++s) {
      h.at(s, 0) = h.at(s, 2) = 1.0;
      one.at(s) = 1.0;
      X.at(s, 0) = 0.3;
    }
    GeomPack<double> geo = make_geom(h);
    CHECK(std::abs(integrate(hn_density(h, pi, geo, one))) < 1e-14);
    CHECK(std::abs(integrate(hd_density(h, pi, X))) < 1e-14);
  }

  SUBCASE("constant momentum on the unit 2-torus") {
    // h = delta, Pi = c delta, phi = 1: the integrated energy
    // constraint is -2 c^2.
    Torus g(2, 8);
    double c = 0.7;
    Field<double> h(g, 3), pi(g, 3), one(g, 1);
    for (int s = 0; s < g.sites; ++s) {
      h.at(s, 0) = h.at(s, 2) = 1.0;
      pi.at(s, 0) = pi.at(s, 2) = c;
      one.at(s) = 1.0;
    }
    GeomPack<double> geo = make_geom(h);
    double val = integrate(hn_density(h, pi, geo, one));
    CHECK(val == doctest::Approx(-2 * c * c).epsilon(1e-12));
  }

  SUBCASE("momentum covector reproduces the density by parts, exactly") {
    Rng rng(3);
    auto st = random_state(rng, 2);
    auto Xf = random_test_vector(rng, 2);
    Torus g(2, 12);
    auto h = st.sample_h(g);
    auto pi = st.sample_pi(g);
    auto Xs = sample_vector(g, Xf);
    double a = integrate(hd_density(h, pi, Xs));
    Field<double> hp = hd_covector(h, pi);
    double b = 0;
    for (int s = 0; s < g.sites; ++s)
      for (int ax = 0; ax < 2; ++ax) b += hp.at(s, ax) * Xs.at(s, ax);
    b *= g.dx * g.dx;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("hamiltonian flow and brackets") {
  Rng rng(5);
  auto st = random_state(rng, 2);
  auto phi = random_test_scalar(rng, 2);
  auto X = random_test_vector(rng, 2);
  Torus g(2, 8);
  auto h = st.sample_h(g);
  auto pi = st.sample_pi(g);

  SUBCASE("zero test data gives zero flow") {
    FourierScalar zero_s;
    std::vector<FourierScalar> zero_v(2);
    Flow f = hamiltonian_flow(g, h, pi, ConstraintFunctional::energy(zero_s));
    for (const double& v : f.dh.v) CHECK(v == 0.0);
    Flow f2 =
        hamiltonian_flow(g, h, pi, ConstraintFunctional::momentum(zero_v));
    for (const double& v : f2.dpi.v) CHECK(v == 0.0);
  }

  SUBCASE("flat state, phi only: dh vanishes with K") {
    Field<double> hf(g, 3), pf(g, 3);
    for (int s = 0; s < g.sites; ++s) hf.at(s, 0) = hf.at(s, 2) = 1.0;
    Flow f = hamiltonian_flow(g, hf, pf, ConstraintFunctional::energy(phi));
    for (const double& v : f.dh.v) CHECK(std::abs(v) < 1e-14);
    double norm = 0;
    for (const double& v : f.dpi.v) norm += v * v;
    CHECK(norm > 0);  // the D-operator part survives
  }

  SUBCASE("delta-h part equals -2K phi + L_X h exactly") {
    GeomPack<double> geo = make_geom(h);
    Field<double> th = tilde_h(h, pi, geo);
    auto phis = phi.sample(g);
    auto Xs = sample_vector(g, X);
    Field<double> lxh = lie_metric(Xs, h);
    auto F = ConstraintFunctional::energy(phi);
    auto Gm = ConstraintFunctional::momentum(X);
    Flow fe = hamiltonian_flow(g, h, pi, F);
    Flow fm = hamiltonian_flow(g, h, pi, Gm);
    double worst = 0;
    for (int s = 0; s < g.sites; ++s)
      for (int c = 0; c < 3; ++c) {
        worst = std::max(worst, std::abs(fe.dh.at(s, c) -
                                         th.at(s, c) * phis.at(s)));
        worst = std::max(worst, std::abs(fm.dh.at(s, c) - lxh.at(s, c)));
      }
    CHECK(worst < 1e-10);
  }

  SUBCASE("bracket antisymmetry and linearity at round-off") {
    auto F = ConstraintFunctional::energy(phi);
    CHECK(std::abs(poisson_bracket_analytic(g, h, pi, F, F)) < 1e-12);
    auto psi = random_test_scalar(rng, 2);
    auto G1 = ConstraintFunctional::energy(psi);
    double ab = poisson_bracket_analytic(g, h, pi, F, G1);
    double ba = poisson_bracket_analytic(g, h, pi, G1, F);
    CHECK(ab == doctest::Approx(-ba).epsilon(1e-12));
  }

  SUBCASE("analytic gradient matches brute force") {
    auto F = ConstraintFunctional::energy(phi);
    auto ga = functional_gradient(g, h, pi, F);
    auto gf = functional_gradient_fd(g, h, pi, F, 1e-5);
    double worst = 0;
    for (size_t i = 0; i < ga.dh.v.size(); ++i) {
      worst = std::max(worst, std::abs(ga.dh.v[i] - gf.dh.v[i]));
      worst = std::max(worst, std::abs(ga.dpi.v[i] - gf.dpi.v[i]));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("constraint functionals are linear in the test data") {
  Rng rng(21);
  auto st = random_state(rng, 2);
  Torus g(2, 8);
  auto h = st.sample_h(g);
  auto pi = st.sample_pi(g);
  GeomPack<double> geo = make_geom(h);
  auto f1 = random_test_scalar(rng, 2).sample(g);
  auto f2 = random_test_scalar(rng, 2).sample(g);
  Field<double> combo(g, 1);
  for (int s = 0; s < g.sites; ++s)
    combo.at(s) = 2.0 * f1.at(s) - 3.0 * f2.at(s);
  double lhs = integrate(hn_density(h, pi, geo, combo));
  double rhs = 2.0 * integrate(hn_density(h, pi, geo, f1)) -
               3.0 * integrate(hn_density(h, pi, geo, f2));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

  auto X1 = sample_vector(g, random_test_vector(rng, 2));
  auto X2 = sample_vector(g, random_test_vector(rng, 2));
  Field<double> Xc(g, 2);
  for (size_t i = 0; i < Xc.v.size(); ++i) Xc.v[i] = 0.5 * X1.v[i] + X2.v[i];
  double lhd = integrate(hd_density(h, pi, Xc));
  double rhd = 0.5 * integrate(hd_density(h, pi, X1)) +
               integrate(hd_density(h, pi, X2));
  CHECK(lhd == doctest::Approx(rhd).epsilon(1e-12));
}

TEST_CASE("q0 structural zeros") {
  Rng rng(7);
  auto st = random_state(rng, 2);
  auto phi = random_test_scalar(rng, 2);
  Torus g(2, 8);

  SUBCASE("equal polarizations cancel in the Pi defect") {
    QState qs(g);
    qs.h = to_odd(st.sample_h(g));
    qs.pi = to_odd(st.sample_pi(g));
    auto p = phi.sample(g);
    for (int s = 0; s < g.sites; ++s)
      qs.xiN.at(s) = (Odd::generator(0) + Odd::generator(1)) * p.at(s);
    QSquare q2 = q0_square(qs);
    CHECK(l2_norm(extract(q2.pi, 0b11)) < 1e-12);
  }

  SUBCASE("on-shell state (Pi = 0, xiP = 0) has no Pi defect") {
    QState qs(g);
    qs.h = to_odd(st.sample_h(g));
    auto p1 = phi.sample(g);
    auto p2 = random_test_scalar(rng, 2).sample(g);
    for (int s = 0; s < g.sites; ++s)
      qs.xiN.at(s) = Odd::generator(0) * p1.at(s) +
                     Odd::generator(1) * p2.at(s);
    QSquare q2 = q0_square(qs);
    CHECK(l2_norm(extract(q2.pi, 0b11)) < 1e-12);
  }
}

TEST_CASE("anchor trivial cases") {
  Rng rng(9);
  auto st = random_state(rng, 2);
  Torus g(2, 8);
  QState qs(g);
  qs.h = to_odd(st.sample_h(g));
  qs.pi = to_odd(st.sample_pi(g));
  Field<double> chi(g, 2);
  for (int s = 0; s < g.sites; ++s) {
    chi.at(s, 0) = 0.4;
    chi.at(s, 1) = -0.8;
  }
  qs.chiP = to_odd(chi);

  SUBCASE("constant scalars produce no bilinear term") {
    for (int s = 0; s < g.sites; ++s)
      qs.xiN.at(s) = Odd::generator(0) * 0.5 + Odd::generator(1) * 1.5;
    QImages I = qbfv_images(qs);
    CHECK(l2_norm(extract(I.pi, 0b11)) < 1e-12);
  }
  SUBCASE("equal test functions cancel") {
    auto p = random_test_scalar(rng, 2).sample(g);
    for (int s = 0; s < g.sites; ++s)
      qs.xiN.at(s) = (Odd::generator(0) + Odd::generator(1)) * p.at(s);
    QImages I = qbfv_images(qs);
    CHECK(l2_norm(extract(I.pi, 0b11)) < 1e-12);
  }
  SUBCASE("zero ghosts reduce the chi images to the constraint data") {
    QImages I = qbfv_images(qs);
    Field<double> hp = hd_covector(extract(qs.h, 0), extract(qs.pi, 0));
    double worst = 0;
    for (int s = 0; s < g.sites; ++s)
      for (int a = 0; a < 2; ++a)
        worst = std::max(worst,
                         std::abs(I.chiP.at(s, a).body() - hp.at(s, a)));
    CHECK(worst < 1e-12);
    // chiN image: the energy density itself.
    Field<double> h0 = extract(qs.h, 0), p0 = extract(qs.pi, 0);
    GeomPack<double> geo = make_geom(h0);
    Field<double> one(g, 1);
    for (int s = 0; s < g.sites; ++s) one.at(s) = 1.0;
    Field<double> hn = hn_density(h0, p0, geo, one);
    for (int s = 0; s < g.sites; ++s)
      worst = std::max(worst, std::abs(I.chiN.at(s).body() - hn.at(s)));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("three dimensional smoke") {
  Rng rng(13);
  auto st = random_state(rng, 3);
  Torus g(3, 6);
  auto h = st.sample_h(g);
  int bad = -1;
  CHECK(metric_spd(g, h, &bad));
  auto pi = st.sample_pi(g);
  GeomPack<double> geo = make_geom(h);
  for (const double& v : geo.scal.v) CHECK(std::isfinite(v));
  auto phi = random_test_scalar(rng, 3);
  double val = integrate(hn_density(h, pi, geo, phi.sample(g)));
  CHECK(std::isfinite(val));

  // Flat 3d metric: curvature vanishes to round-off.
  Field<double> hf(g, 6), pf(g, 6);
  for (int s = 0; s < g.sites; ++s)
    for (int a = 0; a < 3; ++a) hf.at(s, g.sym_index(a, a)) = 1.0;
  GeomPack<double> geof = make_geom(hf);
  for (const double& v : geof.scal.v) CHECK(std::abs(v) < 1e-13);

  // Hn on flat data with constant Pi = c delta in d = 3:
  // Tr[Pi^2] - Tr^2/2 = 3c^2 - 9c^2/2 = -3/2 c^2.
  for (int s = 0; s < g.sites; ++s)
    for (int a = 0; a < 3; ++a) pf.at(s, g.sym_index(a, a)) = 2.0;
  Field<double> one(g, 1);
  for (int s = 0; s < g.sites; ++s) one.at(s) = 1.0;
  double hn = integrate(hn_density(hf, pf, geof, one));
  CHECK(hn == doctest::Approx(-6.0).epsilon(1e-12));
}

TEST_CASE("non-SPD metrics are reported with a site") {
  Torus g(2, 8);
  Field<double> h(g, 3);
  for (int s = 0; s < g.sites; ++s) {
    h.at(s, 0) = 1.0;
    h.at(s, 2) = 1.0;
  }
  h.at(5, 2) = -1.0;
  int bad = -1;
  CHECK(!metric_spd(g, h, &bad));
  CHECK(bad == 5);
}
