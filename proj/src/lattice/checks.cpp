#include "lattice/checks.hpp"

#include <cmath>

namespace bfvlab::lattice {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double vec_l2(const Field<double>& f) { return l2_norm(f); }

void push_rows(LatticeResult& res, const std::string& name,
               const std::vector<int>& Ns, const std::vector<double>& defects) {
  for (size_t i = 0; i < Ns.size(); ++i) {
    ConvRow row;
    row.check = name;
    row.N = Ns[i];
    row.defect = defects[i];
    if (i > 0 && defects[i] > 0 && defects[i - 1] > 0) {
      row.order = std::log2(defects[i - 1] / defects[i]) /
                  std::log2(double(Ns[i]) / Ns[i - 1]);
      row.has_order = true;
    }
    res.rows.push_back(row);
  }
}

// Final-pair fitted order within the band?
bool order_in_band(const LatticeConfig& cfg, const LatticeResult& res,
                   const std::string& name) {
  const ConvRow* last = nullptr;
  for (const auto& r : res.rows)
    if (r.check == name && r.has_order) last = &r;
  return last && last->order >= cfg.band_lo && last->order <= cfg.band_hi;
}

struct TestData {
  SmoothState state;
  FourierScalar phi, psi;
  std::vector<FourierScalar> X, Y;
  std::vector<FourierScalar> chi;
  FourierScalar phi2;
};

TestData make_test_data(const LatticeConfig& cfg, Rng& rng) {
  TestData t;
  t.state = random_state(rng, cfg.d);
  t.phi = random_test_scalar(rng, cfg.d);
  t.psi = random_test_scalar(rng, cfg.d);
  t.X = random_test_vector(rng, cfg.d);
  t.Y = random_test_vector(rng, cfg.d);
  t.chi = random_test_vector(rng, cfg.d);
  t.phi2 = random_test_scalar(rng, cfg.d);
  return t;
}

}  // namespace

LatticeResult check_bracket_relations(const LatticeConfig& cfg) {
  LatticeResult res;
  res.id = "brackets";
  Rng rng(cfg.seed);
  TestData t = make_test_data(cfg, rng);

  std::vector<double> d1, d2, d3;
  for (int N : cfg.Ns) {
    Torus g(cfg.d, N);
    Field<double> h = t.state.sample_h(g);
    Field<double> pi = t.state.sample_pi(g);
    GeomPack<double> geo = make_geom(h);
    Field<double> phis = t.phi.sample(g), psis = t.psi.sample(g);
    Field<double> Xs = sample_vector(g, t.X), Ys = sample_vector(g, t.Y);

    auto HdX = ConstraintFunctional::momentum(t.X);
    auto HdY = ConstraintFunctional::momentum(t.Y);
    auto Hnphi = ConstraintFunctional::energy(t.phi);
    auto Hnpsi = ConstraintFunctional::energy(t.psi);

    // (a) {Hd(X), Hd(Y)} = Hd([X,Y])
    double lhs = poisson_bracket_analytic(g, h, pi, HdX, HdY);
    Field<double> Z = lie_vector(Xs, Ys);
    double rhs = integrate(hd_density(h, pi, Z));
    d1.push_back(std::abs(lhs - rhs));

    // (b) {Hd(X), Hn(phi)} = Hn(L_X phi)
    lhs = poisson_bracket_analytic(g, h, pi, HdX, Hnphi);
    Field<double> lphi = lie_scalar(Xs, phis);
    rhs = integrate(hn_density(h, pi, geo, lphi));
    d2.push_back(std::abs(lhs - rhs));

    // (c) {Hn(phi), Hn(psi)} = Hd(psi grad_h phi - phi grad_h psi).
    // In this bracket orientation (pinned by the mixed relation, which
    // is not invariant under relabeling) the structure function carries
    // the opposite order of phi and psi relative to the usual display;
    // the same flip appears in the ghost image xi grad xi.
    lhs = poisson_bracket_analytic(g, h, pi, Hnphi, Hnpsi);
    Field<double> gp = gradient_vec(geo.hin, psis);
    Field<double> gf = gradient_vec(geo.hin, phis);
    Field<double> W(g, g.d);
    for (int s = 0; s < g.sites; ++s)
      for (int a = 0; a < g.d; ++a)
        W.at(s, a) = psis.at(s) * gf.at(s, a) - phis.at(s) * gp.at(s, a);
    rhs = integrate(hd_density(h, pi, W));
    d3.push_back(std::abs(lhs - rhs));
  }
  push_rows(res, "dd-bracket", cfg.Ns, d1);
  push_rows(res, "dn-bracket", cfg.Ns, d2);
  push_rows(res, "nn-bracket", cfg.Ns, d3);
  res.pass = order_in_band(cfg, res, "dd-bracket") &&
             order_in_band(cfg, res, "dn-bracket") &&
             order_in_band(cfg, res, "nn-bracket");
  res.notes.push_back("analytic brackets use exact lattice adjoints");
  res.notes.push_back(
      "nn structure function enters as psi grad phi - phi grad psi in "
      "this orientation");
  return res;
}

LatticeResult check_bracket_oracle(const LatticeConfig& cfg) {
  LatticeResult res;
  res.id = "bracket-oracle";
  Rng rng(cfg.seed);
  int N = cfg.Ns.empty() ? 8 : cfg.Ns.front();
  Torus g(cfg.d, N);
  double worst = 0;
  int warnings = 0;
  for (int i = 0; i < cfg.oracle_states; ++i) {
    TestData t = make_test_data(cfg, rng);
    Field<double> h = t.state.sample_h(g);
    Field<double> pi = t.state.sample_pi(g);
    auto HdX = ConstraintFunctional::momentum(t.X);
    auto Hnphi = ConstraintFunctional::energy(t.phi);
    auto Hnpsi = ConstraintFunctional::energy(t.psi);
    std::vector<std::pair<ConstraintFunctional, ConstraintFunctional>> pairs =
        {{HdX, Hnphi}, {Hnphi, Hnpsi}, {HdX, ConstraintFunctional::momentum(t.Y)}};
    for (auto& [F, G] : pairs) {
      double a = poisson_bracket_analytic(g, h, pi, F, G);
      FdBracketResult fd = poisson_bracket_fd(g, h, pi, F, G, cfg.fd_step);
      if (fd.step_warning) ++warnings;
      double rel =
          std::abs(a - fd.value) / std::max({1.0, std::abs(a),
                                             std::abs(fd.value)});
      worst = std::max(worst, rel);
    }
  }
  res.values["max_rel_disagreement"] = worst;
  res.values["step_warnings"] = warnings;
  res.values["states"] = cfg.oracle_states;
  res.pass = worst <= 1e-6;
  res.notes.push_back("fd mode perturbs every independent (h,Pi) site "
                      "component with multiplicity-2 off-diagonal weights");
  return res;
}

LatticeResult check_q0_defect(const LatticeConfig& cfg) {
  LatticeResult res;
  res.id = "q0-defect";
  if (cfg.k < 2) {
    res.notes.push_back("requires k >= 2 odd parameters");
    return res;
  }
  Rng rng(cfg.seed);
  TestData t = make_test_data(cfg, rng);
  FourierScalar phi1 = t.phi, phi2 = t.phi2;
  auto X1 = t.X, X3 = t.Y;

  std::vector<double> dh, dxi, dxip, dpi;
  double offshell_norm = 0, onshell_norm = 0;
  for (int N : cfg.Ns) {
    Torus g(cfg.d, N);
    // Run A: scalar ghosts only; the eps1-eps2 component of Q0^2(Pi) is
    // exactly the pre-derived bilinear in (phi1, phi2).
    QState st(g);
    st.h = to_odd(t.state.sample_h(g));
    st.pi = to_odd(t.state.sample_pi(g));
    Field<double> p1 = phi1.sample(g), p2 = phi2.sample(g);
    for (int s = 0; s < g.sites; ++s)
      st.xiN.at(s) = Odd::generator(0) * p1.at(s) +
                     Odd::generator(1) * p2.at(s);
    QSquare q2a = q0_square(st);
    unsigned m12 = 0b011;
    Field<double> q2pi = extract(q2a.pi, m12);
    Field<double> oracle = q0_pi_defect_oracle(
        g, extract(st.h, 0), extract(st.pi, 0), p1, p2);
    Field<double> diff(g, g.sym_count());
    for (size_t i = 0; i < diff.v.size(); ++i)
      diff.v[i] = q2pi.v[i] - oracle.v[i];
    dpi.push_back(vec_l2(diff));

    // Run B: full polarization (third parameter carries a vector ghost)
    // for the vanishing components; Q0^2 of the ghosts is cubic in the
    // polarizations, so its content sits in the eps1 eps2 eps3 mask.
    QState stb = st;
    Field<double> x1 = sample_vector(g, X1), x3 = sample_vector(g, X3);
    for (int s = 0; s < g.sites; ++s)
      for (int a = 0; a < g.d; ++a)
        stb.xiP.at(s, a) = Odd::generator(0) * x1.at(s, a) +
                           Odd::generator(2) * x3.at(s, a);
    QSquare q2b = q0_square(stb);
    double nh = 0;
    for (unsigned m : {0b011u, 0b101u, 0b110u}) {
      double x = vec_l2(extract(q2b.h, m));
      nh += x * x;
    }
    dh.push_back(std::sqrt(nh));
    dxi.push_back(vec_l2(extract(q2b.xiN, 0b111)));
    dxip.push_back(vec_l2(extract(q2b.xiP, 0b111)));

    if (N == cfg.Ns.back()) {
      offshell_norm = vec_l2(q2pi);
      // On-shell companion: Pi = 0 and xiP = 0 makes H_p vanish
      // identically; the Pi defect must sit at round-off.
      QState on(g);
      on.h = st.h;
      on.xiN = st.xiN;
      QSquare q2on = q0_square(on);
      onshell_norm = vec_l2(extract(q2on.pi, m12));
    }
  }
  push_rows(res, "q0sq-h", cfg.Ns, dh);
  push_rows(res, "q0sq-xiN", cfg.Ns, dxi);
  push_rows(res, "q0sq-xiP", cfg.Ns, dxip);
  push_rows(res, "q0sq-Pi-vs-oracle", cfg.Ns, dpi);
  res.values["offshell_pi_norm"] = offshell_norm;
  res.values["onshell_pi_norm"] = onshell_norm;
  double ratio = offshell_norm / std::max(onshell_norm, 1e-300);
  res.values["off_over_on_ratio"] = ratio;
  res.pass = order_in_band(cfg, res, "q0sq-h") &&
             order_in_band(cfg, res, "q0sq-xiN") &&
             order_in_band(cfg, res, "q0sq-xiP") &&
             order_in_band(cfg, res, "q0sq-Pi-vs-oracle") &&
             ratio >= 1e3 && onshell_norm < 1e-8;
  res.notes.push_back(
      "Pi-defect target derived by symbolic eps-expansion: "
      "(H_p (x)_s d phi1)^## phi2 - (1<->2), (x)_s the symmetrization "
      "projector");
  return res;
}

LatticeResult check_anchor(const LatticeConfig& cfg) {
  LatticeResult res;
  res.id = "anchor";
  if (cfg.k < 2) {
    res.notes.push_back("requires k >= 2 odd parameters");
    return res;
  }
  Rng rng(cfg.seed);
  TestData t = make_test_data(cfg, rng);
  std::vector<double> defects;
  for (int N : cfg.Ns) {
    Torus g(cfg.d, N);
    QState st(g);
    st.h = to_odd(t.state.sample_h(g));
    st.pi = to_odd(t.state.sample_pi(g));
    Field<double> p1 = t.phi.sample(g), p2 = t.phi2.sample(g);
    Field<double> chis = sample_vector(g, t.chi);
    st.chiP = to_odd(chis);
    for (int s = 0; s < g.sites; ++s)
      st.xiN.at(s) = Odd::generator(0) * p1.at(s) +
                     Odd::generator(1) * p2.at(s);
    QImages I = qbfv_images(st);
    Field<double> lhs = extract(I.pi, 0b11);
    Field<double> rhs = anchor_oracle(g, extract(st.h, 0), chis, p1, p2);
    // In the frozen sign family the extracted bilinear equals minus the
    // displayed target; the relative sign is convention, the order-2
    // match is the content.
    Field<double> diff(g, g.sym_count());
    for (size_t i = 0; i < diff.v.size(); ++i)
      diff.v[i] = lhs.v[i] + rhs.v[i];
    defects.push_back(vec_l2(diff));
  }
  push_rows(res, "anchor-bilinear", cfg.Ns, defects);
  res.pass = order_in_band(cfg, res, "anchor-bilinear");
  res.notes.push_back(
      "target uses the wide-stencil gradient as an independent "
      "second-order scheme; extracted term = -(displayed target) in the "
      "frozen sign family");
  return res;
}

LatticeResult check_curvature(const LatticeConfig& cfg) {
  LatticeResult res;
  res.id = "curvature";
  Rng rng(cfg.seed);

  // Flat metric: Gamma and R vanish to round-off.
  {
    Torus g(cfg.d, cfg.Ns.empty() ? 8 : cfg.Ns.front());
    Field<double> h(g, g.sym_count());
    for (int s = 0; s < g.sites; ++s)
      for (int a = 0; a < g.d; ++a) h.at(s, g.sym_index(a, a)) = 1.0;
    GeomPack<double> geo = make_geom(h);
    double gmax = 0, rmax = 0;
    for (const double& x : geo.gamma.v) gmax = std::max(gmax, std::abs(x));
    for (const double& x : geo.scal.v) rmax = std::max(rmax, std::abs(x));
    res.values["flat_gamma_max"] = gmax;
    res.values["flat_R_max"] = rmax;
  }

  // Conformal metric in d = 2: R = -2 e^{-2 lam} Lap(lam).
  std::vector<double> dconf, dein, dlie;
  FourierScalar lam;
  {
    FourierScalar::Mode m1;
    m1.k = {1, 0, 0};
    m1.amp_sin = 0.1;
    FourierScalar::Mode m2;
    m2.k = {0, 1, 0};
    m2.amp_cos = 0.07;
    lam.modes = {m1, m2};
  }
  TestData t = make_test_data(cfg, rng);
  for (int N : cfg.Ns) {
    Torus g(2, N);
    Field<double> lams = lam.sample(g);
    Field<double> h(g, 3);
    for (int s = 0; s < g.sites; ++s) {
      double e = std::exp(2.0 * lams.at(s));
      h.at(s, 0) = e;
      h.at(s, 2) = e;
    }
    GeomPack<double> geo = make_geom(h);
    Field<double> diff(g, 1);
    for (int s = 0; s < g.sites; ++s) {
      std::array<double, 3> x{g.coord(s, 0), g.coord(s, 1), 0.0};
      double lap = 0;
      for (const auto& m : lam.modes) {
        double phase = kTwoPi * (m.k[0] * x[0] + m.k[1] * x[1]);
        double k2 = kTwoPi * kTwoPi * (m.k[0] * m.k[0] + m.k[1] * m.k[1]);
        lap += -k2 * (m.amp_cos * std::cos(phase) + m.amp_sin * std::sin(phase));
      }
      double exact = -2.0 * std::exp(-2.0 * lams.at(s)) * lap;
      diff.at(s) = geo.scal.at(s) - exact;
    }
    dconf.push_back(vec_l2(diff));

    // d = 2 Einstein tensor vanishes identically in the continuum.
    Field<double> h2 = t.state.sample_h(g);
    GeomPack<double> geo2 = make_geom(h2);
    dein.push_back(vec_l2(geo2.einstein));

    // Lie bracket coordinate formula against the exact derivative.
    Field<double> Xs = sample_vector(g, t.X), Ys = sample_vector(g, t.Y);
    Field<double> Z = lie_vector(Xs, Ys);
    Field<double> dz(g, 2);
    for (int s = 0; s < g.sites; ++s) {
      std::array<double, 3> x{g.coord(s, 0), g.coord(s, 1), 0.0};
      for (int a = 0; a < 2; ++a) {
        double exact = 0;
        for (int b = 0; b < 2; ++b)
          exact += t.X[b].value(x, 2) * t.Y[a].derivative(x, 2, b) -
                   t.Y[b].value(x, 2) * t.X[a].derivative(x, 2, b);
        dz.at(s, a) = Z.at(s, a) - exact;
      }
    }
    dlie.push_back(vec_l2(dz));
  }
  push_rows(res, "conformal-R", cfg.Ns, dconf);
  push_rows(res, "einstein-2d", cfg.Ns, dein);
  push_rows(res, "lie-bracket", cfg.Ns, dlie);
  res.pass = order_in_band(cfg, res, "conformal-R") &&
             order_in_band(cfg, res, "einstein-2d") &&
             order_in_band(cfg, res, "lie-bracket") &&
             res.values["flat_gamma_max"] < 1e-12 &&
             res.values["flat_R_max"] < 1e-12;
  return res;
}

}  // namespace bfvlab::lattice
