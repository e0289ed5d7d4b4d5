#include "lattice/functional.hpp"

namespace bfvlab::lattice {

namespace {

constexpr int MC = 6;   // max sym components (d = 3)
constexpr int MG = 18;  // max Christoffel components

// Per-site jets feeding the density: the metric, its first differences,
// the Christoffel field and its first differences, and the momentum.
template <class T>
struct SiteJets {
  std::array<T, MC> h{};
  std::array<std::array<T, MC>, 3> Dh{};
  std::array<T, MG> Gam{};
  std::array<std::array<T, MG>, 3> DGam{};
  std::array<T, MC> P{};
};

struct SiteTests {
  double phi = 0;
  std::array<double, 3> X{};
  std::array<std::array<double, 3>, 3> DX{};  // DX[axis][comp]
};

template <class T>
std::array<T, MG> gamma_site(const Torus& g, const std::array<T, MC>& h,
                             const std::array<std::array<T, MC>, 3>& Dh) {
  int sc = g.sym_count();
  Mat<T> hm{};
  for (int a = 0; a < g.d; ++a)
    for (int b = 0; b < g.d; ++b) hm[a * 3 + b] = h[g.sym_index(a, b)];
  Mat<T> gi = mat_inv(hm, g.d);
  std::array<T, MG> out{};
  for (int a = 0; a < g.d; ++a)
    for (int b = 0; b < g.d; ++b)
      for (int c = b; c < g.d; ++c) {
        T acc{};
        for (int e = 0; e < g.d; ++e) {
          T term = Dh[b][g.sym_index(e, c)] + Dh[c][g.sym_index(e, b)] -
                   Dh[e][g.sym_index(b, c)];
          acc += gi[a * 3 + e] * term;
        }
        out[a * sc + g.sym_index(b, c)] = acc * 0.5;
      }
  return out;
}

template <class T>
T density_site(const Torus& g, ConstraintFunctional::Kind kind,
               const SiteJets<T>& J, const SiteTests& t) {
  int sc = g.sym_count();
  Mat<T> hm{};
  for (int a = 0; a < g.d; ++a)
    for (int b = 0; b < g.d; ++b) hm[a * 3 + b] = J.h[g.sym_index(a, b)];

  if (kind == ConstraintFunctional::Kind::MomentumD) {
    T acc{};
    for (int a = 0; a < g.d; ++a)
      for (int b = 0; b < g.d; ++b) {
        T lxh{};
        for (int c = 0; c < g.d; ++c) {
          lxh += J.Dh[c][g.sym_index(a, b)] * t.X[c];
          lxh += hm[c * 3 + b] * t.DX[a][c];
          lxh += hm[a * 3 + c] * t.DX[b][c];
        }
        acc += J.P[g.sym_index(a, b)] * lxh;
      }
    return acc;
  }

  // EnergyN
  Mat<T> pm{};
  for (int a = 0; a < g.d; ++a)
    for (int b = 0; b < g.d; ++b) pm[a * 3 + b] = J.P[g.sym_index(a, b)];
  Mat<T> gi = mat_inv(hm, g.d);
  T vol = ring_sqrt(mat_det(hm, g.d));
  T kin = kinetic_density_site(g, hm, pm, vol);

  T R{};
  for (int b = 0; b < g.d; ++b)
    for (int dd = 0; dd < g.d; ++dd) {
      T ric{};
      for (int a = 0; a < g.d; ++a) {
        ric += J.DGam[a][a * sc + g.sym_index(b, dd)];
        ric -= J.DGam[dd][a * sc + g.sym_index(b, a)];
        for (int e = 0; e < g.d; ++e) {
          ric += J.Gam[a * sc + g.sym_index(a, e)] *
                 J.Gam[e * sc + g.sym_index(b, dd)];
          ric -= J.Gam[a * sc + g.sym_index(dd, e)] *
                 J.Gam[e * sc + g.sym_index(b, a)];
        }
      }
      R += gi[b * 3 + dd] * ric;
    }
  return (kin + vol * R) * t.phi;
}

struct Prepared {
  int sc = 0;
  Field<double> h, pi;
  std::array<Field<double>, 3> Dh;
  Field<double> Gam;
  std::array<Field<double>, 3> DGam;
  Field<double> phis;
  Field<double> Xs;
  std::array<Field<double>, 3> DXs;
};

Prepared prepare(const Torus& g, const Field<double>& h,
                 const Field<double>& pi, const ConstraintFunctional& F) {
  Prepared p;
  p.sc = g.sym_count();
  p.h = h;
  p.pi = pi;
  for (int a = 0; a < g.d; ++a) p.Dh[a] = partial(h, a);
  p.Gam = Field<double>(g, g.d * p.sc);
  for (int s = 0; s < g.sites; ++s) {
    SiteJets<double> J;
    for (int c = 0; c < p.sc; ++c) {
      J.h[c] = h.at(s, c);
      for (int a = 0; a < g.d; ++a) J.Dh[a][c] = p.Dh[a].at(s, c);
    }
    auto gam = gamma_site(g, J.h, J.Dh);
    for (int q = 0; q < g.d * p.sc; ++q) p.Gam.at(s, q) = gam[q];
  }
  for (int a = 0; a < g.d; ++a) p.DGam[a] = partial(p.Gam, a);
  if (F.kind == ConstraintFunctional::Kind::EnergyN) {
    p.phis = F.phi.sample(g);
  } else {
    p.Xs = sample_vector(g, F.xvec);
    for (int a = 0; a < g.d; ++a) p.DXs[a] = partial(p.Xs, a);
  }
  return p;
}

SiteJets<double> jets_at(const Torus& g, const Prepared& p, int s) {
  SiteJets<double> J;
  for (int c = 0; c < p.sc; ++c) {
    J.h[c] = p.h.at(s, c);
    J.P[c] = p.pi.at(s, c);
    for (int a = 0; a < g.d; ++a) J.Dh[a][c] = p.Dh[a].at(s, c);
  }
  for (int q = 0; q < g.d * p.sc; ++q) {
    J.Gam[q] = p.Gam.at(s, q);
    for (int a = 0; a < g.d; ++a) J.DGam[a][q] = p.DGam[a].at(s, q);
  }
  return J;
}

SiteTests tests_at(const Torus& g, const Prepared& p,
                   const ConstraintFunctional& F, int s) {
  SiteTests t;
  if (F.kind == ConstraintFunctional::Kind::EnergyN) {
    t.phi = p.phis.at(s);
  } else {
    for (int a = 0; a < g.d; ++a) {
      t.X[a] = p.Xs.at(s, a);
      for (int ax = 0; ax < g.d; ++ax) t.DX[ax][a] = p.DXs[ax].at(s, a);
    }
  }
  return t;
}

double cell_volume(const Torus& g) {
  double c = 1;
  for (int i = 0; i < g.d; ++i) c *= g.dx;
  return c;
}

}  // namespace

double functional_value(const Torus& g, const Field<double>& h,
                        const Field<double>& pi,
                        const ConstraintFunctional& F) {
  Prepared p = prepare(g, h, pi, F);
  double acc = 0;
  for (int s = 0; s < g.sites; ++s)
    acc += density_site(g, F.kind, jets_at(g, p, s), tests_at(g, p, F, s));
  return acc * cell_volume(g);
}

FunctionalGradient functional_gradient(const Torus& g, const Field<double>& h,
                                       const Field<double>& pi,
                                       const ConstraintFunctional& F) {
  Prepared p = prepare(g, h, pi, F);
  const int sc = p.sc;
  const bool energy = F.kind == ConstraintFunctional::Kind::EnergyN;

  // Per-site partial derivatives of the density with respect to every
  // slot, by dual numbers.
  Field<double> rho_h(g, sc), rho_P(g, sc);
  std::array<Field<double>, 3> rho_Dh;
  Field<double> rho_G(g, g.d * sc);
  std::array<Field<double>, 3> rho_DG;
  for (int a = 0; a < g.d; ++a) {
    rho_Dh[a] = Field<double>(g, sc);
    rho_DG[a] = Field<double>(g, g.d * sc);
  }

  for (int s = 0; s < g.sites; ++s) {
    SiteJets<double> J0 = jets_at(g, p, s);
    SiteTests t = tests_at(g, p, F, s);
    SiteJets<Dual> J;
    for (int c = 0; c < sc; ++c) {
      J.h[c] = J0.h[c];
      J.P[c] = J0.P[c];
      for (int a = 0; a < g.d; ++a) J.Dh[a][c] = J0.Dh[a][c];
    }
    for (int q = 0; q < g.d * sc; ++q) {
      J.Gam[q] = J0.Gam[q];
      for (int a = 0; a < g.d; ++a) J.DGam[a][q] = J0.DGam[a][q];
    }
    auto eval = [&]() { return density_site(g, F.kind, J, t).d; };
    for (int c = 0; c < sc; ++c) {
      J.h[c].d = 1;
      rho_h.at(s, c) = eval();
      J.h[c].d = 0;
      J.P[c].d = 1;
      rho_P.at(s, c) = eval();
      J.P[c].d = 0;
      for (int a = 0; a < g.d; ++a) {
        J.Dh[a][c].d = 1;
        rho_Dh[a].at(s, c) = eval();
        J.Dh[a][c].d = 0;
      }
    }
    if (energy) {
      for (int q = 0; q < g.d * sc; ++q) {
        J.Gam[q].d = 1;
        rho_G.at(s, q) = eval();
        J.Gam[q].d = 0;
        for (int a = 0; a < g.d; ++a) {
          J.DGam[a][q].d = 1;
          rho_DG[a].at(s, q) = eval();
          J.DGam[a][q].d = 0;
        }
      }
    }
  }

  // Gamma-bar = rho_G - sum_a D_a(rho_DG[a])  (exact lattice transpose).
  Field<double> gbar(g, g.d * sc);
  if (energy) {
    gbar = rho_G;
    for (int a = 0; a < g.d; ++a) {
      Field<double> d = partial(rho_DG[a], a);
      for (int s = 0; s < g.sites; ++s)
        for (int q = 0; q < g.d * sc; ++q) gbar.at(s, q) -= d.at(s, q);
    }
  }

  // Chain Gamma back to (h, Dh) with per-site dual Jacobians.
  Field<double> hbar = rho_h;
  std::array<Field<double>, 3> dhbar = rho_Dh;
  if (energy) {
    for (int s = 0; s < g.sites; ++s) {
      SiteJets<double> J0 = jets_at(g, p, s);
      std::array<Dual, MC> hD{};
      std::array<std::array<Dual, MC>, 3> DhD{};
      for (int c = 0; c < sc; ++c) {
        hD[c] = J0.h[c];
        for (int a = 0; a < g.d; ++a) DhD[a][c] = J0.Dh[a][c];
      }
      auto accumulate = [&](double* target) {
        auto gam = gamma_site(g, hD, DhD);
        double acc = 0;
        for (int q = 0; q < g.d * sc; ++q) acc += gbar.at(s, q) * gam[q].d;
        *target += acc;
      };
      for (int c = 0; c < sc; ++c) {
        hD[c].d = 1;
        double add = 0;
        accumulate(&add);
        hbar.at(s, c) += add;
        hD[c].d = 0;
        for (int a = 0; a < g.d; ++a) {
          DhD[a][c].d = 1;
          add = 0;
          accumulate(&add);
          dhbar[a].at(s, c) += add;
          DhD[a][c].d = 0;
        }
      }
    }
  }

  FunctionalGradient out;
  out.dh = hbar;
  for (int a = 0; a < g.d; ++a) {
    Field<double> d = partial(dhbar[a], a);
    for (int s = 0; s < g.sites; ++s)
      for (int c = 0; c < sc; ++c) out.dh.at(s, c) -= d.at(s, c);
  }
  out.dpi = rho_P;
  double cell = cell_volume(g);
  for (auto& x : out.dh.v) x *= cell;
  for (auto& x : out.dpi.v) x *= cell;
  return out;
}

FunctionalGradient functional_gradient_fd(const Torus& g,
                                          const Field<double>& h,
                                          const Field<double>& pi,
                                          const ConstraintFunctional& F,
                                          double step) {
  FunctionalGradient out;
  out.dh = Field<double>(g, g.sym_count());
  out.dpi = Field<double>(g, g.sym_count());
  Field<double> hw = h, pw = pi;
  for (int s = 0; s < g.sites; ++s)
    for (int c = 0; c < g.sym_count(); ++c) {
      double save = hw.at(s, c);
      hw.at(s, c) = save + step;
      double fp = functional_value(g, hw, pw, F);
      hw.at(s, c) = save - step;
      double fm = functional_value(g, hw, pw, F);
      hw.at(s, c) = save;
      out.dh.at(s, c) = (fp - fm) / (2 * step);

      save = pw.at(s, c);
      pw.at(s, c) = save + step;
      fp = functional_value(g, hw, pw, F);
      pw.at(s, c) = save - step;
      fm = functional_value(g, hw, pw, F);
      pw.at(s, c) = save;
      out.dpi.at(s, c) = (fp - fm) / (2 * step);
    }
  return out;
}

double bracket_from_gradients(const Torus& g, const FunctionalGradient& F,
                              const FunctionalGradient& G) {
  double acc = 0;
  for (int s = 0; s < g.sites; ++s)
    for (int c = 0; c < g.sym_count(); ++c) {
      double w = 1.0 / g.sym_weight(c);
      acc += w * (F.dh.at(s, c) * G.dpi.at(s, c) -
                  F.dpi.at(s, c) * G.dh.at(s, c));
    }
  return acc / cell_volume(g);
}

double poisson_bracket_analytic(const Torus& g, const Field<double>& h,
                                const Field<double>& pi,
                                const ConstraintFunctional& F,
                                const ConstraintFunctional& G) {
  FunctionalGradient gf = functional_gradient(g, h, pi, F);
  FunctionalGradient gg = functional_gradient(g, h, pi, G);
  return bracket_from_gradients(g, gf, gg);
}

FdBracketResult poisson_bracket_fd(const Torus& g, const Field<double>& h,
                                   const Field<double>& pi,
                                   const ConstraintFunctional& F,
                                   const ConstraintFunctional& G,
                                   double step) {
  FdBracketResult r;
  auto at = [&](double st) {
    FunctionalGradient gf = functional_gradient_fd(g, h, pi, F, st);
    FunctionalGradient gg = functional_gradient_fd(g, h, pi, G, st);
    return bracket_from_gradients(g, gf, gg);
  };
  double b1 = at(step);
  double b2 = at(step * 0.5);
  r.value = b2;
  r.step_used = step * 0.5;
  double scale = std::max({1.0, std::abs(b1), std::abs(b2)});
  if (std::abs(b1 - b2) > 1e-6 * scale) r.step_warning = true;
  return r;
}

Flow hamiltonian_flow(const Torus& g, const Field<double>& h,
                      const Field<double>& pi,
                      const ConstraintFunctional& G) {
  FunctionalGradient grad = functional_gradient(g, h, pi, G);
  Flow f;
  f.dh = Field<double>(g, g.sym_count());
  f.dpi = Field<double>(g, g.sym_count());
  double cell = cell_volume(g);
  for (int s = 0; s < g.sites; ++s)
    for (int c = 0; c < g.sym_count(); ++c) {
      double w = g.sym_weight(c) * cell;
      f.dh.at(s, c) = grad.dpi.at(s, c) / w;
      f.dpi.at(s, c) = -grad.dh.at(s, c) / w;
    }
  return f;
}

}  // namespace bfvlab::lattice
