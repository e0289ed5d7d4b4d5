#include "lattice/qflow.hpp"

namespace bfvlab::lattice {

QState::QState(const Torus& grid)
    : g(grid),
      h(grid, grid.sym_count()),
      pi(grid, grid.sym_count()),
      xiN(grid, 1),
      xiP(grid, grid.d),
      chiN(grid, 1),
      chiP(grid, grid.d) {}

Field<Odd> to_odd(const Field<double>& f) {
  Field<Odd> out(f.g, f.ncomp);
  for (size_t i = 0; i < f.v.size(); ++i) out.v[i] = Odd(f.v[i]);
  return out;
}

Field<double> extract(const Field<Odd>& f, unsigned mask) {
  Field<double> out(f.g, f.ncomp);
  for (size_t i = 0; i < f.v.size(); ++i) out.v[i] = f.v[i].component(mask);
  return out;
}

namespace {

// s_grad . xi^n grad_h xi^n + 1/2 [xi^P, xi^P], Grassmann products in
// the written order.
Field<Odd> ghost_vector_image(const QState& st, const Field<Odd>& hin,
                              double s_grad) {
  const Torus& g = st.g;
  Field<Odd> out(g, g.d);
  std::array<Field<Odd>, 3> dxi, dxiP;
  for (int a = 0; a < g.d; ++a) {
    dxi[a] = partial(st.xiN, a);
    dxiP[a] = partial(st.xiP, a);
  }
  for (int s = 0; s < g.sites; ++s)
    for (int a = 0; a < g.d; ++a) {
      Odd acc;
      for (int b = 0; b < g.d; ++b) {
        acc += st.xiN.at(s) * (hin.at(s, g.sym_index(a, b)) * dxi[b].at(s)) *
               s_grad;
        // 1/2 [xi,xi]^a = xi^b d_b xi^a for an odd vector field
        acc += st.xiP.at(s, b) * dxiP[b].at(s, a);
      }
      out.at(s, a) = acc;
    }
  return out;
}

}  // namespace

QImages q0_images(const QState& st, const QSigns& signs) {
  const Torus& g = st.g;
  GeomPack<Odd> geo = make_geom(st.h);
  Field<Odd> th = tilde_h(st.h, st.pi, geo);
  Field<Odd> tp = tilde_pi(st.h, st.pi, geo);
  Field<Odd> gss = raise2(geo.hin, geo.einstein);
  Field<Odd> dss = raise2(geo.hin, dh_operator(st.h, geo, st.xiN));

  QImages out;
  out.xiN = lie_scalar(st.xiP, st.xiN);
  out.xiP = ghost_vector_image(st, geo.hin, signs.s_grad);

  Field<Odd> lh = lie_metric(st.xiP, st.h);
  out.h = Field<Odd>(g, g.sym_count());
  for (int s = 0; s < g.sites; ++s)
    for (int c = 0; c < g.sym_count(); ++c)
      out.h.at(s, c) =
          th.at(s, c) * st.xiN.at(s) + lh.at(s, c) * signs.s_lie;

  Field<Odd> lp = lie_momentum(st.xiP, st.pi);
  out.pi = Field<Odd>(g, g.sym_count());
  for (int s = 0; s < g.sites; ++s)
    for (int c = 0; c < g.sym_count(); ++c)
      out.pi.at(s, c) = tp.at(s, c) * st.xiN.at(s) * signs.s_tilde +
                        geo.vol.at(s) * (gss.at(s, c) * st.xiN.at(s) +
                                         dss.at(s, c)) +
                        lp.at(s, c) * signs.s_lie;
  return out;
}

QImages qbfv_images(const QState& st, const QSigns& signs) {
  const Torus& g = st.g;
  QImages out = q0_images(st, signs);
  GeomPack<Odd> geo = make_geom(st.h);

  // chi-dependent term of Q(Pi); the sign is the one consistent with
  // Q(chi_p) = H_p + ... under Q^2 = 0 in this sign family (it is what
  // makes the Prop-5.1-style defect below close numerically).
  std::array<Field<Odd>, 3> dxi;
  for (int a = 0; a < g.d; ++a) dxi[a] = partial(st.xiN, a);
  for (int s = 0; s < g.sites; ++s) {
    Mat<Odd> gi = load_sym(geo.hin, s);
    std::array<Odd, 3> chiS{}, dxiS{};
    for (int a = 0; a < g.d; ++a)
      for (int b = 0; b < g.d; ++b) {
        chiS[a] += gi[a * 3 + b] * st.chiP.at(s, b);
        dxiS[a] += gi[a * 3 + b] * dxi[b].at(s);
      }
    for (int a = 0; a < g.d; ++a)
      for (int b = a; b < g.d; ++b) {
        Odd sym = (chiS[a] * dxiS[b] + chiS[b] * dxiS[a]) * 0.5;
        out.pi.at(s, g.sym_index(a, b)) += sym * st.xiN.at(s);
      }
  }

  // Q(chi_p) = H_p + L_{xi^P} chi_p - chi_n d xi^n.
  Field<Odd> hp = hd_covector(st.h, st.pi);
  Field<Odd> lchip = lie_oneform_density(st.xiP, st.chiP);
  out.chiP = Field<Odd>(g, g.d);
  for (int s = 0; s < g.sites; ++s)
    for (int a = 0; a < g.d; ++a)
      out.chiP.at(s, a) = hp.at(s, a) + lchip.at(s, a) * signs.s_lie -
                          st.chiN.at(s) * dxi[a].at(s);

  // Q(chi_n) = H_n + L_{xi^P} chi_n
  //            - 2 (L_{eta^sharp} xi^n vol_h + 1/2 xi^n Div_h(eta^sharp)
  //                 vol_h),
  // with eta^sharp the de-densitized chi_p^sharp.
  Field<Odd> hn(g, 1);
  for (int s = 0; s < g.sites; ++s) {
    Mat<Odd> hm = load_sym(st.h, s);
    Mat<Odd> pm = load_sym(st.pi, s);
    hn.at(s) = kinetic_density_site(g, hm, pm, geo.vol.at(s)) +
               geo.vol.at(s) * geo.scal.at(s);
  }
  Field<Odd> eta(g, g.d);
  for (int s = 0; s < g.sites; ++s) {
    Mat<Odd> gi = load_sym(geo.hin, s);
    Odd iv = inv(geo.vol.at(s));
    for (int a = 0; a < g.d; ++a) {
      Odd acc;
      for (int b = 0; b < g.d; ++b) acc += gi[a * 3 + b] * st.chiP.at(s, b);
      eta.at(s, a) = acc * iv;
    }
  }
  Field<Odd> letaxi = lie_scalar(eta, st.xiN);
  // Div_h(eta) = (1/vol) d_a(vol eta^a)
  Field<Odd> voleta(g, g.d);
  for (int s = 0; s < g.sites; ++s)
    for (int a = 0; a < g.d; ++a)
      voleta.at(s, a) = geo.vol.at(s) * eta.at(s, a);
  std::array<Field<Odd>, 3> dve;
  for (int a = 0; a < g.d; ++a) dve[a] = partial(voleta, a);
  Field<Odd> lchin = lie_scalar_density(st.xiP, st.chiN);
  out.chiN = Field<Odd>(g, 1);
  for (int s = 0; s < g.sites; ++s) {
    Odd div;
    for (int a = 0; a < g.d; ++a) div += dve[a].at(s, a);
    div = div * inv(geo.vol.at(s));
    Odd half = letaxi.at(s) * geo.vol.at(s) +
               st.xiN.at(s) * div * geo.vol.at(s) * 0.5;
    out.chiN.at(s) = hn.at(s) + lchin.at(s) * signs.s_lie - half * 2.0;
  }
  return out;
}

QSquare q0_square(const QState& st, const QSigns& signs) {
  QImages I = q0_images(st, signs);
  Odd eps = Odd::generator(kShiftGen);
  QState sh = st;
  auto shift = [&](Field<Odd>& f, const Field<Odd>& img) {
    for (size_t i = 0; i < f.v.size(); ++i) f.v[i] += eps * img.v[i];
  };
  shift(sh.h, I.h);
  shift(sh.pi, I.pi);
  shift(sh.xiN, I.xiN);
  shift(sh.xiP, I.xiP);
  QImages I2 = q0_images(sh, signs);
  auto dshift = [&](const Field<Odd>& f) {
    Field<Odd> out(f.g, f.ncomp);
    for (size_t i = 0; i < f.v.size(); ++i)
      out.v[i] = left_derivative(f.v[i], kShiftGen);
    return out;
  };
  QSquare out;
  out.xiN = dshift(I2.xiN);
  out.xiP = dshift(I2.xiP);
  out.h = dshift(I2.h);
  out.pi = dshift(I2.pi);
  return out;
}

Field<double> q0_pi_defect_oracle(const Torus& g, const Field<double>& h,
                                  const Field<double>& pi,
                                  const Field<double>& phi1,
                                  const Field<double>& phi2) {
  Field<double> hp = hd_covector(h, pi);
  Field<double> hin = inverse_metric(h);
  std::array<Field<double>, 3> d1, d2;
  for (int a = 0; a < g.d; ++a) {
    d1[a] = partial(phi1, a);
    d2[a] = partial(phi2, a);
  }
  Field<double> out(g, g.sym_count());
  for (int s = 0; s < g.sites; ++s) {
    Mat<double> gi = load_sym(hin, s);
    std::array<double, 3> hpS{}, w1S{}, w2S{};
    for (int a = 0; a < g.d; ++a)
      for (int b = 0; b < g.d; ++b) {
        hpS[a] += gi[a * 3 + b] * hp.at(s, b);
        w1S[a] += gi[a * 3 + b] * d1[b].at(s);
        w2S[a] += gi[a * 3 + b] * d2[b].at(s);
      }
    for (int a = 0; a < g.d; ++a)
      for (int b = a; b < g.d; ++b) {
        double t1 = 0.5 * (hpS[a] * w1S[b] + hpS[b] * w1S[a]);
        double t2 = 0.5 * (hpS[a] * w2S[b] + hpS[b] * w2S[a]);
        // Overall sign fixed with the frozen sign family (see QSigns).
        out.at(s, g.sym_index(a, b)) =
            -(t1 * phi2.at(s) - t2 * phi1.at(s));
      }
  }
  return out;
}

Field<double> anchor_oracle(const Torus& g, const Field<double>& h,
                            const Field<double>& chiP,
                            const Field<double>& phi1,
                            const Field<double>& phi2) {
  Field<double> hin = inverse_metric(h);
  std::array<Field<double>, 3> d1, d2;
  for (int a = 0; a < g.d; ++a) {
    d1[a] = partial_wide(phi1, a);
    d2[a] = partial_wide(phi2, a);
  }
  Field<double> out(g, g.sym_count());
  for (int s = 0; s < g.sites; ++s) {
    Mat<double> gi = load_sym(hin, s);
    std::array<double, 3> chiS{}, Z{};
    for (int a = 0; a < g.d; ++a)
      for (int b = 0; b < g.d; ++b) {
        chiS[a] += gi[a * 3 + b] * chiP.at(s, b);
        Z[a] += gi[a * 3 + b] *
                (phi1.at(s) * d2[b].at(s) - phi2.at(s) * d1[b].at(s));
      }
    for (int a = 0; a < g.d; ++a)
      for (int b = a; b < g.d; ++b)
        out.at(s, g.sym_index(a, b)) =
            0.5 * (chiS[a] * Z[b] + chiS[b] * Z[a]);
  }
  return out;
}

}  // namespace bfvlab::lattice
