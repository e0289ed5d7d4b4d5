#pragma once

#include "lattice/geometry.hpp"

namespace bfvlab::lattice {

// Kinetic scalar of the energy constraint:
//   (1/vol_h)(Tr_h[Pi^2] - Tr_h[Pi]^2/(d-1)),
// a weight-1 density (Pi carries weight 1).
template <class T>
T kinetic_density_site(const Torus& g, const Mat<T>& h, const Mat<T>& P,
                       const T& vol) {
  T tr2{}, tr{};
  for (int a = 0; a < g.d; ++a)
    for (int b = 0; b < g.d; ++b) {
      tr += P[a * 3 + b] * h[a * 3 + b];
      for (int c = 0; c < g.d; ++c)
        for (int e = 0; e < g.d; ++e)
          tr2 += P[a * 3 + b] * h[b * 3 + c] * P[c * 3 + e] * h[e * 3 + a];
    }
  return (tr2 - tr * tr / double(g.d - 1)) * ring_inv(vol);
}

// Energy-constraint density H_n(phi) per site.
template <class T>
Field<T> hn_density(const Field<T>& h, const Field<T>& P,
                    const GeomPack<T>& geo, const Field<T>& phi) {
  const Torus& g = h.g;
  Field<T> out(g, 1);
  for (int s = 0; s < g.sites; ++s) {
    Mat<T> hm = load_sym(h, s);
    Mat<T> pm = load_sym(P, s);
    T kin = kinetic_density_site(g, hm, pm, geo.vol.at(s));
    out.at(s) = (kin + geo.vol.at(s) * geo.scal.at(s)) * phi.at(s);
  }
  return out;
}

// Momentum-constraint density H_p(X) = <Pi, L_X h> per site.
template <class T>
Field<T> hd_density(const Field<T>& h, const Field<T>& P,
                    const Field<T>& X) {
  const Torus& g = h.g;
  Field<T> lxh = lie_metric(X, h);
  Field<T> out(g, 1);
  for (int s = 0; s < g.sites; ++s) {
    T acc{};
    for (int c = 0; c < g.sym_count(); ++c)
      acc += P.at(s, c) * lxh.at(s, c) * double(g.sym_weight(c));
    out.at(s) = acc;
  }
  return out;
}

// Momentum constraint as a 1-form density:
//   (H_p)_a = Pi^{bc} d_a h_{bc} - 2 d_b (Pi^{bc} h_{ca}),
// the lattice-exact summation-by-parts transcript of <Pi, L_X h>.
template <class T>
Field<T> hd_covector(const Field<T>& h, const Field<T>& P) {
  const Torus& g = h.g;
  Field<T> mixed(g, g.d * g.d);  // B^b_a = Pi^{bc} h_{ca}
  for (int s = 0; s < g.sites; ++s)
    for (int b = 0; b < g.d; ++b)
      for (int a = 0; a < g.d; ++a) {
        T acc{};
        for (int c = 0; c < g.d; ++c)
          acc += P.at(s, g.sym_index(b, c)) * h.at(s, g.sym_index(c, a));
        mixed.at(s, b * g.d + a) = acc;
      }
  std::array<Field<T>, 3> dh, dB;
  for (int a = 0; a < g.d; ++a) {
    dh[a] = partial(h, a);
    dB[a] = partial(mixed, a);
  }
  Field<T> out(g, g.d);
  for (int s = 0; s < g.sites; ++s)
    for (int a = 0; a < g.d; ++a) {
      T acc{};  // full double sum over b,c
      for (int b = 0; b < g.d; ++b)
        for (int c = 0; c < g.d; ++c)
          acc += P.at(s, g.sym_index(b, c)) * dh[a].at(s, g.sym_index(b, c));
      T acc2{};
      for (int b = 0; b < g.d; ++b) acc2 += dB[b].at(s, b * g.d + a);
      out.at(s, a) = acc - acc2 * 2.0;
    }
  return out;
}

// tilde-h = (2/vol)(Pi^flatflat - h Tr_h Pi/(d-1)) = -2K, lower indices.
template <class T>
Field<T> tilde_h(const Field<T>& h, const Field<T>& P,
                 const GeomPack<T>& geo) {
  const Torus& g = h.g;
  Field<T> out(g, g.sym_count());
  for (int s = 0; s < g.sites; ++s) {
    Mat<T> hm = load_sym(h, s);
    Mat<T> pm = load_sym(P, s);
    T tr{};
    for (int a = 0; a < g.d; ++a)
      for (int b = 0; b < g.d; ++b) tr += pm[a * 3 + b] * hm[a * 3 + b];
    T iv = ring_inv(geo.vol.at(s));
    for (int a = 0; a < g.d; ++a)
      for (int b = a; b < g.d; ++b) {
        T flat{};
        for (int c = 0; c < g.d; ++c)
          for (int e = 0; e < g.d; ++e)
            flat += hm[a * 3 + c] * pm[c * 3 + e] * hm[e * 3 + b];
        out.at(s, g.sym_index(a, b)) =
            (flat - hm[a * 3 + b] * tr / double(g.d - 1)) * iv * 2.0;
      }
  }
  return out;
}

// tilde-Pi = d(kinetic density)/dh at fixed Pi, upper indices:
//   -(1/2vol) h^{ab} (kinetic numerator) + (2/vol)([Pi^2]^sharp
//   - Pi Tr_h Pi/(d-1)).
template <class T>
Field<T> tilde_pi(const Field<T>& h, const Field<T>& P,
                  const GeomPack<T>& geo) {
  const Torus& g = h.g;
  Field<T> out(g, g.sym_count());
  for (int s = 0; s < g.sites; ++s) {
    Mat<T> hm = load_sym(h, s);
    Mat<T> pm = load_sym(P, s);
    Mat<T> gi = load_sym(geo.hin, s);
    T tr{}, tr2{};
    for (int a = 0; a < g.d; ++a)
      for (int b = 0; b < g.d; ++b) {
        tr += pm[a * 3 + b] * hm[a * 3 + b];
        for (int c = 0; c < g.d; ++c)
          for (int e = 0; e < g.d; ++e)
            tr2 += pm[a * 3 + b] * hm[b * 3 + c] * pm[c * 3 + e] *
                   hm[e * 3 + a];
      }
    T numer = tr2 - tr * tr / double(g.d - 1);
    T iv = ring_inv(geo.vol.at(s));
    for (int a = 0; a < g.d; ++a)
      for (int b = a; b < g.d; ++b) {
        T sq{};
        for (int c = 0; c < g.d; ++c)
          for (int e = 0; e < g.d; ++e)
            sq += pm[a * 3 + c] * hm[c * 3 + e] * pm[e * 3 + b];
        T val = gi[a * 3 + b] * numer * iv * (-0.5) +
                (sq - pm[a * 3 + b] * tr / double(g.d - 1)) * iv * 2.0;
        out.at(s, g.sym_index(a, b)) = val;
      }
  }
  return out;
}

template <class T>
T integrate(const Field<T>& density) {
  const Torus& g = density.g;
  T acc{};
  for (int s = 0; s < g.sites; ++s) acc += density.at(s);
  double cell = 1.0;
  for (int i = 0; i < g.d; ++i) cell *= g.dx;
  return acc * cell;
}

// Discrete L2 norm over sites and components.
inline double l2_norm(const Field<double>& f) {
  const Torus& g = f.g;
  double acc = 0;
  for (const double& x : f.v) acc += x * x;
  double cell = 1.0;
  for (int i = 0; i < g.d; ++i) cell *= g.dx;
  return std::sqrt(acc * cell);
}

}  // namespace bfvlab::lattice
