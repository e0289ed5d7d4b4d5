#pragma once

#include <cmath>

#include "lattice/grid.hpp"
#include "lattice/odd.hpp"

namespace bfvlab::lattice {

// Scalar-ring hooks so the same tensor code runs on doubles, Grassmann
// coefficients and dual numbers.
inline double ring_inv(double x) { return 1.0 / x; }
inline double ring_sqrt(double x) { return std::sqrt(x); }
inline Odd ring_inv(const Odd& x) { return inv(x); }
inline Odd ring_sqrt(const Odd& x) { return sqrt(x); }

// Forward-mode dual number for exact per-site Jacobians.
struct Dual {
  double v = 0, d = 0;
  Dual() = default;
  Dual(double value) : v(value) {}
  Dual(double value, double dot) : v(value), d(dot) {}
  Dual operator+(const Dual& o) const { return {v + o.v, d + o.d}; }
  Dual operator-(const Dual& o) const { return {v - o.v, d - o.d}; }
  Dual operator-() const { return {-v, -d}; }
  Dual operator*(const Dual& o) const { return {v * o.v, v * o.d + d * o.v}; }
  Dual operator*(double s) const { return {v * s, d * s}; }
  Dual operator/(double s) const { return {v / s, d / s}; }
  Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
};
inline Dual operator*(double s, const Dual& x) { return x * s; }
inline Dual ring_inv(const Dual& x) {
  double iv = 1.0 / x.v;
  return {iv, -x.d * iv * iv};
}
inline Dual ring_sqrt(const Dual& x) {
  double r = std::sqrt(x.v);
  return {r, x.d / (2.0 * r)};
}

// ---------------------------------------------------------------------
// Stencils: second-order central differences on the periodic grid.

template <class T>
Field<T> partial(const Field<T>& f, int axis) {
  const Torus& g = f.g;
  Field<T> out(g, f.ncomp);
  double inv2dx = 1.0 / (2.0 * g.dx);
  for (int s = 0; s < g.sites; ++s) {
    int sp = g.shift(s, axis, 1), sm = g.shift(s, axis, -1);
    for (int c = 0; c < f.ncomp; ++c)
      out.at(s, c) = (f.at(sp, c) - f.at(sm, c)) * inv2dx;
  }
  return out;
}

// Wide-stencil first derivative (spacing 2h): second order with a
// different truncation constant; used by independent oracles.
template <class T>
Field<T> partial_wide(const Field<T>& f, int axis) {
  const Torus& g = f.g;
  Field<T> out(g, f.ncomp);
  double inv4dx = 1.0 / (4.0 * g.dx);
  for (int s = 0; s < g.sites; ++s) {
    int sp = g.shift(s, axis, 2), sm = g.shift(s, axis, -2);
    for (int c = 0; c < f.ncomp; ++c)
      out.at(s, c) = (f.at(sp, c) - f.at(sm, c)) * inv4dx;
  }
  return out;
}

template <class T>
Field<T> partial2(const Field<T>& f, int axis) {
  const Torus& g = f.g;
  Field<T> out(g, f.ncomp);
  double invdx2 = 1.0 / (g.dx * g.dx);
  for (int s = 0; s < g.sites; ++s) {
    int sp = g.shift(s, axis, 1), sm = g.shift(s, axis, -1);
    for (int c = 0; c < f.ncomp; ++c)
      out.at(s, c) =
          (f.at(sp, c) - f.at(s, c) * 2.0 + f.at(sm, c)) * invdx2;
  }
  return out;
}

// ---------------------------------------------------------------------
// Per-site symmetric-matrix helpers (full 3x3 storage, loops run to d).

template <class T>
using Mat = std::array<T, 9>;

template <class T>
Mat<T> load_sym(const Field<T>& f, int s) {
  const Torus& g = f.g;
  Mat<T> m{};
  for (int a = 0; a < g.d; ++a)
    for (int b = 0; b < g.d; ++b) m[a * 3 + b] = f.at(s, g.sym_index(a, b));
  return m;
}

template <class T>
void store_sym(Field<T>& f, int s, const Mat<T>& m) {
  const Torus& g = f.g;
  for (int a = 0; a < g.d; ++a)
    for (int b = a; b < g.d; ++b) f.at(s, g.sym_index(a, b)) = m[a * 3 + b];
}

template <class T>
T mat_det(const Mat<T>& m, int d) {
  if (d == 2) return m[0] * m[4] - m[1] * m[3];
  return m[0] * (m[4] * m[8] - m[5] * m[7]) -
         m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

template <class T>
Mat<T> mat_inv(const Mat<T>& m, int d) {
  Mat<T> r{};
  T idet = ring_inv(mat_det(m, d));
  if (d == 2) {
    r[0] = m[4] * idet;
    r[1] = -m[1] * idet;
    r[3] = -m[3] * idet;
    r[4] = m[0] * idet;
    return r;
  }
  r[0] = (m[4] * m[8] - m[5] * m[7]) * idet;
  r[1] = (m[2] * m[7] - m[1] * m[8]) * idet;
  r[2] = (m[1] * m[5] - m[2] * m[4]) * idet;
  r[3] = (m[5] * m[6] - m[3] * m[8]) * idet;
  r[4] = (m[0] * m[8] - m[2] * m[6]) * idet;
  r[5] = (m[2] * m[3] - m[0] * m[5]) * idet;
  r[6] = (m[3] * m[7] - m[4] * m[6]) * idet;
  r[7] = (m[1] * m[6] - m[0] * m[7]) * idet;
  r[8] = (m[0] * m[4] - m[1] * m[3]) * idet;
  return r;
}

// ---------------------------------------------------------------------
// Derived geometric fields.

template <class T>
Field<T> inverse_metric(const Field<T>& h) {
  const Torus& g = h.g;
  Field<T> out(g, g.sym_count());
  for (int s = 0; s < g.sites; ++s)
    store_sym(out, s, mat_inv(load_sym(h, s), g.d));
  return out;
}

template <class T>
Field<T> volume_density(const Field<T>& h) {
  const Torus& g = h.g;
  Field<T> out(g, 1);
  for (int s = 0; s < g.sites; ++s)
    out.at(s) = ring_sqrt(mat_det(load_sym(h, s), g.d));
  return out;
}

// Gamma^a_{bc}, stored as a x sym(b,c).
template <class T>
Field<T> christoffel(const Field<T>& h) {
  const Torus& g = h.g;
  int sc = g.sym_count();
  std::array<Field<T>, 3> dh;
  for (int a = 0; a < g.d; ++a) dh[a] = partial(h, a);
  Field<T> hin = inverse_metric(h);
  Field<T> out(g, g.d * sc);
  for (int s = 0; s < g.sites; ++s) {
    Mat<T> gi = load_sym(hin, s);
    for (int a = 0; a < g.d; ++a)
      for (int b = 0; b < g.d; ++b)
        for (int c = b; c < g.d; ++c) {
          T acc{};
          for (int e = 0; e < g.d; ++e) {
            T term = dh[b].at(s, g.sym_index(e, c)) +
                     dh[c].at(s, g.sym_index(e, b)) -
                     dh[e].at(s, g.sym_index(b, c));
            acc += gi[a * 3 + e] * term;
          }
          out.at(s, a * sc + g.sym_index(b, c)) = acc * 0.5;
        }
  }
  return out;
}

// Ric_{bd} = d_a Gamma^a_{bd} - d_d Gamma^a_{ba}
//            + Gamma^a_{ae} Gamma^e_{bd} - Gamma^a_{de} Gamma^e_{ba}.
template <class T>
Field<T> ricci(const Field<T>& gamma) {
  const Torus& g = gamma.g;
  int sc = g.sym_count();
  std::array<Field<T>, 3> dg;
  for (int a = 0; a < g.d; ++a) dg[a] = partial(gamma, a);
  Field<T> out(g, sc);
  for (int s = 0; s < g.sites; ++s) {
    for (int b = 0; b < g.d; ++b)
      for (int dd = b; dd < g.d; ++dd) {
        T acc{};
        for (int a = 0; a < g.d; ++a) {
          acc += dg[a].at(s, a * sc + g.sym_index(b, dd));
          acc -= dg[dd].at(s, a * sc + g.sym_index(b, a));
          for (int e = 0; e < g.d; ++e) {
            acc += gamma.at(s, a * sc + g.sym_index(a, e)) *
                   gamma.at(s, e * sc + g.sym_index(b, dd));
            acc -= gamma.at(s, a * sc + g.sym_index(dd, e)) *
                   gamma.at(s, e * sc + g.sym_index(b, a));
          }
        }
        out.at(s, g.sym_index(b, dd)) = acc;
      }
  }
  return out;
}

template <class T>
Field<T> trace_with(const Field<T>& hin, const Field<T>& sym) {
  const Torus& g = hin.g;
  Field<T> out(g, 1);
  for (int s = 0; s < g.sites; ++s) {
    T acc{};
    for (int a = 0; a < g.d; ++a)
      for (int b = 0; b < g.d; ++b)
        acc += hin.at(s, g.sym_index(a, b)) * sym.at(s, g.sym_index(a, b));
    out.at(s) = acc;
  }
  return out;
}

// The bundle of geometric data shared by the constraint formulas.
template <class T>
struct GeomPack {
  Field<T> hin, vol, gamma, ric, scal, einstein;  // einstein lower indices
};

template <class T>
GeomPack<T> make_geom(const Field<T>& h) {
  const Torus& g = h.g;
  GeomPack<T> p;
  p.hin = inverse_metric(h);
  p.vol = volume_density(h);
  p.gamma = christoffel(h);
  p.ric = ricci(p.gamma);
  p.scal = trace_with(p.hin, p.ric);
  p.einstein = Field<T>(g, g.sym_count());
  for (int s = 0; s < g.sites; ++s)
    for (int c = 0; c < g.sym_count(); ++c)
      p.einstein.at(s, c) =
          p.ric.at(s, c) - h.at(s, c) * p.scal.at(s) * 0.5;
  return p;
}

// Raise both indices of a lower symmetric tensor.
template <class T>
Field<T> raise2(const Field<T>& hin, const Field<T>& lower) {
  const Torus& g = hin.g;
  Field<T> out(g, g.sym_count());
  for (int s = 0; s < g.sites; ++s) {
    Mat<T> gi = load_sym(hin, s);
    Mat<T> lo = load_sym(lower, s);
    Mat<T> up{};
    for (int a = 0; a < g.d; ++a)
      for (int b = 0; b < g.d; ++b) {
        T acc{};
        for (int c = 0; c < g.d; ++c)
          for (int e = 0; e < g.d; ++e)
            acc += gi[a * 3 + c] * lo[c * 3 + e] * gi[e * 3 + b];
        up[a * 3 + b] = acc;
      }
    store_sym(out, s, up);
  }
  return out;
}

// Covariant Hessian of a scalar: d_a d_b f - Gamma^c_{ab} d_c f, with
// the compact stencil on the diagonal.
template <class T>
Field<T> hessian(const Field<T>& gamma, const Field<T>& f) {
  const Torus& g = f.g;
  int sc = g.sym_count();
  std::array<Field<T>, 3> df;
  for (int a = 0; a < g.d; ++a) df[a] = partial(f, a);
  Field<T> out(g, sc);
  for (int a = 0; a < g.d; ++a)
    for (int b = a; b < g.d; ++b) {
      Field<T> second =
          (a == b) ? partial2(f, a) : partial(df[a], b);
      for (int s = 0; s < g.sites; ++s) {
        T acc = second.at(s);
        for (int c = 0; c < g.d; ++c)
          acc -= gamma.at(s, c * sc + g.sym_index(a, b)) * df[c].at(s);
        out.at(s, g.sym_index(a, b)) = acc;
      }
    }
  return out;
}

// D_h(f) = -Hess f + h Tr_h[Hess f], lower indices.
template <class T>
Field<T> dh_operator(const Field<T>& h, const GeomPack<T>& p,
                     const Field<T>& f) {
  const Torus& g = h.g;
  Field<T> hess = hessian(p.gamma, f);
  Field<T> tr = trace_with(p.hin, hess);
  Field<T> out(g, g.sym_count());
  for (int s = 0; s < g.sites; ++s)
    for (int c = 0; c < g.sym_count(); ++c)
      out.at(s, c) = h.at(s, c) * tr.at(s) - hess.at(s, c);
  return out;
}

// grad_h f = (df)^sharp.
template <class T>
Field<T> gradient_vec(const Field<T>& hin, const Field<T>& f) {
  const Torus& g = f.g;
  std::array<Field<T>, 3> df;
  for (int a = 0; a < g.d; ++a) df[a] = partial(f, a);
  Field<T> out(g, g.d);
  for (int s = 0; s < g.sites; ++s)
    for (int a = 0; a < g.d; ++a) {
      T acc{};
      for (int b = 0; b < g.d; ++b)
        acc += hin.at(s, g.sym_index(a, b)) * df[b].at(s);
      out.at(s, a) = acc;
    }
  return out;
}

// ---------------------------------------------------------------------
// Lie derivatives (coordinate formulas; weight-1 densities pick up the
// +T div X term). Products are evaluated in the written order so the
// same code is valid for Grassmann-valued fields.

template <class T>
Field<T> lie_scalar(const Field<T>& X, const Field<T>& f) {
  const Torus& g = f.g;
  Field<T> out(g, 1);
  std::array<Field<T>, 3> df;
  for (int a = 0; a < g.d; ++a) df[a] = partial(f, a);
  for (int s = 0; s < g.sites; ++s) {
    T acc{};
    for (int a = 0; a < g.d; ++a) acc += X.at(s, a) * df[a].at(s);
    out.at(s) = acc;
  }
  return out;
}

template <class T>
Field<T> lie_vector(const Field<T>& X, const Field<T>& Y) {
  const Torus& g = X.g;
  Field<T> out(g, g.d);
  std::array<Field<T>, 3> dX, dY;
  for (int a = 0; a < g.d; ++a) {
    dX[a] = partial(X, a);
    dY[a] = partial(Y, a);
  }
  for (int s = 0; s < g.sites; ++s)
    for (int a = 0; a < g.d; ++a) {
      T acc{};
      for (int b = 0; b < g.d; ++b)
        acc += X.at(s, b) * dY[b].at(s, a) - Y.at(s, b) * dX[b].at(s, a);
      out.at(s, a) = acc;
    }
  return out;
}

template <class T>
Field<T> lie_metric(const Field<T>& X, const Field<T>& h) {
  const Torus& g = h.g;
  Field<T> out(g, g.sym_count());
  std::array<Field<T>, 3> dh, dX;
  for (int a = 0; a < g.d; ++a) {
    dh[a] = partial(h, a);
    dX[a] = partial(X, a);
  }
  for (int s = 0; s < g.sites; ++s)
    for (int a = 0; a < g.d; ++a)
      for (int b = a; b < g.d; ++b) {
        T acc{};
        for (int c = 0; c < g.d; ++c) {
          acc += X.at(s, c) * dh[c].at(s, g.sym_index(a, b));
          acc += h.at(s, g.sym_index(c, b)) * dX[a].at(s, c);
          acc += h.at(s, g.sym_index(a, c)) * dX[b].at(s, c);
        }
        out.at(s, g.sym_index(a, b)) = acc;
      }
  return out;
}

// Symmetric 2-vector density of weight 1 (the momentum).
template <class T>
Field<T> lie_momentum(const Field<T>& X, const Field<T>& P) {
  const Torus& g = P.g;
  Field<T> out(g, g.sym_count());
  std::array<Field<T>, 3> dP, dX;
  for (int a = 0; a < g.d; ++a) {
    dP[a] = partial(P, a);
    dX[a] = partial(X, a);
  }
  for (int s = 0; s < g.sites; ++s) {
    T divX{};
    for (int c = 0; c < g.d; ++c) divX += dX[c].at(s, c);
    for (int a = 0; a < g.d; ++a)
      for (int b = a; b < g.d; ++b) {
        T acc{};
        for (int c = 0; c < g.d; ++c) {
          acc += X.at(s, c) * dP[c].at(s, g.sym_index(a, b));
          acc -= P.at(s, g.sym_index(c, b)) * dX[c].at(s, a);
          acc -= P.at(s, g.sym_index(a, c)) * dX[c].at(s, b);
        }
        acc += P.at(s, g.sym_index(a, b)) * divX;
        out.at(s, g.sym_index(a, b)) = acc;
      }
  }
  return out;
}

template <class T>
Field<T> lie_scalar_density(const Field<T>& X, const Field<T>& r) {
  const Torus& g = r.g;
  Field<T> out(g, 1);
  std::array<Field<T>, 3> dr, dX;
  for (int a = 0; a < g.d; ++a) {
    dr[a] = partial(r, a);
    dX[a] = partial(X, a);
  }
  for (int s = 0; s < g.sites; ++s) {
    T acc{};
    for (int a = 0; a < g.d; ++a) {
      acc += X.at(s, a) * dr[a].at(s);
      acc += r.at(s) * dX[a].at(s, a);
    }
    out.at(s) = acc;
  }
  return out;
}

template <class T>
Field<T> lie_oneform_density(const Field<T>& X, const Field<T>& w) {
  const Torus& g = w.g;
  Field<T> out(g, g.d);
  std::array<Field<T>, 3> dw, dX;
  for (int a = 0; a < g.d; ++a) {
    dw[a] = partial(w, a);
    dX[a] = partial(X, a);
  }
  for (int s = 0; s < g.sites; ++s) {
    T divX{};
    for (int c = 0; c < g.d; ++c) divX += dX[c].at(s, c);
    for (int a = 0; a < g.d; ++a) {
      T acc{};
      for (int c = 0; c < g.d; ++c) {
        acc += X.at(s, c) * dw[c].at(s, a);
        acc += w.at(s, c) * dX[a].at(s, c);
      }
      acc += w.at(s, a) * divX;
      out.at(s, a) = acc;
    }
  }
  return out;
}

}  // namespace bfvlab::lattice
