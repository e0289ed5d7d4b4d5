#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

namespace bfvlab::lattice {

// Element of the exterior algebra on K formal odd parameters
// eps_0..eps_{K-1}: 2^K real components indexed by bitmask, basis
// monomials in ascending generator order. The algebra is exact; only
// the component values are floating point.
//
// Parameter budget: two ghost polarizations (k = 2, default) or three
// (k = 3) plus one reserved slot used internally as the shift direction
// when applying a derivation a second time.
struct Odd {
  static constexpr int K = 4;
  static constexpr int N = 1 << K;
  std::array<double, N> c{};

  Odd() = default;
  explicit Odd(double body) { c[0] = body; }
  static Odd generator(int i) {
    Odd o;
    o.c[1 << i] = 1.0;
    return o;
  }
  static Odd basis(unsigned mask, double v = 1.0) {
    Odd o;
    o.c[mask] = v;
    return o;
  }

  double body() const { return c[0]; }
  double component(unsigned mask) const { return c[mask]; }

  // Sign of eps_mask_a . eps_mask_b in ascending-order normal form;
  // zero when the masks overlap.
  static int mul_sign(unsigned a, unsigned b);

  Odd operator+(const Odd& o) const;
  Odd operator-(const Odd& o) const;
  Odd operator-() const;
  Odd operator*(const Odd& o) const;
  Odd operator*(double s) const;
  Odd operator/(double s) const { return *this * (1.0 / s); }
  Odd& operator+=(const Odd& o);
  Odd& operator-=(const Odd& o);

  bool is_zero(double tol = 0.0) const;
  double max_abs() const;

  std::string str() const;
};

inline Odd operator*(double s, const Odd& o) { return o * s; }

// Multiplicative inverse (body must be nonzero): Taylor expansion in the
// nilpotent part, exact in the algebra.
Odd inv(const Odd& a);
Odd sqrt(const Odd& a);  // body must be positive
inline Odd operator/(const Odd& a, const Odd& b) { return a * inv(b); }

// Left derivative with respect to generator i: writes a = x + eps_i y
// with eps_i factored to the left and returns y.
Odd left_derivative(const Odd& a, int i);

// Coefficient of eps_i eps_j (i < j) as a plain number.
inline double bilinear_component(const Odd& a, int i, int j) {
  return a.component((1u << i) | (1u << j));
}

}  // namespace bfvlab::lattice
