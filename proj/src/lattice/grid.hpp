#pragma once

#include <array>
#include <cassert>
#include <vector>

#include "graded/rational.hpp"

namespace bfvlab::lattice {

// Uniform periodic grid on the unit coordinate torus [0,1)^d.
struct Torus {
  int d = 2;
  int N = 8;
  double dx = 0.125;
  int sites = 64;

  Torus() = default;
  Torus(int dim, int n) : d(dim), N(n), dx(1.0 / n), sites(1) {
    if (dim < 2 || dim > 3) throw ConfigError("spatial dimension must be 2 or 3");
    if (n < 4) throw ConfigError("N must be at least 4");
    for (int i = 0; i < d; ++i) sites *= N;
  }

  std::array<int, 3> coords(int s) const {
    std::array<int, 3> c{0, 0, 0};
    for (int i = 0; i < d; ++i) {
      c[i] = s % N;
      s /= N;
    }
    return c;
  }
  int site(const std::array<int, 3>& c) const {
    int s = 0;
    for (int i = d - 1; i >= 0; --i) {
      int x = ((c[i] % N) + N) % N;
      s = s * N + x;
    }
    return s;
  }
  int shift(int s, int axis, int by) const {
    auto c = coords(s);
    c[axis] += by;
    return site(c);
  }
  double coord(int s, int axis) const { return coords(s)[axis] * dx; }

  int sym_count() const { return d * (d + 1) / 2; }
  // Stored component index of the symmetric pair (a,b).
  int sym_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    if (d == 2) {
      static constexpr int idx2[2][2] = {{0, 1}, {1, 2}};
      return idx2[a][b];
    }
    static constexpr int idx3[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return idx3[a][b];
  }
  int sym_weight(int c) const {  // 1 on the diagonal, 2 off it
    if (d == 2) return c == 1 ? 2 : 1;
    return (c == 1 || c == 2 || c == 4) ? 2 : 1;
  }
};

// Per-site container with `ncomp` values of scalar type T. The torus
// descriptor is tiny and stored by value so fields can outlive whatever
// produced them.
template <class T>
struct Field {
  Torus g;
  int ncomp = 1;
  std::vector<T> v;

  Field() = default;
  Field(const Torus& grid, int nc) : g(grid), ncomp(nc), v(nc * grid.sites) {}
  T& at(int site, int comp = 0) { return v[site * ncomp + comp]; }
  const T& at(int site, int comp = 0) const { return v[site * ncomp + comp]; }
};

}  // namespace bfvlab::lattice
