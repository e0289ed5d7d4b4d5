#include "lattice/odd.hpp"

#include <bit>
#include <sstream>

namespace bfvlab::lattice {

namespace {

struct SignTable {
  std::array<std::array<int8_t, Odd::N>, Odd::N> s{};
  SignTable() {
    for (unsigned a = 0; a < Odd::N; ++a)
      for (unsigned b = 0; b < Odd::N; ++b) {
        if (a & b) {
          s[a][b] = 0;
          continue;
        }
        // Count transpositions moving each generator of b past the
        // higher generators of a.
        int swaps = 0;
        for (int i = 0; i < Odd::K; ++i)
          if (b & (1u << i))
            swaps += std::popcount(a >> (i + 1));
        s[a][b] = (swaps & 1) ? -1 : 1;
      }
  }
};

const SignTable& table() {
  static const SignTable t;
  return t;
}

}  // namespace

int Odd::mul_sign(unsigned a, unsigned b) { return table().s[a][b]; }

Odd Odd::operator+(const Odd& o) const {
  Odd r;
  for (int i = 0; i < N; ++i) r.c[i] = c[i] + o.c[i];
  return r;
}

Odd Odd::operator-(const Odd& o) const {
  Odd r;
  for (int i = 0; i < N; ++i) r.c[i] = c[i] - o.c[i];
  return r;
}

Odd Odd::operator-() const {
  Odd r;
  for (int i = 0; i < N; ++i) r.c[i] = -c[i];
  return r;
}

Odd& Odd::operator+=(const Odd& o) {
  for (int i = 0; i < N; ++i) c[i] += o.c[i];
  return *this;
}

Odd& Odd::operator-=(const Odd& o) {
  for (int i = 0; i < N; ++i) c[i] -= o.c[i];
  return *this;
}

Odd Odd::operator*(const Odd& o) const {
  Odd r;
  const auto& sgn = table().s;
  for (unsigned a = 0; a < N; ++a) {
    if (c[a] == 0.0) continue;
    for (unsigned b = 0; b < N; ++b) {
      int s = sgn[a][b];
      if (s == 0 || o.c[b] == 0.0) continue;
      r.c[a | b] += s * c[a] * o.c[b];
    }
  }
  return r;
}

Odd Odd::operator*(double s) const {
  Odd r;
  for (int i = 0; i < N; ++i) r.c[i] = c[i] * s;
  return r;
}

bool Odd::is_zero(double tol) const {
  for (double v : c)
    if (std::abs(v) > tol) return false;
  return true;
}

double Odd::max_abs() const {
  double m = 0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

Odd inv(const Odd& a) {
  double b = a.body();
  Odd u = (a - Odd(b)) / b;  // nilpotent
  // 1/(b(1+u)) = (1 - u + u^2 - u^3 + u^4)/b; u^5 = 0 in Lambda_4.
  Odd u2 = u * u;
  Odd u3 = u2 * u;
  Odd u4 = u2 * u2;
  return (Odd(1.0) - u + u2 - u3 + u4) / b;
}

Odd sqrt(const Odd& a) {
  double b = a.body();
  double rb = std::sqrt(b);
  Odd u = (a - Odd(b)) / b;
  Odd u2 = u * u;
  Odd u3 = u2 * u;
  Odd u4 = u2 * u2;
  // (1+u)^{1/2} via the binomial series, exact on nilpotents.
  return (Odd(1.0) + u * 0.5 - u2 * 0.125 + u3 * 0.0625 -
          u4 * (5.0 / 128.0)) *
         rb;
}

Odd left_derivative(const Odd& a, int i) {
  Odd r;
  unsigned bit = 1u << i;
  for (unsigned m = 0; m < Odd::N; ++m) {
    if (!(m & bit)) continue;
    // eps_m = sign . eps_i eps_{m - bit} with sign from moving eps_i
    // to the front past the lower generators in m.
    int below = std::popcount(m & (bit - 1));
    double s = (below & 1) ? -1.0 : 1.0;
    r.c[m & ~bit] += s * a.c[m];
  }
  return r;
}

std::string Odd::str() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned m = 0; m < N; ++m) {
    if (c[m] == 0.0) continue;
    if (!first) os << " + ";
    first = false;
    os << c[m];
    for (int i = 0; i < K; ++i)
      if (m & (1u << i)) os << "*e" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace bfvlab::lattice
