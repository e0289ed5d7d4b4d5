#include "lattice/states.hpp"

#include <cmath>

#include "lattice/geometry.hpp"

namespace bfvlab::lattice {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double FourierScalar::value(const std::array<double, 3>& x, int d) const {
  double acc = constant;
  for (const auto& m : modes) {
    double phase = 0;
    for (int i = 0; i < d; ++i) phase += m.k[i] * x[i];
    phase *= kTwoPi;
    acc += m.amp_cos * std::cos(phase) + m.amp_sin * std::sin(phase);
  }
  return acc;
}

double FourierScalar::derivative(const std::array<double, 3>& x, int d,
                                 int axis) const {
  double acc = 0;
  for (const auto& m : modes) {
    double phase = 0;
    for (int i = 0; i < d; ++i) phase += m.k[i] * x[i];
    phase *= kTwoPi;
    double w = kTwoPi * m.k[axis];
    acc += -m.amp_cos * w * std::sin(phase) + m.amp_sin * w * std::cos(phase);
  }
  return acc;
}

FourierScalar FourierScalar::random(Rng& rng, int d, double scale, int kmax) {
  FourierScalar f;
  // One representative per non-opposite wave vector with |k|_inf <= kmax.
  std::vector<std::array<int, 3>> ks;
  for (int k0 = -kmax; k0 <= kmax; ++k0)
    for (int k1 = -kmax; k1 <= kmax; ++k1)
      for (int k2 = (d == 3 ? -kmax : 0); k2 <= (d == 3 ? kmax : 0); ++k2) {
        std::array<int, 3> k{k0, k1, k2};
        if (k0 == 0 && k1 == 0 && k2 == 0) continue;
        bool lead = (k0 > 0) || (k0 == 0 && (k1 > 0 || (k1 == 0 && k2 > 0)));
        if (lead) ks.push_back(k);
      }
  for (const auto& k : ks) {
    FourierScalar::Mode m;
    m.k = k;
    m.amp_cos = rng.uniform(-scale, scale);
    m.amp_sin = rng.uniform(-scale, scale);
    f.modes.push_back(m);
  }
  return f;
}

Field<double> FourierScalar::sample(const Torus& g) const {
  Field<double> out(g, 1);
  for (int s = 0; s < g.sites; ++s) {
    std::array<double, 3> x{g.coord(s, 0), g.coord(s, 1),
                            g.d == 3 ? g.coord(s, 2) : 0.0};
    out.at(s) = value(x, g.d);
  }
  return out;
}

Field<double> FourierScalar::sample_derivative(const Torus& g,
                                               int axis) const {
  Field<double> out(g, 1);
  for (int s = 0; s < g.sites; ++s) {
    std::array<double, 3> x{g.coord(s, 0), g.coord(s, 1),
                            g.d == 3 ? g.coord(s, 2) : 0.0};
    out.at(s) = derivative(x, g.d, axis);
  }
  return out;
}

Field<double> SmoothState::sample_h(const Torus& g) const {
  Field<double> out(g, g.sym_count());
  for (int s = 0; s < g.sites; ++s) {
    std::array<double, 3> x{g.coord(s, 0), g.coord(s, 1),
                            g.d == 3 ? g.coord(s, 2) : 0.0};
    for (int c = 0; c < g.sym_count(); ++c)
      out.at(s, c) = h_comp[c].value(x, g.d);
  }
  return out;
}

Field<double> SmoothState::sample_pi(const Torus& g) const {
  Field<double> out(g, g.sym_count());
  for (int s = 0; s < g.sites; ++s) {
    std::array<double, 3> x{g.coord(s, 0), g.coord(s, 1),
                            g.d == 3 ? g.coord(s, 2) : 0.0};
    for (int c = 0; c < g.sym_count(); ++c)
      out.at(s, c) = pi_comp[c].value(x, g.d);
  }
  return out;
}

bool metric_spd(const Torus& g, const Field<double>& h, int* bad_site) {
  for (int s = 0; s < g.sites; ++s) {
    Mat<double> m = load_sym(h, s);
    bool ok;
    if (g.d == 2) {
      ok = m[0] > 0 && (m[0] * m[4] - m[1] * m[3]) > 0;
    } else {
      double d1 = m[0];
      double d2 = m[0] * m[4] - m[1] * m[3];
      double d3 = mat_det(m, 3);
      ok = d1 > 0 && d2 > 0 && d3 > 0;
    }
    if (!ok) {
      if (bad_site) *bad_site = s;
      return false;
    }
  }
  return true;
}

SmoothState random_state(Rng& rng, int d, const StateOptions& opt) {
  int sc = d * (d + 1) / 2;
  SmoothState st;
  for (int c = 0; c < sc; ++c)
    st.h_comp.push_back(FourierScalar::random(rng, d, opt.h_amplitude));
  for (int c = 0; c < sc; ++c)
    st.pi_comp.push_back(FourierScalar::random(rng, d, opt.pi_amplitude));
  // Flat background on the diagonal.
  Torus probe(d, 16);
  for (int attempt = 0; attempt < 20; ++attempt) {
    SmoothState trial = st;
    for (int a = 0; a < d; ++a) {
      int c = probe.sym_index(a, a);
      trial.h_comp[c].constant += 1.0;
    }
    // Smallest eigenvalue proxy: Gershgorin bound at the probe grid.
    Field<double> hs = trial.sample_h(probe);
    double worst = 1e9;
    for (int s = 0; s < probe.sites; ++s) {
      Mat<double> m = load_sym(hs, s);
      for (int a = 0; a < d; ++a) {
        double off = 0;
        for (int b = 0; b < d; ++b)
          if (b != a) off += std::abs(m[a * 3 + b]);
        worst = std::min(worst, m[a * 3 + a] - off);
      }
    }
    if (worst > opt.min_eigenvalue) {
      st = trial;
      return st;
    }
    for (auto& f : st.h_comp)
      for (auto& m : f.modes) {
        m.amp_cos *= 0.7;
        m.amp_sin *= 0.7;
      }
  }
  throw ConfigError("could not build an SPD random metric");
}

FourierScalar random_test_scalar(Rng& rng, int d, double scale) {
  return FourierScalar::random(rng, d, scale);
}

std::vector<FourierScalar> random_test_vector(Rng& rng, int d, double scale) {
  std::vector<FourierScalar> comps;
  for (int a = 0; a < d; ++a)
    comps.push_back(FourierScalar::random(rng, d, scale));
  return comps;
}

Field<double> sample_vector(const Torus& g,
                            const std::vector<FourierScalar>& comps) {
  Field<double> out(g, static_cast<int>(comps.size()));
  for (int s = 0; s < g.sites; ++s) {
    std::array<double, 3> x{g.coord(s, 0), g.coord(s, 1),
                            g.d == 3 ? g.coord(s, 2) : 0.0};
    for (size_t c = 0; c < comps.size(); ++c)
      out.at(s, static_cast<int>(c)) = comps[c].value(x, g.d);
  }
  return out;
}

}  // namespace bfvlab::lattice
