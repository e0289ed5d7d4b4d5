#pragma once

#include <vector>

#include "graded/random.hpp"
#include "lattice/grid.hpp"

namespace bfvlab::lattice {

using graded::Rng;

// Band-limited smooth function on the torus: a fixed, grid-independent
// truncated Fourier series. Refining N samples the same continuum field,
// which is what makes the convergence orders meaningful.
struct FourierScalar {
  struct Mode {
    std::array<int, 3> k{0, 0, 0};
    double amp_cos = 0, amp_sin = 0;
  };
  std::vector<Mode> modes;
  double constant = 0;

  double value(const std::array<double, 3>& x, int d) const;
  double derivative(const std::array<double, 3>& x, int d, int axis) const;

  static FourierScalar random(Rng& rng, int d, double scale, int kmax = 1);
  Field<double> sample(const Torus& g) const;
  Field<double> sample_derivative(const Torus& g, int axis) const;
};

struct SmoothState {
  std::vector<FourierScalar> h_comp;   // sym components, includes the
                                       // flat background on the diagonal
  std::vector<FourierScalar> pi_comp;  // sym components
  Field<double> sample_h(const Torus& g) const;
  Field<double> sample_pi(const Torus& g) const;
};

struct StateOptions {
  double h_amplitude = 0.15;
  double pi_amplitude = 0.6;
  double min_eigenvalue = 0.5;
};

// h = delta + band-limited symmetric perturbation (rescaled until the
// metric stays uniformly SPD), Pi band-limited of unit scale.
SmoothState random_state(Rng& rng, int d, const StateOptions& opt = {});

FourierScalar random_test_scalar(Rng& rng, int d, double scale = 1.0);
std::vector<FourierScalar> random_test_vector(Rng& rng, int d,
                                              double scale = 1.0);

Field<double> sample_vector(const Torus& g,
                            const std::vector<FourierScalar>& comps);

// Reports the first non-SPD site, if any.
bool metric_spd(const Torus& g, const Field<double>& h, int* bad_site);

}  // namespace bfvlab::lattice
