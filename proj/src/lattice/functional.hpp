#pragma once

#include "lattice/constraints.hpp"
#include "lattice/states.hpp"

namespace bfvlab::lattice {

// A constraint functional tagged with its test data.
struct ConstraintFunctional {
  enum class Kind { EnergyN, MomentumD };
  Kind kind;
  FourierScalar phi;                  // EnergyN
  std::vector<FourierScalar> xvec;    // MomentumD

  static ConstraintFunctional energy(FourierScalar f) {
    return {Kind::EnergyN, std::move(f), {}};
  }
  static ConstraintFunctional momentum(std::vector<FourierScalar> x) {
    return {Kind::MomentumD, {}, std::move(x)};
  }
};

// Gradient with respect to the stored independent components:
// ∂F/∂u_c(site) for h and Pi. Off-diagonal components therefore carry
// their multiplicity-2 weight, matching what site-wise finite
// differences measure.
struct FunctionalGradient {
  Field<double> dh, dpi;
};

double functional_value(const Torus& g, const Field<double>& h,
                        const Field<double>& pi,
                        const ConstraintFunctional& F);

// Exact gradient of the *discrete* functional: per-site dual-number
// Jacobians chained through the linear difference operators (whose
// lattice transpose is exact by summation by parts).
FunctionalGradient functional_gradient(const Torus& g, const Field<double>& h,
                                       const Field<double>& pi,
                                       const ConstraintFunctional& F);

// Brute-force oracle: central differences on every independent (h, Pi)
// site component.
FunctionalGradient functional_gradient_fd(const Torus& g,
                                          const Field<double>& h,
                                          const Field<double>& pi,
                                          const ConstraintFunctional& F,
                                          double step);

// {F,G} = dx^{-d} sum_s sum_c (1/w_c)(dF/dh dG/dPi - dF/dPi dG/dh).
double bracket_from_gradients(const Torus& g, const FunctionalGradient& F,
                              const FunctionalGradient& G);

double poisson_bracket_analytic(const Torus& g, const Field<double>& h,
                                const Field<double>& pi,
                                const ConstraintFunctional& F,
                                const ConstraintFunctional& G);

struct FdBracketResult {
  double value = 0;
  bool step_warning = false;  // non-quadratic error behavior detected
  double step_used = 0;
};
FdBracketResult poisson_bracket_fd(const Torus& g, const Field<double>& h,
                                   const Field<double>& pi,
                                   const ConstraintFunctional& F,
                                   const ConstraintFunctional& G,
                                   double step);

// Hamiltonian flow of the discrete functional G: delta_h = dG/dPi,
// delta_Pi = -dG/dh as tensor densities (weights divided back out).
struct Flow {
  Field<double> dh, dpi;
};
Flow hamiltonian_flow(const Torus& g, const Field<double>& h,
                      const Field<double>& pi, const ConstraintFunctional& G);

}  // namespace bfvlab::lattice
