#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lattice/functional.hpp"
#include "lattice/qflow.hpp"

namespace bfvlab::lattice {

struct LatticeConfig {
  int d = 2;
  std::vector<int> Ns{8, 16, 32};
  std::uint64_t seed = 42;
  double fd_step = 1e-4;
  int k = 2;            // odd polarization parameters in use (<= 3)
  int oracle_states = 20;
  double band_lo = 1.7;
  double band_hi = 2.3;
};

struct ConvRow {
  std::string check;
  int N = 0;
  double defect = 0;
  double order = 0;      // log2 ratio to the previous N; 0 on the first
  bool has_order = false;
};

struct LatticeResult {
  std::string id;
  bool pass = false;
  std::vector<ConvRow> rows;
  std::vector<std::string> notes;
  std::map<std::string, double> values;
};

// Eq-(3.3)-style bracket relations at each N with fitted orders.
LatticeResult check_bracket_relations(const LatticeConfig& cfg);

// Analytic (exact-adjoint) vs site-wise finite-difference brackets.
LatticeResult check_bracket_oracle(const LatticeConfig& cfg);

// Q0^2 components: h, xiN, xiP converge to zero; the Pi component
// matches the pre-derived bilinear; off-shell it is large against the
// on-shell residual.
LatticeResult check_q0_defect(const LatticeConfig& cfg);

// Quadratic-in-ghost term of Q(Pi) against the bilinear anchor target.
LatticeResult check_anchor(const LatticeConfig& cfg);

// Curvature oracles: conformal closed form, flat metric, 2d Einstein
// tensor, Lie bracket coordinate formula.
LatticeResult check_curvature(const LatticeConfig& cfg);

}  // namespace bfvlab::lattice
