#pragma once

#include "bfv/bfv.hpp"
#include "cli/model.hpp"
#include "cli/report.hpp"

namespace bfvlab::cli {

// Sign-convention resolutions in force; embedded in every report.
std::vector<std::string> conventions();

// The randomized graded-algebra property suite (Koszul antisymmetry,
// graded Leibniz, homomorphism, relation-reduction laws), 1000 trials
// per family, exact; plus any derivation checks declared by the model.
std::vector<CheckRecord> run_algebra(const Model* model, std::uint64_t seed,
                                     const std::string& filter);

// First-class verification, master-equation solve, charge nilpotency,
// coisotropy identity, bracket property sampling.
std::vector<CheckRecord> run_bfv(const Model& model, std::uint64_t seed,
                                 const std::string& filter);

// The two alternatives of the toy-algebroid study.
std::vector<CheckRecord> run_toy(const Model& model, std::uint64_t seed,
                                 const std::string& filter);

// The three Theorem-4.3-style verifications plus their control
// mutations (a control passes when the mutated run fails).
std::vector<CheckRecord> run_formal(const Model* model,
                                    const std::string& filter);

// kind: brackets | q0defect | anchor | curvature.
std::vector<CheckRecord> run_lattice(const std::string& kind,
                                     const LatticeSection& cfg);

bfv::BFVModel model_to_bfv(const ConstraintSection& cs);

}  // namespace bfvlab::cli
