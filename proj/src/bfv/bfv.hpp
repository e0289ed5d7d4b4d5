#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graded/derivation.hpp"
#include "graded/parse.hpp"

namespace bfvlab::bfv {

using graded::Algebra;
using graded::AlgebraPtr;
using graded::Derivation;
using graded::Poly;
using bfvlab::Rat;

// Which canonical pairings the bracket uses. The full bracket is XP | CB;
// the base bracket {.,.}_0 of the phase space is XP alone.
enum class PairMask { XP = 1, CB = 2, All = 3 };

// Polynomial BFV model: n canonical pairs (x_i, p_i) in degree 0, one
// ghost c^i (degree +1) and ghost momentum b_i (degree -1) per
// constraint, with pairings {x_i, p_j} = delta_ij and {c^i, b_j} =
// delta^i_j. The charge S lives in total degree +1.
class BFVModel {
 public:
  static BFVModel make(int n_pairs, std::vector<std::string> constraint_exprs,
                       std::vector<std::tuple<int, int, int, std::string>>
                           structure_entries);

  const AlgebraPtr& algebra() const { return alg_; }
  int pairs() const { return n_; }
  int constraints() const { return m_; }
  int x(int i) const { return x_[i]; }
  int p(int i) const { return p_[i]; }
  int c(int i) const { return c_[i]; }
  int b(int i) const { return b_[i]; }
  const std::vector<int>& b_ids() const { return b_; }
  const Poly& H(int i) const { return H_[i]; }
  const Poly& f(int i, int j, int k) const { return f_[i][j][k]; }

  // Canonical graded Poisson bracket (bilinear, graded-antisymmetric,
  // graded Jacobi), restricted to the requested pairings.
  Poly bracket(const Poly& F, const Poly& G,
               PairMask mask = PairMask::All) const;

  // Degree-k-in-b component of a polynomial.
  Poly b_part(const Poly& p, int k) const;

  const Poly& charge() const { return S_; }
  bool has_charge() const { return !S_.is_zero(); }
  void set_charge(Poly S) { S_ = std::move(S); }

  // Hamiltonian derivation Q = {S, .} through its generator images.
  Derivation hamiltonian_derivation(const Poly& S) const;

  // Canonical pairing table: partner generator, bracket value, sector.
  struct PairTable {
    std::vector<int> partner;
    std::vector<Rat> value;
    std::vector<bool> is_cb;
  };

 private:
  PairTable table_;
  AlgebraPtr alg_;
  int n_ = 0, m_ = 0;
  std::vector<int> x_, p_, c_, b_;
  std::vector<Poly> H_;
  std::vector<std::vector<std::vector<Poly>>> f_;
  Poly S_;
};

struct FirstClassReport {
  struct Entry {
    int i, j;
    Poly residue;
  };
  std::vector<Entry> failures;
  bool ok() const { return failures.empty(); }
};

// Checks {H_i, H_j} - sum_k f_ij^k H_k = 0 for all i < j, plus the
// antisymmetry f_ij^k = -f_ji^k of the declared table.
FirstClassReport verify_first_class(const BFVModel& model);

// Installs S = sum_i c^i H_i - 1/2 sum f_ij^k b_k c^i c^j (the factor
// normalization that satisfies {S,S} = 0 for constant structure
// functions in this bracket convention). Fails if the first-class check
// fails.
void build_initial_charge(BFVModel& model);

struct MasterSolveResult {
  bool ok = false;
  int order = 0;        // highest b-degree present in S
  Poly S;
  std::string error;
};

// Completes the charge order by order in b until {S,S} = 0 exactly,
// inverting the Koszul differential b_i -> H_i through a bounded-degree
// linear solve. degree_bound < 0 selects 2 + max constraint degree.
MasterSolveResult solve_master_equation(BFVModel& model, int max_order,
                                        int degree_bound = -1);

struct CoisotropyReport {
  bool ok = false;
  Poly lhs;      // {S0, S0} restricted to the (x,p) bracket
  Poly rhs;      // -2 (dS1/db_k)(dS0/dc^k), left derivatives
  Poly residue;  // lhs - rhs
};

// The b-independent part of the master equation: {S0,S0}_0 equals
// -2 (dS1/db_k)(dS0/dc^k) as an exact polynomial identity (left
// derivatives, {c^i,b_j} = +delta; the sign is fixed by requiring the
// identity to follow from {S,S} = 0 in this convention).
CoisotropyReport check_coisotropy_identity(const BFVModel& model);

// Exact linear solve A t = rhs over the rationals; returns any solution
// or nullopt when the system is inconsistent.
std::optional<std::vector<Rat>> solve_linear(
    std::vector<std::vector<Rat>> A, std::vector<Rat> rhs);

}  // namespace bfvlab::bfv
