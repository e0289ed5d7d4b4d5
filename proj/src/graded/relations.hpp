#pragma once

#include <utility>
#include <vector>

#include "graded/algebra.hpp"

namespace bfvlab::graded {

// Monomial relations presenting a quotient algebra: annihilation rules
// (any monomial divisible by the pattern is zero) and substitution rules
// (the pattern rewrites, in place, to a polynomial). Reduction is
// innermost-leftmost with a step budget guarding termination.
class RelationSet {
 public:
  explicit RelationSet(AlgebraPtr alg) : alg_(std::move(alg)) {}

  void annihilate(const Monomial& pattern) { ann_.push_back(pattern); }
  void substitute(const Monomial& lhs, Poly rhs);
  void set_step_budget(long long n) { budget_ = n; }

  const AlgebraPtr& algebra() const { return alg_; }
  bool empty() const { return ann_.empty() && subs_.empty(); }

  // Unique normal form; idempotent and linear.
  Poly reduce(const Poly& p) const;

 private:
  AlgebraPtr alg_;
  std::vector<Monomial> ann_;
  std::vector<std::pair<Monomial, Poly>> subs_;
  long long budget_ = 1000000;
};

}  // namespace bfvlab::graded
