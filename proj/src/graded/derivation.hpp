#pragma once

#include <map>

#include "graded/algebra.hpp"
#include "graded/relations.hpp"

namespace bfvlab::graded {

// A graded derivation, given by its action on generators and extended to
// arbitrary polynomials by the graded Leibniz rule
//   D(ab) = D(a) b + (-1)^{|D||a|} a D(b).
// Left-derivation convention throughout.
class Derivation {
 public:
  Derivation(AlgebraPtr alg, int degree, std::map<int, Poly> images)
      : alg_(std::move(alg)), degree_(degree), images_(std::move(images)) {}

  static Derivation zero(AlgebraPtr alg, int degree) {
    return Derivation(std::move(alg), degree, {});
  }

  int degree() const { return degree_; }
  bool odd() const { return degree_ & 1; }
  const AlgebraPtr& algebra() const { return alg_; }

  // Image of a generator; generators without a declared image map to
  // zero when `implicit_zero` was requested, otherwise they are an error.
  Poly image(int gen) const;
  void set_image(int gen, Poly p) { images_[gen] = std::move(p); }
  void set_implicit_zero(bool v) { implicit_zero_ = v; }

  Poly apply(const Poly& p) const;

  // Graded commutator [D1,D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1, returned
  // through its images on generators.
  static Derivation commutator(const Derivation& a, const Derivation& b);

 private:
  AlgebraPtr alg_;
  int degree_;
  std::map<int, Poly> images_;
  bool implicit_zero_ = false;
};

struct NilpotencyReport {
  bool ok = true;
  int failing_gen = -1;       // first generator with D(D(g)) != 0 mod R
  Poly residue;               // the nonzero normal form
  std::string str(const Algebra& alg) const;
};

// OK iff D(D(g)) reduces to zero mod R for every generator. Requires an
// odd derivation.
NilpotencyReport check_nilpotent(const Derivation& d, const RelationSet& r);

}  // namespace bfvlab::graded
