#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graded/rational.hpp"

namespace bfvlab::graded {

// A coordinate function on a graded manifold: name plus Z-degree.
// Parity is degree mod 2; odd generators square to zero.
struct Generator {
  int id = -1;
  std::string name;
  int degree = 0;
  bool odd() const { return degree & 1; }
};

// Immutable generator table shared by all values of one algebra.
class Algebra {
 public:
  static std::shared_ptr<const Algebra> make(
      std::vector<std::pair<std::string, int>> name_degree);

  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& gen(int id) const { return gens_.at(id); }
  const std::vector<Generator>& gens() const { return gens_; }
  int id_of(const std::string& name) const;
  std::optional<int> find(const std::string& name) const;

  // Extends this algebra by further generators, returning a new table.
  // Existing ids are preserved.
  std::shared_ptr<const Algebra> extend(
      std::vector<std::pair<std::string, int>> name_degree) const;

 private:
  std::vector<Generator> gens_;
  std::map<std::string, int> by_name_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

// Normalized monomial: factors sorted by ascending generator id, odd
// exponents at most 1. Koszul signs of reordering live in coefficients,
// never in the monomial itself.
class Monomial {
 public:
  Monomial() = default;
  // Factors need not be sorted; the constructor normalizes and reports
  // a vanishing monomial (repeated odd generator) via `killed`.
  // `sign` receives the Koszul sign of the sort.
  static Monomial from_word(const Algebra& alg, std::vector<int> word,
                            int& sign, bool& killed);

  const std::vector<std::pair<int, int>>& factors() const { return f_; }
  bool empty() const { return f_.empty(); }
  int degree(const Algebra& alg) const;
  bool odd(const Algebra& alg) const { return degree(alg) & 1; }
  int exponent_of(int gen) const;
  int total_exponent() const;

  // Graded-commutative product of normalized monomials. Returns the
  // normalized result and the Koszul sign, or nullopt when an odd
  // generator repeats.
  static std::optional<std::pair<Monomial, int>> mul(const Algebra& alg,
                                                     const Monomial& a,
                                                     const Monomial& b);

  // Whether `pat` divides this monomial exponent-wise.
  bool divisible_by(const Monomial& pat) const;
  // Exponent-wise quotient (requires divisibility).
  Monomial quotient(const Monomial& pat) const;

  bool operator<(const Monomial& o) const { return f_ < o.f_; }
  bool operator==(const Monomial& o) const { return f_ == o.f_; }

  std::string str(const Algebra& alg) const;

  // Internal: push a (gen, exp) factor; caller keeps ids ascending.
  void push(int gen, int exp) { f_.emplace_back(gen, exp); }

 private:
  std::vector<std::pair<int, int>> f_;
};

// Exact graded-commutative polynomial: normalized monomial -> nonzero
// rational coefficient. The zero polynomial is the empty map.
class Poly {
 public:
  Poly() = default;
  explicit Poly(AlgebraPtr alg) : alg_(std::move(alg)) {}
  static Poly zero(AlgebraPtr alg) { return Poly(std::move(alg)); }
  static Poly constant(AlgebraPtr alg, const Rat& c);
  static Poly generator(AlgebraPtr alg, int gen);
  static Poly monomial(AlgebraPtr alg, const Monomial& m, const Rat& c);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::map<Monomial, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int num_terms() const { return static_cast<int>(t_.size()); }

  void add_term(const Monomial& m, const Rat& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& c) const;
  bool operator==(const Poly& o) const;

  // Z-degree if all terms share one, nullopt otherwise (zero poly: 0).
  std::optional<int> homogeneous_degree() const;
  Poly degree_part(int degree) const;
  // Sum of terms whose exponent count in `gens` equals `count`.
  Poly part_with_exponent_in(const std::vector<int>& gens, int count) const;
  int max_total_degree_in(const std::vector<int>& gens) const;

  // Algebra homomorphism determined by generator images; every image
  // must match its generator's degree exactly.
  Poly substitute(const std::map<int, Poly>& images) const;

  // Left partial derivative with respect to one generator.
  Poly partial_left(int gen) const;

  std::string str() const;

 private:
  void check_same(const Poly& o) const;
  AlgebraPtr alg_;
  std::map<Monomial, Rat> t_;
};

}  // namespace bfvlab::graded
