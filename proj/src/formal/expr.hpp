#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graded/rational.hpp"

namespace bfvlab::formal {

using bfvlab::Rat;

// Tensor shapes, used only to reject ill-formed operator applications;
// no index-level computation happens here.
enum class Kind {
  Scalar,
  Vector,
  OneForm,
  Metric,
  Momentum,         // symmetric 2-vector density
  SymTensor,        // symmetric covariant 2-tensor
  Sym2Up,           // symmetric contravariant 2-tensor (density)
  Density,
  OneFormDensity,
  DensVector,       // densitized vector field
  Unknown
};

// Opaque operators of the formal calculus. Their only computational
// content is the declared rewrite rules; curvature identities are not
// encoded.
enum class Op {
  None,
  Lie,        // Lie(X, T)
  ExtD,       // d(f)
  Grad,       // grad(h, f) = grad_h f
  Sharp,      // sharp(omega): 1-form density -> densitized vector
  EtaSharp,   // etaSharp(omega): 1-form density -> plain vector
  Div,        // Div(X): h-divergence of a vector field
  LieHalf,    // LieHalf(chi, f) = L_{chi^sharp}(f vol_h^{-1/2}) vol_h^{1/2}
  VBracket,   // Bracket(X, Y) of vector fields
  DH,         // DH(f): the -grad grad f + h tr operator, opaque
  Sharp2,     // sharp2(T): raise both slots of a symmetric 2-tensor
  SymSharp2,  // symSharp2(omega1, omega2) = (omega1 (x)_s omega2)^{##}
  QOp         // opaque application of a Q-type derivation
};

struct FieldSymbol {
  int id;
  const char* name;
  int gdeg;  // ghost degree
  Kind kind;
};

// Fixed field content of the calculus.
const std::vector<FieldSymbol>& symbol_table();
int symbol_id(const std::string& name);  // -1 when unknown

// Symbol ids, in table order.
namespace sym {
constexpr int xiN = 0;    // degree +1 scalar
constexpr int xiP = 1;    // degree +1 vector
constexpr int chiN = 2;   // degree -1 scalar density
constexpr int chiP = 3;   // degree -1 one-form density
constexpr int psiN = 4;   // degree 0, squares to zero by relation
constexpr int psiP = 5;
constexpr int h = 6;
constexpr int Pi = 7;
constexpr int Hn = 8;
constexpr int Hp = 9;
constexpr int K = 10;
constexpr int G = 11;
constexpr int volh = 12;
constexpr int tildePi = 13;
}  // namespace sym

struct Expr;

struct Atom {
  int symbol = -1;           // >= 0 for field symbols
  Op op = Op::None;          // != None for operator applications
  std::vector<Expr> args;

  bool is_symbol() const { return symbol >= 0; }
  int gdeg(bool wrong_q_parity = false) const;
  bool odd(bool wrong_q_parity = false) const {
    return gdeg(wrong_q_parity) & 1;
  }
  Kind kind() const;
  std::string str() const;
};

int compare(const Atom& a, const Atom& b);

struct Term {
  Rat coeff = 1;
  std::vector<Atom> factors;
  std::string str(bool lead_sign = false) const;
};

// Canonical sum of terms: factors Koszul-sorted, odd repeats removed,
// like terms merged, terms ordered.
struct Expr {
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  static Expr zero() { return Expr{}; }
  static Expr constant(const Rat& c);
  static Expr symbol(int id);
  static Expr atom(Atom a);

  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator-() const;
  Expr operator*(const Expr& o) const;
  Expr operator*(const Rat& c) const;
  bool operator==(const Expr& o) const;

  // Ghost degree when homogeneous (zero expr: 0).
  std::optional<int> gdeg(bool wrong_q_parity = false) const;
  Kind kind() const;

  std::string str() const;
};

int compare(const Expr& a, const Expr& b);

// Sorts factors with Koszul signs; returns false when the term vanishes
// by odd nilpotency (only when `kill_nilpotent`). `wrong_q_parity` is a
// fault-injection switch used by the non-vacuity controls.
bool canonicalize_term(Term& t, bool wrong_q_parity = false,
                       bool kill_nilpotent = true);
Expr canonicalize(std::vector<Term> terms, bool wrong_q_parity = false,
                  bool kill_nilpotent = true);

// Product that keeps odd-nilpotent terms alive so a traced rule can
// remove them visibly.
Expr mul_keep(const Expr& a, const Expr& b, bool wrong_q_parity = false);

Expr make_op(Op op, std::vector<Expr> args);  // kind-checked
const char* op_name(Op op);

}  // namespace bfvlab::formal
