#include "formal/expr.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace bfvlab::formal {

const std::vector<FieldSymbol>& symbol_table() {
  static const std::vector<FieldSymbol> table = {
      {sym::xiN, "xiN", 1, Kind::Scalar},
      {sym::xiP, "xiP", 1, Kind::Vector},
      {sym::chiN, "chiN", -1, Kind::Density},
      {sym::chiP, "chiP", -1, Kind::OneFormDensity},
      {sym::psiN, "psiN", 0, Kind::Density},
      {sym::psiP, "psiP", 0, Kind::OneFormDensity},
      {sym::h, "h", 0, Kind::Metric},
      {sym::Pi, "Pi", 0, Kind::Momentum},
      {sym::Hn, "Hn", 0, Kind::Density},
      {sym::Hp, "Hp", 0, Kind::OneFormDensity},
      {sym::K, "K", 0, Kind::SymTensor},
      {sym::G, "G", 0, Kind::SymTensor},
      {sym::volh, "volh", 0, Kind::Density},
      {sym::tildePi, "tildePi", 0, Kind::Sym2Up},
  };
  return table;
}

int symbol_id(const std::string& name) {
  for (const auto& s : symbol_table())
    if (name == s.name) return s.id;
  return -1;
}

const char* op_name(Op op) {
  switch (op) {
    case Op::Lie: return "Lie";
    case Op::ExtD: return "d";
    case Op::Grad: return "grad";
    case Op::Sharp: return "sharp";
    case Op::EtaSharp: return "etaSharp";
    case Op::Div: return "Div";
    case Op::LieHalf: return "LieHalf";
    case Op::VBracket: return "Bracket";
    case Op::DH: return "DH";
    case Op::Sharp2: return "sharp2";
    case Op::SymSharp2: return "symSharp2";
    case Op::QOp: return "Q";
    default: return "?";
  }
}

int Atom::gdeg(bool wrong_q_parity) const {
  if (is_symbol()) return symbol_table()[symbol].gdeg;
  int d = (op == Op::QOp) ? 1 : 0;
  if (op == Op::QOp && wrong_q_parity) d = 0;  // fault injection
  for (const auto& a : args) {
    auto g = a.gdeg(wrong_q_parity);
    d += g ? *g : 0;
  }
  return d;
}

Kind Atom::kind() const {
  if (is_symbol()) return symbol_table()[symbol].kind;
  switch (op) {
    case Op::Lie: return args[1].kind();
    case Op::ExtD: return Kind::OneForm;
    case Op::Grad: return Kind::Vector;
    case Op::Sharp: return Kind::DensVector;
    case Op::EtaSharp: return Kind::Vector;
    case Op::Div: return Kind::Scalar;
    case Op::LieHalf: return Kind::Density;
    case Op::VBracket: return Kind::Vector;
    case Op::DH: return Kind::SymTensor;
    case Op::Sharp2: return Kind::Sym2Up;
    case Op::SymSharp2: return Kind::Sym2Up;
    case Op::QOp: return args[0].kind();
    default: return Kind::Unknown;
  }
}

std::string Atom::str() const {
  if (is_symbol()) return symbol_table()[symbol].name;
  std::ostringstream os;
  os << op_name(op) << "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) os << ", ";
    os << args[i].str();
  }
  os << ")";
  return os.str();
}

int compare(const Atom& a, const Atom& b) {
  if (a.is_symbol() != b.is_symbol()) return a.is_symbol() ? -1 : 1;
  if (a.is_symbol()) return a.symbol < b.symbol ? -1 : (a.symbol > b.symbol ? 1 : 0);
  if (a.op != b.op) return static_cast<int>(a.op) < static_cast<int>(b.op) ? -1 : 1;
  if (a.args.size() != b.args.size())
    return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); ++i) {
    int c = compare(a.args[i], b.args[i]);
    if (c) return c;
  }
  return 0;
}

int compare(const Expr& a, const Expr& b) {
  size_t n = std::min(a.terms.size(), b.terms.size());
  for (size_t i = 0; i < n; ++i) {
    const Term& x = a.terms[i];
    const Term& y = b.terms[i];
    if (x.factors.size() != y.factors.size())
      return x.factors.size() < y.factors.size() ? -1 : 1;
    for (size_t j = 0; j < x.factors.size(); ++j) {
      int c = compare(x.factors[j], y.factors[j]);
      if (c) return c;
    }
    if (x.coeff != y.coeff) return x.coeff < y.coeff ? -1 : 1;
  }
  if (a.terms.size() != b.terms.size())
    return a.terms.size() < b.terms.size() ? -1 : 1;
  return 0;
}

bool canonicalize_term(Term& t, bool wrong_q_parity, bool kill_nilpotent) {
  // Insertion sort with Koszul signs.
  auto& f = t.factors;
  for (size_t i = 1; i < f.size(); ++i) {
    Atom v = f[i];
    size_t j = i;
    while (j > 0 && compare(f[j - 1], v) > 0) {
      if (f[j - 1].odd(wrong_q_parity) && v.odd(wrong_q_parity))
        t.coeff = -t.coeff;
      f[j] = f[j - 1];
      --j;
    }
    f[j] = std::move(v);
  }
  if (kill_nilpotent)
    for (size_t i = 0; i + 1 < f.size(); ++i)
      if (f[i].odd(wrong_q_parity) && compare(f[i], f[i + 1]) == 0)
        return false;
  return true;
}

namespace {
bool term_factors_less(const Term& a, const Term& b) {
  if (a.factors.size() != b.factors.size())
    return a.factors.size() < b.factors.size();
  for (size_t i = 0; i < a.factors.size(); ++i) {
    int c = compare(a.factors[i], b.factors[i]);
    if (c) return c < 0;
  }
  return false;
}
bool term_factors_equal(const Term& a, const Term& b) {
  if (a.factors.size() != b.factors.size()) return false;
  for (size_t i = 0; i < a.factors.size(); ++i)
    if (compare(a.factors[i], b.factors[i]) != 0) return false;
  return true;
}
}  // namespace

Expr canonicalize(std::vector<Term> terms, bool wrong_q_parity,
                  bool kill_nilpotent) {
  std::vector<Term> ok;
  for (auto& t : terms) {
    if (t.coeff == 0) continue;
    if (canonicalize_term(t, wrong_q_parity, kill_nilpotent))
      ok.push_back(std::move(t));
  }
  std::sort(ok.begin(), ok.end(), term_factors_less);
  Expr out;
  for (auto& t : ok) {
    if (!out.terms.empty() && term_factors_equal(out.terms.back(), t)) {
      out.terms.back().coeff += t.coeff;
      if (out.terms.back().coeff == 0) out.terms.pop_back();
    } else {
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

Expr Expr::constant(const Rat& c) {
  Expr e;
  if (c != 0) e.terms.push_back(Term{c, {}});
  return e;
}

Expr Expr::symbol(int id) {
  Expr e;
  e.terms.push_back(Term{1, {Atom{id, Op::None, {}}}});
  return e;
}

Expr Expr::atom(Atom a) {
  Expr e;
  e.terms.push_back(Term{1, {std::move(a)}});
  return e;
}

Expr Expr::operator+(const Expr& o) const {
  std::vector<Term> all = terms;
  all.insert(all.end(), o.terms.begin(), o.terms.end());
  return canonicalize(std::move(all));
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator-() const {
  Expr e = *this;
  for (auto& t : e.terms) t.coeff = -t.coeff;
  return e;
}

Expr Expr::operator*(const Expr& o) const {
  std::vector<Term> all;
  for (const auto& a : terms)
    for (const auto& b : o.terms) {
      Term t;
      t.coeff = a.coeff * b.coeff;
      t.factors = a.factors;
      t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
      all.push_back(std::move(t));
    }
  return canonicalize(std::move(all));
}

Expr mul_keep(const Expr& a, const Expr& b, bool wrong_q_parity) {
  std::vector<Term> all;
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) {
      Term t;
      t.coeff = x.coeff * y.coeff;
      t.factors = x.factors;
      t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
      all.push_back(std::move(t));
    }
  return canonicalize(std::move(all), wrong_q_parity, /*kill=*/false);
}

Expr Expr::operator*(const Rat& c) const {
  if (c == 0) return Expr{};
  Expr e = *this;
  for (auto& t : e.terms) t.coeff *= c;
  return e;
}

bool Expr::operator==(const Expr& o) const { return compare(*this, o) == 0; }

std::optional<int> Expr::gdeg(bool wrong_q_parity) const {
  if (terms.empty()) return 0;
  std::optional<int> d;
  for (const auto& t : terms) {
    int td = 0;
    for (const auto& a : t.factors) td += a.gdeg(wrong_q_parity);
    if (!d)
      d = td;
    else if (*d != td)
      return std::nullopt;
  }
  return d;
}

Kind term_kind(const Term& t) {
  Kind shape = Kind::Scalar;
  bool have_shape = false;
  bool have_density = false;
  for (const auto& a : t.factors) {
    Kind k = a.kind();
    if (k == Kind::Scalar) continue;
    if (k == Kind::Density) {
      have_density = true;
      continue;
    }
    if (have_shape) return Kind::Unknown;  // product of two shaped factors
    have_shape = true;
    shape = k;
  }
  if (have_shape) return shape;
  return have_density ? Kind::Density : Kind::Scalar;
}

Kind Expr::kind() const {
  if (terms.empty()) return Kind::Scalar;
  Kind k = term_kind(terms[0]);
  for (const auto& t : terms)
    if (term_kind(t) != k) return Kind::Unknown;
  return k;
}

std::string Term::str(bool lead_sign) const {
  std::ostringstream os;
  Rat a = coeff;
  if (a < 0) {
    os << (lead_sign ? "- " : "-");
    a = -a;
  } else if (lead_sign) {
    os << "+ ";
  }
  bool printed = false;
  if (a != 1 || factors.empty()) {
    os << a.str();
    printed = true;
  }
  for (const auto& f : factors) {
    if (printed) os << "*";
    os << f.str();
    printed = true;
  }
  return os.str();
}

std::string Expr::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " " << (terms[i].coeff < 0 ? "- " : "+ ");
    Term t = terms[i];
    if (i && t.coeff < 0) t.coeff = -t.coeff;
    os << t.str();
  }
  return os.str();
}

namespace {

bool kind_ok(Kind want, Kind got) {
  return got == want || got == Kind::Unknown;
}

void check_slot(Op op, int slot, Kind got, std::initializer_list<Kind> want) {
  for (Kind w : want)
    if (kind_ok(w, got)) return;
  throw InputError(std::string("operator ") + op_name(op) +
                   ": argument " + std::to_string(slot + 1) +
                   " has inadmissible kind");
}

}  // namespace

Expr make_op(Op op, std::vector<Expr> args) {
  // Every operator is multilinear in each slot, so a zero argument
  // collapses the whole application.
  for (const auto& a : args)
    if (a.is_zero() && op != Op::QOp) return Expr::zero();
  auto arity = [&](size_t n) {
    if (args.size() != n)
      throw InputError(std::string("operator ") + op_name(op) +
                       " expects " + std::to_string(n) + " argument(s)");
  };
  switch (op) {
    case Op::Lie:
      arity(2);
      check_slot(op, 0, args[0].kind(), {Kind::Vector, Kind::DensVector});
      break;
    case Op::ExtD:
      arity(1);
      check_slot(op, 0, args[0].kind(), {Kind::Scalar});
      break;
    case Op::Grad:
      arity(2);
      check_slot(op, 0, args[0].kind(), {Kind::Metric});
      check_slot(op, 1, args[1].kind(), {Kind::Scalar});
      break;
    case Op::Sharp:
    case Op::EtaSharp:
      arity(1);
      check_slot(op, 0, args[0].kind(), {Kind::OneFormDensity});
      break;
    case Op::Div:
      arity(1);
      check_slot(op, 0, args[0].kind(), {Kind::Vector});
      break;
    case Op::LieHalf:
      arity(2);
      check_slot(op, 0, args[0].kind(), {Kind::OneFormDensity});
      check_slot(op, 1, args[1].kind(), {Kind::Scalar});
      break;
    case Op::VBracket:
      arity(2);
      check_slot(op, 0, args[0].kind(), {Kind::Vector});
      check_slot(op, 1, args[1].kind(), {Kind::Vector});
      break;
    case Op::DH:
      arity(1);
      check_slot(op, 0, args[0].kind(), {Kind::Scalar});
      break;
    case Op::Sharp2:
      arity(1);
      check_slot(op, 0, args[0].kind(), {Kind::SymTensor});
      break;
    case Op::SymSharp2:
      arity(2);
      check_slot(op, 0, args[0].kind(), {Kind::OneFormDensity});
      check_slot(op, 1, args[1].kind(), {Kind::OneForm});
      break;
    case Op::QOp:
      arity(1);
      break;
    default:
      throw InputError("unknown operator");
  }
  return Expr::atom(Atom{-1, op, std::move(args)});
}

}  // namespace bfvlab::formal
