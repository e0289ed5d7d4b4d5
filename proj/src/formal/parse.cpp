#include "formal/parse.hpp"

#include <cctype>
#include <map>

namespace bfvlab::formal {

namespace {

const std::map<std::string, Op>& op_table() {
  static const std::map<std::string, Op> t = {
      {"Lie", Op::Lie},          {"d", Op::ExtD},
      {"grad", Op::Grad},        {"sharp", Op::Sharp},
      {"etaSharp", Op::EtaSharp},{"Div", Op::Div},
      {"LieHalf", Op::LieHalf},  {"Bracket", Op::VBracket},
      {"DH", Op::DH},            {"sharp2", Op::Sharp2},
      {"symSharp2", Op::SymSharp2}, {"Q", Op::QOp},
  };
  return t;
}

struct Parser {
  const std::string& s;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("expression syntax error at position " +
                     std::to_string(pos) + ": " + what + " in \"" + s + "\"");
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  Rat parse_rational() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected a number");
    Int num(s.substr(start, pos - start));
    Int den = 1;
    if (eat('/')) {
      skip_ws();
      size_t d0 = pos;
      while (pos < s.size() &&
             std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (pos == d0) fail("expected a denominator");
      den = Int(s.substr(d0, pos - d0));
      if (den == 0) fail("division by zero");
    }
    return Rat(num, den);
  }

  std::string parse_name() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected a name");
    return s.substr(start, pos - start);
  }

  Expr parse_atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Expr e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return Expr::constant(parse_rational());
    size_t at = pos;
    std::string name = parse_name();
    auto opit = op_table().find(name);
    if (opit != op_table().end()) {
      if (!eat('(')) {
        pos = at;
        fail("operator '" + name + "' requires arguments");
      }
      std::vector<Expr> args;
      if (peek() != ')') {
        args.push_back(parse_expr());
        while (eat(',')) args.push_back(parse_expr());
      }
      if (!eat(')')) fail("expected ')'");
      return make_op(opit->second, std::move(args));
    }
    int id = symbol_id(name);
    if (id < 0) {
      pos = at;
      fail("unknown symbol '" + name + "'");
    }
    return Expr::symbol(id);
  }

  Expr parse_term() {
    Expr r = parse_atom();
    while (eat('*')) r = r * parse_atom();
    return r;
  }

  Expr parse_expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Expr r = parse_term();
    if (neg) r = -r;
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos;
        r = r + parse_term();
      } else if (c == '-') {
        ++pos;
        r = r - parse_term();
      } else {
        break;
      }
    }
    return r;
  }
};

}  // namespace

Expr parse_expression(const std::string& text) {
  Parser p{text};
  Expr e = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

}  // namespace bfvlab::formal
