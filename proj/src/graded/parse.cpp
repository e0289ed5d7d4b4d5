#include "graded/parse.hpp"

#include <cctype>

namespace bfvlab::graded {

namespace {

struct PolyParser {
  const AlgebraPtr& alg;
  const std::string& s;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial syntax error at position " +
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

  Int parse_nat() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected a number");
    return Int(s.substr(start, pos - start));
  }

  Poly parse_atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Poly e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = parse_nat();
      Int den = 1;
      if (eat('/')) den = parse_nat();
      if (den == 0) fail("division by zero");
      return Poly::constant(alg, Rat(num, den));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) ||
              s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      auto id = alg->find(name);
      if (!id) {
        pos = start;
        fail("unknown generator '" + name + "'");
      }
      return Poly::generator(alg, *id);
    }
    fail("unexpected character");
  }

  Poly parse_factor() {
    Poly base = parse_atom();
    if (eat('^')) {
      Int e = parse_nat();
      Poly r = Poly::constant(alg, 1);
      for (Int k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  Poly parse_term() {
    Poly r = parse_factor();
    while (eat('*')) r = r * parse_factor();
    return r;
  }

  Poly parse_expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly r = parse_term();
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

Poly parse_poly(const AlgebraPtr& alg, const std::string& text) {
  PolyParser p{alg, text};
  Poly r = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

}  // namespace bfvlab::graded
