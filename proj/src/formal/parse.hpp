#pragma once

#include <string>

#include "formal/expr.hpp"

namespace bfvlab::formal {

// Parses the formal-calculus DSL, e.g.
//   "Hn*xiN + Lie(xiP, psiN) - 2*Lie(sharp(psiP), xiN)".
// Operators: Lie, d, grad, sharp, etaSharp, Div, LieHalf, Bracket, DH,
// sharp2, symSharp2, Q. Kind errors name the offending operator; syntax
// errors carry the position. Round-trips through Expr::str().
Expr parse_expression(const std::string& text);

}  // namespace bfvlab::formal
