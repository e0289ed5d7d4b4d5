#pragma once

#include <string>

#include "graded/algebra.hpp"

namespace bfvlab::graded {

// Parses "2*x1*p2 - 1/2*c1^2 + (x1 + p1)*b2" over the given algebra.
// Multiplication is explicit; unknown names and syntax errors throw
// InputError with the offending position.
Poly parse_poly(const AlgebraPtr& alg, const std::string& text);

}  // namespace bfvlab::graded
