#include "graded/relations.hpp"

#include <deque>

namespace bfvlab::graded {

void RelationSet::substitute(const Monomial& lhs, Poly rhs) {
  if (lhs.empty())
    throw ConfigError("substitution rule with empty left-hand side");
  subs_.emplace_back(lhs, std::move(rhs));
}

Poly RelationSet::reduce(const Poly& p) const {
  Poly out(alg_);
  std::deque<std::pair<Monomial, Rat>> work(p.terms().begin(),
                                            p.terms().end());
  long long steps = 0;
  while (!work.empty()) {
    auto [m, c] = work.front();
    work.pop_front();
    if (c == 0) continue;

    bool rewritten = false;
    for (const auto& pat : ann_) {
      if (m.divisible_by(pat)) {
        ++steps;
        rewritten = true;
        break;  // term vanishes
      }
    }
    if (!rewritten) {
      for (const auto& [lhs, rhs] : subs_) {
        if (!m.divisible_by(lhs)) continue;
        ++steps;
        Monomial q = m.quotient(lhs);
        // m = s * (q * lhs) in canonical order; rewrite lhs -> rhs.
        auto qp = Monomial::mul(*alg_, q, lhs);
        if (!qp) break;  // cannot happen for a genuine quotient
        Poly repl = Poly::monomial(alg_, q, c * qp->second) * rhs;
        for (const auto& [m2, c2] : repl.terms()) work.emplace_back(m2, c2);
        rewritten = true;
        break;
      }
    }
    if (!rewritten) out.add_term(m, c);
    if (steps > budget_)
      throw ConfigError(
          "relation reduction exceeded the step budget; rule set is likely "
          "non-terminating");
  }
  return out;
}

}  // namespace bfvlab::graded
