#include "graded/random.hpp"

namespace bfvlab::graded {

Poly random_monomial(const AlgebraPtr& alg, Rng& rng,
                     const RandomPolyOptions& opt) {
  const std::vector<int>* pool = nullptr;
  std::vector<int> all;
  if (!opt.restrict_to.empty()) {
    pool = &opt.restrict_to;
  } else {
    for (const auto& g : alg->gens()) all.push_back(g.id);
    pool = &all;
  }
  for (int attempt = 0; attempt < 32; ++attempt) {
    int nf = 1 + rng.below(opt.max_factors);
    std::vector<int> word;
    for (int k = 0; k < nf; ++k) word.push_back((*pool)[rng.below(static_cast<int>(pool->size()))]);
    int sign;
    bool killed;
    Monomial m = Monomial::from_word(*alg, word, sign, killed);
    if (killed) continue;
    return Poly::monomial(alg, m, sign);
  }
  return Poly::constant(alg, 1);
}

Poly random_poly(const AlgebraPtr& alg, Rng& rng,
                 const RandomPolyOptions& opt) {
  Poly p(alg);
  int nt = 1 + rng.below(opt.max_terms);
  for (int t = 0; t < nt; ++t) {
    Rat c = rng.below(2 * opt.coeff_range) - opt.coeff_range;
    if (c == 0) c = 1;
    if (!opt.allow_constant || rng.below(8) != 0) {
      p = p + random_monomial(alg, rng, opt) * c;
    } else {
      p = p + Poly::constant(alg, c);
    }
  }
  return p;
}

}  // namespace bfvlab::graded
