#include "graded/derivation.hpp"

namespace bfvlab::graded {

Poly Derivation::image(int gen) const {
  auto it = images_.find(gen);
  if (it != images_.end()) return it->second;
  if (implicit_zero_) return Poly::zero(alg_);
  throw ConfigError("derivation has no image for generator " +
                    alg_->gen(gen).name);
}

Poly Derivation::apply(const Poly& p) const {
  if (p.algebra() != alg_)
    throw ConfigError("derivation applied across generator sets");
  Poly out(alg_);
  const bool d_odd = odd();
  for (const auto& [m, c] : p.terms()) {
    int prefix_parity = 0;
    const auto& fs = m.factors();
    for (size_t i = 0; i < fs.size(); ++i) {
      auto [g, e] = fs[i];
      Monomial prefix, rest;
      for (size_t j = 0; j < i; ++j) prefix.push(fs[j].first, fs[j].second);
      if (e > 1) rest.push(g, e - 1);
      for (size_t j = i + 1; j < fs.size(); ++j)
        rest.push(fs[j].first, fs[j].second);

      Rat coeff = c * e;
      if (d_odd && (prefix_parity & 1)) coeff = -coeff;
      Poly term = Poly::monomial(alg_, prefix, coeff) * image(g) *
                  Poly::monomial(alg_, rest, 1);
      out = out + term;

      if (alg_->gen(g).odd()) prefix_parity += e;
    }
  }
  return out;
}

Derivation Derivation::commutator(const Derivation& a, const Derivation& b) {
  if (a.alg_ != b.alg_)
    throw ConfigError("commutator across generator sets");
  const int sign = (a.odd() && b.odd()) ? -1 : 1;
  std::map<int, Poly> images;
  for (const auto& g : a.alg_->gens()) {
    Poly v = a.apply(b.image(g.id)) - b.apply(a.image(g.id)) * Rat(sign);
    images[g.id] = std::move(v);
  }
  return Derivation(a.alg_, a.degree_ + b.degree_, std::move(images));
}

std::string NilpotencyReport::str(const Algebra& alg) const {
  if (ok) return "ok";
  return "D^2(" + alg.gen(failing_gen).name + ") = " + residue.str();
}

NilpotencyReport check_nilpotent(const Derivation& d, const RelationSet& r) {
  if (!d.odd()) throw ConfigError("nilpotency check requires an odd derivation");
  NilpotencyReport rep;
  for (const auto& g : d.algebra()->gens()) {
    Poly dd = d.apply(r.reduce(d.image(g.id)));
    Poly res = r.reduce(dd);
    if (!res.is_zero()) {
      rep.ok = false;
      rep.failing_gen = g.id;
      rep.residue = std::move(res);
      return rep;
    }
  }
  return rep;
}

}  // namespace bfvlab::graded
