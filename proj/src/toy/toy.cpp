#include "toy/toy.hpp"

#include <functional>
#include <optional>
#include <set>

namespace bfvlab::toy {

using graded::Monomial;
using graded::Poly;

Section constant_section(const BFVModel& m, int i) {
  Section s;
  for (int k = 0; k < m.constraints(); ++k)
    s.comp.push_back(Poly::constant(m.algebra(), k == i ? 1 : 0));
  return s;
}

Poly X(const BFVModel& m, int i, const Poly& g) {
  // {H_i, .} makes H -> X_H a homomorphism under [X,Y] = XY - YX, which
  // is what the displayed defect formulas assume.
  return m.bracket(m.H(i), g, PairMask::XP);
}

CommutatorDefect hamiltonian_commutator_defect(const BFVModel& m, int i, int j,
                                               const Poly& g) {
  CommutatorDefect out;
  Poly comm = X(m, i, X(m, j, g)) - X(m, j, X(m, i, g));
  Poly sum(m.algebra());
  for (int k = 0; k < m.constraints(); ++k)
    sum = sum + m.f(i, j, k) * X(m, k, g);
  out.defect = comm - sum;
  Poly expected(m.algebra());
  for (int k = 0; k < m.constraints(); ++k)
    expected = expected + m.bracket(m.f(i, j, k), g, PairMask::XP) * m.H(k);
  out.expected = std::move(expected);
  return out;
}

Section alt1_bracket(const BFVModel& m, const Section& s1, const Section& s2) {
  Section out;
  for (int k = 0; k < m.constraints(); ++k) {
    Poly comp(m.algebra());
    for (int i = 0; i < m.constraints(); ++i) {
      for (int j = 0; j < m.constraints(); ++j)
        comp = comp + m.f(i, j, k) * s1.comp[i] * s2.comp[j];
      comp = comp + s1.comp[i] * X(m, i, s2.comp[k]) -
             s2.comp[i] * X(m, i, s1.comp[k]);
    }
    out.comp.push_back(std::move(comp));
  }
  return out;
}

Poly alt1_anchor(const BFVModel& m, const Section& s, const Poly& g) {
  Poly out(m.algebra());
  for (int i = 0; i < m.constraints(); ++i)
    out = out + s.comp[i] * X(m, i, g);
  return out;
}

Section alt1_leibniz_defect(const BFVModel& m, const Section& s1,
                            const Poly& g, const Section& s2) {
  Section gs2;
  for (const auto& c : s2.comp) gs2.comp.push_back(g * c);
  Section lhs = alt1_bracket(m, s1, gs2);
  Section rhs = alt1_bracket(m, s1, s2);
  Poly rho = alt1_anchor(m, s1, g);
  Section out;
  for (int k = 0; k < m.constraints(); ++k)
    out.comp.push_back(lhs.comp[k] - g * rhs.comp[k] - rho * s2.comp[k]);
  return out;
}

AnchorDefect alt1_anchor_defect(const BFVModel& m, const Section& s1,
                                const Section& s2, const Poly& g) {
  AnchorDefect out;
  Section br = alt1_bracket(m, s1, s2);
  Poly lhs = alt1_anchor(m, br, g);
  Poly comm = alt1_anchor(m, s1, alt1_anchor(m, s2, g)) -
              alt1_anchor(m, s2, alt1_anchor(m, s1, g));
  out.defect = lhs - comm;
  Poly expected(m.algebra());
  for (int i = 0; i < m.constraints(); ++i)
    for (int j = 0; j < m.constraints(); ++j)
      for (int k = 0; k < m.constraints(); ++k)
        expected = expected - s1.comp[i] * s2.comp[j] *
                                  m.bracket(m.f(i, j, k), g, PairMask::XP) *
                                  m.H(k);
  out.expected = std::move(expected);
  return out;
}

Poly alt1_q(const BFVModel& m, const Poly& target) {
  std::map<int, Poly> images;
  const auto& alg = m.algebra();
  for (int i = 0; i < m.pairs(); ++i) {
    for (int id : {m.x(i), m.p(i)}) {
      Poly img(alg);
      for (int k = 0; k < m.constraints(); ++k)
        img = img + X(m, k, Poly::generator(alg, id)) *
                        Poly::generator(alg, m.c(k));
      images[id] = std::move(img);
    }
  }
  for (int i = 0; i < m.constraints(); ++i) {
    // Q(c^i) = -1/2 f^i_jk c^j c^k; with X_i = {H_i, .} the so(3)
    // nilpotency check forces both the 1/2 and the sign.
    Poly img(alg);
    for (int j = 0; j < m.constraints(); ++j)
      for (int k = 0; k < m.constraints(); ++k)
        img = img + m.f(j, k, i) * Poly::generator(alg, m.c(j)) *
                        Poly::generator(alg, m.c(k)) * Rat(-1, 2);
    images[m.c(i)] = std::move(img);
    images[m.b(i)] = Poly(alg);  // unused sector
  }
  graded::Derivation Q(alg, 1, std::move(images));
  return Q.apply(target);
}

Poly alt1_q_square(const BFVModel& m, const Poly& target) {
  return alt1_q(m, alt1_q(m, target));
}

Poly alt1_q_square_expected(const BFVModel& m, const Poly& g) {
  // Re-derived indexed form: Q^2(g) = -1/2 {f_ij^m, g} H_m c^j c^i.
  Poly out(m.algebra());
  for (int i = 0; i < m.constraints(); ++i)
    for (int j = 0; j < m.constraints(); ++j)
      for (int k = 0; k < m.constraints(); ++k)
        out = out + m.bracket(m.f(i, j, k), g, PairMask::XP) * m.H(k) *
                        Poly::generator(m.algebra(), m.c(j)) *
                        Poly::generator(m.algebra(), m.c(i)) * Rat(-1, 2);
  return out;
}

Poly alt1_q_square_expected_ghost(const BFVModel& m, int i) {
  // Q^2(c^i) = -1/2 {H_m, f^i_jk} c^m c^j c^k
  //            + 1/2 f^i_jk f^j_ab c^a c^b c^k.
  const auto& alg = m.algebra();
  Poly out(alg);
  const int n = m.constraints();
  for (int mm = 0; mm < n; ++mm)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out = out + m.bracket(m.H(mm), m.f(j, k, i), PairMask::XP) *
                        Poly::generator(alg, m.c(mm)) *
                        Poly::generator(alg, m.c(j)) *
                        Poly::generator(alg, m.c(k)) * Rat(-1, 2);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          out = out + m.f(j, k, i) * m.f(a, b, j) *
                          Poly::generator(alg, m.c(a)) *
                          Poly::generator(alg, m.c(b)) *
                          Poly::generator(alg, m.c(k)) * Rat(1, 2);
  return out;
}

namespace {

// On-shell substitution for "graph" systems: whenever some H_i contains
// a bare generator g (exponent 1, g absent from the other terms), the
// zero locus solves g = -rest/coeff; substituting every such relation
// reduces membership in <H_i> to vanishing of the normal form.
std::optional<graded::RelationSet> solvable_substitution(const BFVModel& m) {
  const auto& alg = m.algebra();
  graded::RelationSet rel(alg);
  std::set<int> used;
  for (int i = 0; i < m.constraints(); ++i) {
    bool found = false;
    for (const auto& [mono, coeff] : m.H(i).terms()) {
      if (mono.total_exponent() != 1) continue;
      int g = mono.factors()[0].first;
      if (used.count(g)) continue;
      bool elsewhere = false;
      for (const auto& [mo, co] : m.H(i).terms())
        if (!(mo == mono) && mo.exponent_of(g) > 0) elsewhere = true;
      if (elsewhere) continue;
      Poly rest = m.H(i) - Poly::monomial(alg, mono, coeff);
      rel.substitute(mono, rest * (Rat(-1) / coeff));
      used.insert(g);
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return rel;
}

// Bounded linear search for A_k with part = sum A_k H_k, coefficients
// drawn from the phase-space monomials of capped degree.
bool bounded_membership(const BFVModel& m, const Poly& part,
                        int degree_bound) {
  const auto& alg = m.algebra();
  std::vector<int> xp_ids;
  for (int i = 0; i < m.pairs(); ++i) {
    xp_ids.push_back(m.x(i));
    xp_ids.push_back(m.p(i));
  }
  int cap = std::min(degree_bound, part.max_total_degree_in(xp_ids));
  std::vector<Monomial> basis;
  {
    std::vector<int> w;
    std::function<void(size_t)> rec = [&](size_t idx) {
      if (idx == xp_ids.size()) {
        int sign;
        bool killed;
        std::vector<int> word = w;
        Monomial mm = Monomial::from_word(*alg, word, sign, killed);
        if (!killed) basis.push_back(std::move(mm));
        return;
      }
      int room = cap - static_cast<int>(w.size());
      for (int e = 0; e <= room; ++e) {
        for (int k = 0; k < e; ++k) w.push_back(xp_ids[idx]);
        rec(idx + 1);
        for (int k = 0; k < e; ++k) w.pop_back();
      }
    };
    rec(0);
  }
  std::map<Monomial, int> row_of;
  auto row = [&](const Monomial& mm) {
    auto it = row_of.find(mm);
    if (it != row_of.end()) return it->second;
    int idx = static_cast<int>(row_of.size());
    row_of.emplace(mm, idx);
    return idx;
  };
  std::vector<std::map<int, Rat>> cols;
  for (int k = 0; k < m.constraints(); ++k)
    for (const auto& bm : basis) {
      Poly prod = Poly::monomial(alg, bm, 1) * m.H(k);
      std::map<int, Rat> entries;
      for (const auto& [mm, cc] : prod.terms()) entries[row(mm)] = cc;
      cols.push_back(std::move(entries));
    }
  std::map<int, Rat> rhs_entries;
  for (const auto& [mm, cc] : part.terms()) rhs_entries[row(mm)] = cc;

  size_t nrows = row_of.size();
  std::vector<std::vector<Rat>> A(nrows, std::vector<Rat>(cols.size(), 0));
  std::vector<Rat> rhs(nrows, 0);
  for (size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, v] : cols[j]) A[i][j] = v;
  for (const auto& [i, v] : rhs_entries) rhs[i] = v;
  return bfv::solve_linear(std::move(A), std::move(rhs)).has_value();
}

}  // namespace

bool in_constraint_ideal(const BFVModel& m, const Poly& p, int degree_bound) {
  if (p.is_zero()) return true;
  const auto& alg = m.algebra();

  if (auto rel = solvable_substitution(m))
    return rel->reduce(p).is_zero();

  // Split by ghost content: the H_k are phase-space polynomials, so a
  // combination sum A_k H_k decomposes ghost-monomial by ghost-monomial.
  std::vector<int> ghost_ids;
  for (int i = 0; i < m.constraints(); ++i) {
    ghost_ids.push_back(m.c(i));
    ghost_ids.push_back(m.b(i));
  }
  std::map<Monomial, Poly> parts;
  for (const auto& [mono, coeff] : p.terms()) {
    Monomial ghost, xp;
    for (auto [g, e] : mono.factors()) {
      bool is_ghost = false;
      for (int gi : ghost_ids) is_ghost = is_ghost || gi == g;
      (is_ghost ? ghost : xp).push(g, e);
    }
    auto it = parts.find(ghost);
    if (it == parts.end()) it = parts.emplace(ghost, Poly(alg)).first;
    it->second.add_term(xp, coeff);
  }
  for (const auto& [ghost, part] : parts)
    if (!bounded_membership(m, part, degree_bound)) return false;
  return true;
}

Poly alt2_moment(const BFVModel& m, const Section& s) {
  Poly mu(m.algebra());
  for (int i = 0; i < m.constraints(); ++i) mu = mu + s.comp[i] * m.H(i);
  return mu;
}

Poly alt2_leibniz_defect(const BFVModel& m, const Section& s1, const Poly& g,
                         const Section& s2) {
  Poly mu1 = alt2_moment(m, s1);
  Poly mu2 = alt2_moment(m, s2);
  return m.bracket(mu1, g * mu2, PairMask::XP) -
         g * m.bracket(mu1, mu2, PairMask::XP) -
         m.bracket(mu1, g, PairMask::XP) * mu2;
}

Poly alt2_homomorphism_defect(const BFVModel& m, const Section& s1,
                              const Section& s2, const Poly& a) {
  Poly mu1 = alt2_moment(m, s1);
  Poly mu2 = alt2_moment(m, s2);
  Poly lhs = m.bracket(m.bracket(mu1, mu2, PairMask::XP), a, PairMask::XP);
  Poly rhs = m.bracket(mu1, m.bracket(mu2, a, PairMask::XP), PairMask::XP) -
             m.bracket(mu2, m.bracket(mu1, a, PairMask::XP), PairMask::XP);
  return lhs - rhs;
}

Poly alt2_nonlinearity_defect(const BFVModel& m, const Section& s,
                              const Poly& g, const Poly& a) {
  Poly mu = alt2_moment(m, s);
  return m.bracket(g * mu, a, PairMask::XP) -
         g * m.bracket(mu, a, PairMask::XP);
}

std::string NonlinearityWitness::str(const BFVModel& m) const {
  if (!found) return "rho2 appears C^infinity-linear over the search set";
  return "s = u" + std::to_string(section_index + 1) + ", g = " + g.str() +
         ", a = " + argument.str() + ", defect = " + defect.str();
}

NonlinearityWitness alt2_nonlinearity_witness(const BFVModel& m) {
  NonlinearityWitness w;
  const auto& alg = m.algebra();
  std::vector<Poly> coords;
  for (int i = 0; i < m.pairs(); ++i) {
    coords.push_back(Poly::generator(alg, m.x(i)));
    coords.push_back(Poly::generator(alg, m.p(i)));
  }
  for (int i = 0; i < m.constraints(); ++i) {
    Section s = constant_section(m, i);
    for (const auto& g : coords)
      for (const auto& a : coords) {
        Poly d = alt2_nonlinearity_defect(m, s, g, a);
        if (!d.is_zero()) {
          w.found = true;
          w.section_index = i;
          w.g = g;
          w.argument = a;
          w.defect = std::move(d);
          return w;
        }
      }
  }
  return w;
}

}  // namespace bfvlab::toy
