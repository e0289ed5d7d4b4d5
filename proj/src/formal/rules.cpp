#include "formal/rules.hpp"

#include <algorithm>
#include <optional>

namespace bfvlab::formal {

RuleSet RuleSet::ideal_preservation() {
  RuleSet rs;
  rs.enabled = {rule::op_linearity, rule::ideal_monomial, rule::psi_sharp_xi,
                rule::lie_recombine};
  return rs;
}

RuleSet RuleSet::qtilde_nilpotency() {
  RuleSet rs;
  rs.enabled = {rule::op_linearity, rule::q2_axiom};
  return rs;
}

RuleSet RuleSet::psi_n_derivation() {
  RuleSet rs;
  rs.enabled = {rule::op_linearity, rule::remark35, rule::psi_expand,
                rule::sharp_expand, rule::musical_scalar,
                rule::lie_vector_scalar, rule::lie_leibniz};
  return rs;
}

namespace {

struct Rewriter {
  const RuleSet& rs;
  Trace* trace;
  bool wqp;

  void record(const char* rule, std::string before, std::string after) {
    if (trace) trace->record(rule, std::move(before), std::move(after));
  }

  static bool is_symbol(const Atom& a, int id) {
    return a.is_symbol() && a.symbol == id;
  }

  static bool monic_single(const Expr& e) {
    return e.terms.size() == 1;
  }

  // --- term-kill rules ---------------------------------------------------

  bool term_odd_nilpotent(const Term& t) const {
    for (size_t i = 0; i + 1 < t.factors.size(); ++i)
      if (t.factors[i].odd(wqp) &&
          compare(t.factors[i], t.factors[i + 1]) == 0)
        return true;
    return false;
  }

  bool term_ideal_monomial(const Term& t) const {
    int psiN = 0, psiP = 0, xiN = 0;
    for (const auto& a : t.factors) {
      if (is_symbol(a, sym::psiN)) ++psiN;
      if (is_symbol(a, sym::psiP)) ++psiP;
      if (is_symbol(a, sym::xiN)) ++xiN;
    }
    if (psiN + psiP >= 2) return true;          // psi.psi = 0
    if ((psiN || psiP) && xiN) return true;     // psi.xi = 0
    return false;
  }

  bool term_psi_sharp_xi(const Term& t) const {
    bool has_xi = false, has_lie_psi_sharp = false;
    for (const auto& a : t.factors) {
      if (is_symbol(a, sym::xiN)) has_xi = true;
      if (!a.is_symbol() && a.op == Op::Lie && monic_single(a.args[0])) {
        const Term& v = a.args[0].terms[0];
        if (v.factors.size() == 1 && !v.factors[0].is_symbol() &&
            v.factors[0].op == Op::Sharp &&
            monic_single(v.factors[0].args[0])) {
          const Term& w = v.factors[0].args[0].terms[0];
          if (w.factors.size() == 1 && is_symbol(w.factors[0], sym::psiP))
            has_lie_psi_sharp = true;
        }
      }
    }
    return has_xi && has_lie_psi_sharp;
  }

  // --- atom rules: return the replacement expression ----------------------

  std::optional<std::pair<const char*, Expr>> try_atom(const Atom& a) const {
    if (a.is_symbol()) {
      if (rs.on(rule::psi_expand)) {
        if (a.symbol == sym::psiN)
          return std::make_pair(rule::psi_expand,
                                mul_keep(Expr::symbol(sym::chiN),
                                         Expr::symbol(sym::xiN), wqp));
        if (a.symbol == sym::psiP)
          return std::make_pair(rule::psi_expand,
                                mul_keep(Expr::symbol(sym::chiP),
                                         Expr::symbol(sym::xiN), wqp));
      }
      return std::nullopt;
    }

    // q2-axiom: Q(Q(g)) = 0 for the generators whose nilpotency the
    // bulk theory supplies.
    if (rs.on(rule::q2_axiom) && a.op == Op::QOp && monic_single(a.args[0])) {
      const Term& inner = a.args[0].terms[0];
      if (inner.factors.size() == 1 && !inner.factors[0].is_symbol() &&
          inner.factors[0].op == Op::QOp &&
          monic_single(inner.factors[0].args[0])) {
        const Term& g = inner.factors[0].args[0].terms[0];
        if (g.factors.size() == 1 && g.factors[0].is_symbol()) {
          int id = g.factors[0].symbol;
          if (id == sym::xiN || id == sym::xiP || id == sym::chiN ||
              id == sym::chiP || id == sym::h || id == sym::Pi)
            return std::make_pair(rule::q2_axiom, Expr::zero());
        }
      }
    }

    if (rs.on(rule::op_linearity)) {
      for (const auto& arg : a.args)
        if (arg.is_zero())
          return std::make_pair(rule::op_linearity, Expr::zero());
      bool needs = false;
      for (const auto& arg : a.args)
        if (arg.terms.size() > 1 || arg.terms[0].coeff != 1) needs = true;
      if (needs) {
        // Full multilinear expansion over all argument terms.
        std::vector<std::pair<Rat, std::vector<Expr>>> partial = {
            {Rat(1), {}}};
        for (const auto& arg : a.args) {
          std::vector<std::pair<Rat, std::vector<Expr>>> next;
          for (const auto& [c, picked] : partial)
            for (const auto& t : arg.terms) {
              auto item = picked;
              Term mono = t;
              Rat coeff = mono.coeff;
              mono.coeff = 1;
              Expr me;
              me.terms.push_back(mono);
              item.push_back(std::move(me));
              next.emplace_back(c * coeff, std::move(item));
            }
          partial = std::move(next);
        }
        Expr out;
        for (auto& [c, picked] : partial) {
          Expr one = Expr::atom(Atom{-1, a.op, picked});
          std::vector<Term> ts = one.terms;
          for (auto& t : ts) t.coeff *= c;
          out = canonicalize(
              [&] {
                auto acc = out.terms;
                acc.insert(acc.end(), ts.begin(), ts.end());
                return acc;
              }(),
              wqp, false);
        }
        return std::make_pair(rule::op_linearity, out);
      }
    }

    if (rs.on(rule::remark35) && a.op == Op::LieHalf) {
      const Expr& w = a.args[0];
      const Expr& f = a.args[1];
      Expr eta = Expr::atom(Atom{-1, Op::EtaSharp, {w}});
      Expr lie = Expr::atom(Atom{-1, Op::Lie, {eta, f}});
      Expr div = Expr::atom(Atom{-1, Op::Div, {eta}});
      Expr out = mul_keep(lie, Expr::symbol(sym::volh), wqp) +
                 mul_keep(mul_keep(f, div, wqp), Expr::symbol(sym::volh), wqp) *
                     Rat(1, 2);
      return std::make_pair(rule::remark35, out);
    }

    if (rs.on(rule::sharp_expand) && a.op == Op::Sharp &&
        monic_single(a.args[0])) {
      const Term& w = a.args[0].terms[0];
      if (w.factors.size() == 1) {
        // chi^sharp = vol_h . eta^sharp (Remark-3.5 parametrization).
        Expr eta = Expr::atom(Atom{-1, Op::EtaSharp, {a.args[0]}});
        return std::make_pair(rule::sharp_expand,
                              mul_keep(Expr::symbol(sym::volh), eta, wqp));
      }
    }

    if (rs.on(rule::musical_scalar) &&
        (a.op == Op::Sharp || a.op == Op::EtaSharp) &&
        monic_single(a.args[0])) {
      const Term& w = a.args[0].terms[0];
      if (w.factors.size() > 1) {
        Kind k = w.factors[0].kind();
        if (k == Kind::Scalar || k == Kind::Density) {
          Term lead{w.coeff, {w.factors[0]}};
          Term rest{1, {w.factors.begin() + 1, w.factors.end()}};
          Expr rest_e;
          rest_e.terms.push_back(rest);
          Expr inner = Expr::atom(Atom{-1, a.op, {rest_e}});
          Expr lead_e;
          lead_e.terms.push_back(lead);
          return std::make_pair(rule::musical_scalar,
                                mul_keep(lead_e, inner, wqp));
        }
      }
    }

    if (rs.on(rule::lie_vector_scalar) && a.op == Op::Lie &&
        monic_single(a.args[0]) && a.args[1].kind() == Kind::Scalar) {
      const Term& v = a.args[0].terms[0];
      if (v.factors.size() > 1) {
        Kind k = v.factors[0].kind();
        if (k == Kind::Scalar || k == Kind::Density) {
          Term lead{v.coeff, {v.factors[0]}};
          Term rest{1, {v.factors.begin() + 1, v.factors.end()}};
          // Composites such as L_{psiP^sharp} keep their written order
          // chi^sharp.xi; extracting the scalar moves it past the rest
          // of the slot, hence the Koszul sign.
          int rest_parity = 0;
          for (const auto& f : rest.factors) rest_parity += f.gdeg(wqp);
          if ((lead.factors[0].gdeg(wqp) & 1) && (rest_parity & 1))
            lead.coeff = -lead.coeff;
          Expr rest_e;
          rest_e.terms.push_back(rest);
          Expr inner = Expr::atom(Atom{-1, Op::Lie, {rest_e, a.args[1]}});
          Expr lead_e;
          lead_e.terms.push_back(lead);
          return std::make_pair(rule::lie_vector_scalar,
                                mul_keep(lead_e, inner, wqp));
        }
      }
    }

    if (rs.on(rule::lie_leibniz) && a.op == Op::Lie &&
        monic_single(a.args[1])) {
      const Term& t = a.args[1].terms[0];
      if (t.factors.size() >= 2) {
        Term lead{t.coeff, {t.factors[0]}};
        Term rest{1, {t.factors.begin() + 1, t.factors.end()}};
        Expr lead_e, rest_e;
        lead_e.terms.push_back(lead);
        rest_e.terms.push_back(rest);
        auto gv = a.args[0].gdeg(wqp);
        int sv = gv ? *gv : 0;
        int sa = lead.factors[0].gdeg(wqp);
        Rat sign = ((sv & 1) && (sa & 1)) ? -1 : 1;
        Expr la = Expr::atom(Atom{-1, Op::Lie, {a.args[0], lead_e}});
        Expr lr = Expr::atom(Atom{-1, Op::Lie, {a.args[0], rest_e}});
        Expr out = mul_keep(la, rest_e, wqp) +
                   mul_keep(lead_e, lr, wqp) * sign;
        return std::make_pair(rule::lie_leibniz, out);
      }
    }

    return std::nullopt;
  }

  // Depth-first search for the first rewrite site; returns the rewritten
  // whole expression.
  std::optional<Expr> rewrite_expr(const Expr& e) {
    for (size_t ti = 0; ti < e.terms.size(); ++ti) {
      const Term& t = e.terms[ti];
      const char* kill = nullptr;
      if (term_odd_nilpotent(t))
        kill = rule::odd_nilpotency;
      else if (rs.on(rule::ideal_monomial) && term_ideal_monomial(t))
        kill = rule::ideal_monomial;
      else if (rs.on(rule::psi_sharp_xi) && term_psi_sharp_xi(t))
        kill = rule::psi_sharp_xi;
      if (kill) {
        record(kill, t.str(), "0");
        Expr out;
        std::vector<Term> rest;
        for (size_t j = 0; j < e.terms.size(); ++j)
          if (j != ti) rest.push_back(e.terms[j]);
        return canonicalize(std::move(rest), wqp, false);
      }
    }
    for (size_t ti = 0; ti < e.terms.size(); ++ti) {
      const Term& t = e.terms[ti];
      for (size_t fi = 0; fi < t.factors.size(); ++fi) {
        const Atom& a = t.factors[fi];
        if (auto hit = try_atom(a)) {
          record(hit->first, a.str(), hit->second.str());
          return splice(e, ti, fi, hit->second);
        }
        // Recurse into operator arguments.
        if (!a.is_symbol()) {
          for (size_t ai = 0; ai < a.args.size(); ++ai) {
            if (auto sub = rewrite_expr(a.args[ai])) {
              Atom b = a;
              b.args[ai] = *sub;
              return splice(e, ti, fi, Expr::atom(std::move(b)));
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  Expr splice(const Expr& e, size_t ti, size_t fi,
              const Expr& replacement) const {
    std::vector<Term> out;
    for (size_t j = 0; j < e.terms.size(); ++j)
      if (j != ti) out.push_back(e.terms[j]);
    const Term& t = e.terms[ti];
    Term prefix{t.coeff, {t.factors.begin(), t.factors.begin() + fi}};
    Term suffix{1, {t.factors.begin() + fi + 1, t.factors.end()}};
    Expr pe, se;
    pe.terms.push_back(prefix);
    se.terms.push_back(suffix);
    Expr repl = mul_keep(mul_keep(pe, replacement, wqp), se, wqp);
    out.insert(out.end(), repl.terms.begin(), repl.terms.end());
    return canonicalize(std::move(out), wqp, false);
  }

  // Sum-level recombination: (L_V U) W' + U' (L_V W) -> L_V(U W), with
  // the matching coefficient pinned by expanding the candidate back.
  std::optional<Expr> try_recombine(const Expr& e) {
    if (!rs.on(rule::lie_recombine)) return std::nullopt;
    for (size_t i = 0; i < e.terms.size(); ++i)
      for (size_t j = 0; j < e.terms.size(); ++j) {
        if (i == j) continue;
        const Term& t1 = e.terms[i];
        const Term& t2 = e.terms[j];
        for (size_t a1 = 0; a1 < t1.factors.size(); ++a1) {
          const Atom& l1 = t1.factors[a1];
          if (l1.is_symbol() || l1.op != Op::Lie) continue;
          if (!monic_single(l1.args[1])) continue;
          for (size_t a2 = 0; a2 < t2.factors.size(); ++a2) {
            const Atom& l2 = t2.factors[a2];
            if (l2.is_symbol() || l2.op != Op::Lie) continue;
            if (!monic_single(l2.args[1])) continue;
            if (!(l1.args[0] == l2.args[0])) continue;
            auto rest_after_removal = [](const Term& t, size_t skip,
                                         const std::vector<Atom>& minus)
                -> std::optional<std::vector<Atom>> {
              std::vector<Atom> rest;
              for (size_t k = 0; k < t.factors.size(); ++k)
                if (k != skip) rest.push_back(t.factors[k]);
              for (const auto& m : minus) {
                auto it = std::find_if(rest.begin(), rest.end(),
                                       [&](const Atom& x) {
                                         return compare(x, m) == 0;
                                       });
                if (it == rest.end()) return std::nullopt;
                rest.erase(it);
              }
              return rest;
            };
            auto r1 = rest_after_removal(t1, a1, l2.args[1].terms[0].factors);
            auto r2 = rest_after_removal(t2, a2, l1.args[1].terms[0].factors);
            if (!r1 || !r2) continue;
            if (r1->size() != r2->size()) continue;
            bool same = true;
            for (size_t k = 0; k < r1->size(); ++k)
              if (compare((*r1)[k], (*r2)[k]) != 0) same = false;
            if (!same) continue;

            const Expr& U = l1.args[1];
            const Expr& W = l2.args[1];
            Expr combined = Expr::atom(
                Atom{-1, Op::Lie, {l1.args[0], mul_keep(U, W, wqp)}});
            Expr rest_e;
            rest_e.terms.push_back(Term{1, *r1});
            // Expand rest * L_V(U W) by Leibniz and match both terms.
            auto gv = l1.args[0].gdeg(wqp);
            auto gu = U.gdeg(wqp);
            Rat sign =
                ((gv && (*gv & 1)) && (gu && (*gu & 1))) ? -1 : 1;
            Expr lu = Expr::atom(Atom{-1, Op::Lie, {l1.args[0], U}});
            Expr lw = Expr::atom(Atom{-1, Op::Lie, {l1.args[0], W}});
            Expr expansion =
                mul_keep(rest_e, mul_keep(lu, W, wqp), wqp) +
                mul_keep(rest_e, mul_keep(U, lw, wqp), wqp) * sign;
            if (expansion.terms.size() != 2) continue;
            auto match = [&](const Term& t) -> std::optional<Rat> {
              for (const auto& f : expansion.terms) {
                if (f.factors.size() != t.factors.size()) continue;
                bool eq = true;
                for (size_t k = 0; k < f.factors.size(); ++k)
                  if (compare(f.factors[k], t.factors[k]) != 0) eq = false;
                if (eq) return t.coeff / f.coeff;
              }
              return std::nullopt;
            };
            auto lam1 = match(t1);
            auto lam2 = match(t2);
            if (!lam1 || !lam2 || *lam1 != *lam2) continue;

            Expr repl = mul_keep(rest_e, combined, wqp) * (*lam1);
            record(rule::lie_recombine,
                   t1.str() + "  +  " + t2.str(), repl.str());
            std::vector<Term> out;
            for (size_t k = 0; k < e.terms.size(); ++k)
              if (k != i && k != j) out.push_back(e.terms[k]);
            out.insert(out.end(), repl.terms.begin(), repl.terms.end());
            return canonicalize(std::move(out), wqp, false);
          }
        }
      }
    return std::nullopt;
  }
};

}  // namespace

Expr normalize(const Expr& e, const RuleSet& rules, Trace* trace) {
  Rewriter rw{rules, trace, rules.wrong_q_parity};
  Expr cur = canonicalize(e.terms, rules.wrong_q_parity, false);
  long long steps = 0;
  for (;;) {
    if (auto next = rw.rewrite_expr(cur)) {
      cur = std::move(*next);
    } else if (auto rec = rw.try_recombine(cur)) {
      cur = std::move(*rec);
    } else {
      break;
    }
    if (++steps > rules.budget)
      throw ConfigError("formal rewrite exceeded the step budget");
  }
  return canonicalize(cur.terms, rules.wrong_q_parity, true);
}

}  // namespace bfvlab::formal
