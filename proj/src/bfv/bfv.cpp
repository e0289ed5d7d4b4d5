#include "bfv/bfv.hpp"

#include <algorithm>
#include <functional>

namespace bfvlab::bfv {

using graded::Monomial;

namespace {

using PairTable = BFVModel::PairTable;

PairTable make_table(const BFVModel& m) {
  PairTable t;
  int sz = m.algebra()->size();
  t.partner.assign(sz, -1);
  t.value.assign(sz, 0);
  t.is_cb.assign(sz, false);
  for (int i = 0; i < m.pairs(); ++i) {
    t.partner[m.x(i)] = m.p(i);
    t.value[m.x(i)] = 1;
    t.partner[m.p(i)] = m.x(i);
    t.value[m.p(i)] = -1;
  }
  for (int i = 0; i < m.constraints(); ++i) {
    t.partner[m.c(i)] = m.b(i);
    t.value[m.c(i)] = 1;
    t.is_cb[m.c(i)] = true;
    t.partner[m.b(i)] = m.c(i);
    t.value[m.b(i)] = 1;  // {b_i, c^i} = -(-1)^{|b||c|} {c^i, b_i} = +1
    t.is_cb[m.b(i)] = true;
  }
  return t;
}

// Recursive biderivation extension of the generator pairing table:
//   {g, g' rest} = {g,g'} rest + (-1)^{|g||g'|} g' {g, rest}
//   {g restA, b} = g {restA, b} + (-1)^{|restA||b|} {g, b} restA
struct BracketEngine {
  const AlgebraPtr& alg;
  const PairTable& table;
  PairMask mask;

  bool pair_enabled(int g) const {
    if (table.partner[g] < 0) return false;
    bool cb = table.is_cb[g];
    int m = static_cast<int>(mask);
    return cb ? (m & 2) : (m & 1);
  }

  static void split_first(const Monomial& m, int& g, Monomial& rest) {
    auto fs = m.factors();
    g = fs[0].first;
    rest = Monomial{};
    if (fs[0].second > 1) rest.push(g, fs[0].second - 1);
    for (size_t i = 1; i < fs.size(); ++i) rest.push(fs[i].first, fs[i].second);
  }

  Poly mono_bracket(const Monomial& a, const Monomial& b) const {
    if (a.empty() || b.empty()) return Poly::zero(alg);
    if (a.total_exponent() == 1) {
      int g = a.factors()[0].first;
      int g2;
      Monomial rest;
      split_first(b, g2, rest);
      Poly out = Poly::zero(alg);
      if (pair_enabled(g) && table.partner[g] == g2)
        out = out + Poly::monomial(alg, rest, table.value[g]);
      if (!rest.empty()) {
        Poly inner = mono_bracket(a, rest);
        if (!inner.is_zero()) {
          Rat s = (alg->gen(g).odd() && alg->gen(g2).odd()) ? -1 : 1;
          out = out + Poly::generator(alg, g2) * inner * s;
        }
      }
      return out;
    }
    int g;
    Monomial rest;
    split_first(a, g, rest);
    Monomial unit;
    unit.push(g, 1);
    Poly out = Poly::generator(alg, g) * mono_bracket(rest, b);
    Poly gb = mono_bracket(unit, b);
    if (!gb.is_zero()) {
      Rat s = (rest.odd(*alg) && b.odd(*alg)) ? -1 : 1;
      out = out + gb * Poly::monomial(alg, rest, s);
    }
    return out;
  }
};

}  // namespace

BFVModel BFVModel::make(
    int n_pairs, std::vector<std::string> constraint_exprs,
    std::vector<std::tuple<int, int, int, std::string>> structure_entries) {
  BFVModel mod;
  mod.n_ = n_pairs;
  mod.m_ = static_cast<int>(constraint_exprs.size());
  std::vector<std::pair<std::string, int>> gens;
  for (int i = 1; i <= n_pairs; ++i) gens.emplace_back("x" + std::to_string(i), 0);
  for (int i = 1; i <= n_pairs; ++i) gens.emplace_back("p" + std::to_string(i), 0);
  for (int i = 1; i <= mod.m_; ++i) gens.emplace_back("c" + std::to_string(i), 1);
  for (int i = 1; i <= mod.m_; ++i) gens.emplace_back("b" + std::to_string(i), -1);
  mod.alg_ = Algebra::make(std::move(gens));
  for (int i = 0; i < n_pairs; ++i) {
    mod.x_.push_back(i);
    mod.p_.push_back(n_pairs + i);
  }
  for (int i = 0; i < mod.m_; ++i) {
    mod.c_.push_back(2 * n_pairs + i);
    mod.b_.push_back(2 * n_pairs + mod.m_ + i);
  }
  for (const auto& e : constraint_exprs) {
    Poly h = graded::parse_poly(mod.alg_, e);
    auto d = h.homogeneous_degree();
    if (!d || *d != 0)
      throw ConfigError("constraint is not of degree 0: " + e);
    mod.H_.push_back(std::move(h));
  }
  mod.f_.assign(mod.m_, std::vector<std::vector<Poly>>(
                            mod.m_, std::vector<Poly>(mod.m_, Poly(mod.alg_))));
  for (auto& [i, j, k, expr] : structure_entries) {
    if (i < 1 || i > mod.m_ || j < 1 || j > mod.m_ || k < 1 || k > mod.m_)
      throw InputError("structure-function index out of range");
    Poly v = graded::parse_poly(mod.alg_, expr);
    mod.f_[i - 1][j - 1][k - 1] = v;
    mod.f_[j - 1][i - 1][k - 1] = -v;  // antisymmetry f_ij^k = -f_ji^k
  }
  mod.S_ = Poly(mod.alg_);
  mod.table_ = make_table(mod);
  return mod;
}


Poly BFVModel::bracket(const Poly& F, const Poly& G, PairMask mask) const {
  BracketEngine eng{alg_, table_, mask};
  Poly out(alg_);
  for (const auto& [ma, ca] : F.terms())
    for (const auto& [mb, cb] : G.terms())
      out = out + eng.mono_bracket(ma, mb) * (ca * cb);
  return out;
}

Poly BFVModel::b_part(const Poly& p, int k) const {
  return p.part_with_exponent_in(b_, k);
}

Derivation BFVModel::hamiltonian_derivation(const Poly& S) const {
  std::map<int, Poly> images;
  for (const auto& g : alg_->gens())
    images[g.id] = bracket(S, Poly::generator(alg_, g.id));
  auto d = S.homogeneous_degree();
  return Derivation(alg_, d ? *d : 1, std::move(images));
}

FirstClassReport verify_first_class(const BFVModel& model) {
  FirstClassReport rep;
  for (int i = 0; i < model.constraints(); ++i)
    for (int j = i + 1; j < model.constraints(); ++j) {
      Poly res = model.bracket(model.H(i), model.H(j), PairMask::XP);
      for (int k = 0; k < model.constraints(); ++k)
        res = res - model.f(i, j, k) * model.H(k);
      if (!res.is_zero())
        rep.failures.push_back({i + 1, j + 1, std::move(res)});
    }
  return rep;
}

void build_initial_charge(BFVModel& model) {
  auto fc = verify_first_class(model);
  if (!fc.ok())
    throw ConfigError("first-class check failed; cannot build a charge");
  const auto& alg = model.algebra();
  Poly S(alg);
  for (int i = 0; i < model.constraints(); ++i)
    S = S + Poly::generator(alg, model.c(i)) * model.H(i);
  for (int i = 0; i < model.constraints(); ++i)
    for (int j = 0; j < model.constraints(); ++j)
      for (int k = 0; k < model.constraints(); ++k) {
        const Poly& f = model.f(i, j, k);
        if (f.is_zero()) continue;
        // The factor is pinned by {S,S} = 0: with this bracket and
        // left derivatives the consistent normalization is -1/2.
        S = S + f * Poly::generator(alg, model.b(k)) *
                    Poly::generator(alg, model.c(i)) *
                    Poly::generator(alg, model.c(j)) * Rat(-1, 2);
      }
  model.set_charge(std::move(S));
}

std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> A,
                                             std::vector<Rat> rhs) {
  const size_t rows = A.size();
  const size_t cols = rows ? A[0].size() : 0;
  std::vector<int> pivot_col_of_row;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && A[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(A[sel], A[r]);
    std::swap(rhs[sel], rhs[r]);
    Rat inv = A[r][c];
    for (size_t cc = c; cc < cols; ++cc) A[r][cc] /= inv;
    rhs[r] /= inv;
    for (size_t rr = 0; rr < rows; ++rr) {
      if (rr == r || A[rr][c] == 0) continue;
      Rat factor = A[rr][c];
      for (size_t cc = c; cc < cols; ++cc) A[rr][cc] -= factor * A[r][cc];
      rhs[rr] -= factor * rhs[r];
    }
    pivot_col_of_row.push_back(static_cast<int>(c));
    ++r;
  }
  for (size_t rr = r; rr < rows; ++rr)
    if (rhs[rr] != 0) return std::nullopt;  // inconsistent
  std::vector<Rat> t(cols, 0);
  for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
    t[pivot_col_of_row[i]] = rhs[i];
  return t;
}

namespace {

// All monomials (as generator words) over `vars` of total degree <= max_deg.
void enumerate_monomials(const std::vector<int>& vars, int max_deg, size_t idx,
                         std::vector<int>& word,
                         std::vector<std::vector<int>>& out) {
  if (idx == vars.size()) {
    out.push_back(word);
    return;
  }
  int room = max_deg - static_cast<int>(word.size());
  for (int e = 0; e <= room; ++e) {
    for (int k = 0; k < e; ++k) word.push_back(vars[idx]);
    enumerate_monomials(vars, max_deg, idx + 1, word, out);
    for (int k = 0; k < e; ++k) word.pop_back();
  }
}

void combinations(const std::vector<int>& ids, int count, size_t start,
                  std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == count) {
    out.push_back(cur);
    return;
  }
  for (size_t i = start; i < ids.size(); ++i) {
    cur.push_back(ids[i]);
    combinations(ids, count, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MasterSolveResult solve_master_equation(BFVModel& model, int max_order,
                                        int degree_bound) {
  MasterSolveResult res;
  if (!model.has_charge()) {
    res.error = "no initial charge; run build_initial_charge first";
    return res;
  }
  const auto& alg = model.algebra();

  std::vector<int> xp_ids, c_ids, b_ids;
  for (int i = 0; i < model.pairs(); ++i) {
    xp_ids.push_back(model.x(i));
    xp_ids.push_back(model.p(i));
  }
  for (int i = 0; i < model.constraints(); ++i) {
    c_ids.push_back(model.c(i));
    b_ids.push_back(model.b(i));
  }

  if (degree_bound < 0) {
    int hmax = 0;
    for (int i = 0; i < model.constraints(); ++i)
      hmax = std::max(hmax, model.H(i).max_total_degree_in(xp_ids));
    degree_bound = 2 + hmax;
  }

  // Monomials in (x,p) up to the degree bound.
  std::vector<std::vector<int>> xp_words;
  {
    std::vector<int> w;
    enumerate_monomials(xp_ids, degree_bound, 0, w, xp_words);
  }

  Poly S = model.charge();
  const Poly S0 = model.b_part(S, 0);

  for (;;) {
    Poly T = model.bracket(S, S);
    if (T.is_zero()) {
      res.ok = true;
      res.order = S.max_total_degree_in(b_ids);
      res.S = S;
      model.set_charge(std::move(S));
      return res;
    }
    int r = 0;
    Poly Tr(alg);
    int tmax = T.max_total_degree_in(b_ids);
    for (; r <= tmax; ++r) {
      Tr = model.b_part(T, r);
      if (!Tr.is_zero()) break;
    }
    if (r + 1 > max_order) {
      res.error = "order budget exhausted with nonzero residual at b-degree " +
                  std::to_string(r);
      return res;
    }

    // Ansatz: b-degree r+1, c-degree r+2, (x,p)-degree <= bound.
    std::vector<std::vector<int>> b_combos, c_combos;
    {
      std::vector<int> cur;
      combinations(b_ids, r + 1, 0, cur, b_combos);
      combinations(c_ids, r + 2, 0, cur, c_combos);
    }
    std::vector<Monomial> ansatz;
    for (const auto& xw : xp_words)
      for (const auto& cw : c_combos)
        for (const auto& bw : b_combos) {
          std::vector<int> word = xw;
          word.insert(word.end(), cw.begin(), cw.end());
          word.insert(word.end(), bw.begin(), bw.end());
          int sign;
          bool killed;
          Monomial m = Monomial::from_word(*alg, word, sign, killed);
          if (!killed) ansatz.push_back(std::move(m));
        }
    if (ansatz.empty()) {
      res.error = "empty correction ansatz at b-degree " + std::to_string(r + 1);
      return res;
    }

    // delta(X) = CB-part of {S0, X}; require delta(X) = -1/2 Tr.
    std::map<Monomial, int> row_of;
    std::vector<std::vector<Rat>> cols;
    cols.reserve(ansatz.size());
    auto row = [&](const Monomial& m) {
      auto it = row_of.find(m);
      if (it != row_of.end()) return it->second;
      int idx = static_cast<int>(row_of.size());
      row_of.emplace(m, idx);
      return idx;
    };
    std::vector<std::map<int, Rat>> col_entries;
    for (const auto& m : ansatz) {
      Poly dm = model.bracket(S0, Poly::monomial(alg, m, 1), PairMask::CB);
      std::map<int, Rat> entries;
      for (const auto& [mm, cc] : dm.terms()) entries[row(mm)] = cc;
      col_entries.push_back(std::move(entries));
    }
    Poly target = Tr * Rat(-1, 2);
    std::map<int, Rat> rhs_entries;
    for (const auto& [mm, cc] : target.terms()) rhs_entries[row(mm)] = cc;

    size_t nrows = row_of.size();
    std::vector<std::vector<Rat>> A(nrows, std::vector<Rat>(ansatz.size(), 0));
    std::vector<Rat> rhs(nrows, 0);
    for (size_t j = 0; j < col_entries.size(); ++j)
      for (const auto& [i, v] : col_entries[j]) A[i][j] = v;
    for (const auto& [i, v] : rhs_entries) rhs[i] = v;

    auto t = solve_linear(std::move(A), std::move(rhs));
    if (!t) {
      res.error =
          "no order-" + std::to_string(r + 1) +
          " correction within the degree bound; constraints may be "
          "non-regular or the bound too small";
      return res;
    }
    Poly X(alg);
    for (size_t j = 0; j < ansatz.size(); ++j)
      if ((*t)[j] != 0) X.add_term(ansatz[j], (*t)[j]);
    S = S + X;
  }
}

CoisotropyReport check_coisotropy_identity(const BFVModel& model) {
  CoisotropyReport rep;
  const Poly S0 = model.b_part(model.charge(), 0);
  const Poly S1 = model.b_part(model.charge(), 1);
  rep.lhs = model.bracket(S0, S0, PairMask::XP);
  // With left derivatives and the {c^i, b_j} = +delta pairing, the
  // b-independent part of {S,S} = 0 reads
  //   {S0,S0}_0 + 2 (dS1/db_k)(dS0/dc^k) = 0,
  // so the identity carries a minus sign in this convention.
  Poly rhs(model.algebra());
  for (int k = 0; k < model.constraints(); ++k)
    rhs = rhs + S1.partial_left(model.b(k)) * S0.partial_left(model.c(k)) *
                    Rat(-2);
  rep.rhs = std::move(rhs);
  rep.residue = rep.lhs - rep.rhs;
  rep.ok = rep.residue.is_zero();
  return rep;
}

}  // namespace bfvlab::bfv
