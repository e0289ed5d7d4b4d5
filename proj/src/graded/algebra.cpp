#include "graded/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace bfvlab::graded {

std::shared_ptr<const Algebra> Algebra::make(
    std::vector<std::pair<std::string, int>> name_degree) {
  auto alg = std::make_shared<Algebra>();
  for (auto& [name, deg] : name_degree) {
    if (alg->by_name_.count(name))
      throw ConfigError("duplicate generator name: " + name);
    int id = static_cast<int>(alg->gens_.size());
    alg->gens_.push_back(Generator{id, name, deg});
    alg->by_name_[name] = id;
  }
  return alg;
}

std::shared_ptr<const Algebra> Algebra::extend(
    std::vector<std::pair<std::string, int>> name_degree) const {
  std::vector<std::pair<std::string, int>> all;
  for (const auto& g : gens_) all.emplace_back(g.name, g.degree);
  for (auto& nd : name_degree) all.push_back(std::move(nd));
  return make(std::move(all));
}

int Algebra::id_of(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw ConfigError("unknown generator: " + name);
  return it->second;
}

std::optional<int> Algebra::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

Monomial Monomial::from_word(const Algebra& alg, std::vector<int> word,
                             int& sign, bool& killed) {
  sign = 1;
  killed = false;
  // Insertion sort counting odd-odd transpositions.
  for (size_t i = 1; i < word.size(); ++i) {
    int v = word[i];
    size_t j = i;
    while (j > 0 && word[j - 1] > v) {
      if (alg.gen(word[j - 1]).odd() && alg.gen(v).odd()) sign = -sign;
      word[j] = word[j - 1];
      --j;
    }
    word[j] = v;
  }
  Monomial m;
  for (size_t i = 0; i < word.size();) {
    size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    int exp = static_cast<int>(j - i);
    if (alg.gen(word[i]).odd() && exp > 1) {
      killed = true;
      return Monomial{};
    }
    m.push(word[i], exp);
    i = j;
  }
  return m;
}

int Monomial::degree(const Algebra& alg) const {
  int d = 0;
  for (auto [g, e] : f_) d += alg.gen(g).degree * e;
  return d;
}

int Monomial::exponent_of(int gen) const {
  for (auto [g, e] : f_)
    if (g == gen) return e;
  return 0;
}

int Monomial::total_exponent() const {
  int n = 0;
  for (auto [g, e] : f_) n += e;
  return n;
}

std::optional<std::pair<Monomial, int>> Monomial::mul(const Algebra& alg,
                                                      const Monomial& a,
                                                      const Monomial& b) {
  Monomial out;
  int sign = 1;
  // Number of odd factors of `a` not yet emitted; each odd factor taken
  // from `b` crosses all of them.
  int odd_left_in_a = 0;
  for (auto [g, e] : a.f_)
    if (alg.gen(g).odd()) ++odd_left_in_a;

  size_t i = 0, j = 0;
  while (i < a.f_.size() || j < b.f_.size()) {
    bool take_a;
    if (i == a.f_.size())
      take_a = false;
    else if (j == b.f_.size())
      take_a = true;
    else if (a.f_[i].first == b.f_[j].first) {
      // Same generator from both sides.
      auto [g, ea] = a.f_[i];
      int eb = b.f_[j].second;
      if (alg.gen(g).odd()) return std::nullopt;  // odd squares to zero
      out.push(g, ea + eb);
      ++i;
      ++j;
      continue;
    } else
      take_a = a.f_[i].first < b.f_[j].first;

    if (take_a) {
      auto [g, e] = a.f_[i++];
      if (alg.gen(g).odd()) --odd_left_in_a;
      out.push(g, e);
    } else {
      auto [g, e] = b.f_[j++];
      if (alg.gen(g).odd() && (odd_left_in_a & 1)) sign = -sign;
      out.push(g, e);
    }
  }
  return std::make_pair(out, sign);
}

bool Monomial::divisible_by(const Monomial& pat) const {
  for (auto [g, e] : pat.f_)
    if (exponent_of(g) < e) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& pat) const {
  Monomial q;
  for (auto [g, e] : f_) {
    int r = e - pat.exponent_of(g);
    if (r > 0) q.push(g, r);
  }
  return q;
}

std::string Monomial::str(const Algebra& alg) const {
  if (f_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto [g, e] : f_) {
    if (!first) os << "*";
    first = false;
    os << alg.gen(g).name;
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

Poly Poly::constant(AlgebraPtr alg, const Rat& c) {
  Poly p(std::move(alg));
  if (c != 0) p.t_[Monomial{}] = c;
  return p;
}

Poly Poly::generator(AlgebraPtr alg, int gen) {
  Monomial m;
  m.push(gen, 1);
  return monomial(std::move(alg), m, 1);
}

Poly Poly::monomial(AlgebraPtr alg, const Monomial& m, const Rat& c) {
  Poly p(std::move(alg));
  if (c != 0) p.t_[m] = c;
  return p;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_[m] = c;
  } else {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

void Poly::check_same(const Poly& o) const {
  if (alg_ != o.alg_)
    throw ConfigError("operands belong to different generator sets");
}

Poly Poly::operator+(const Poly& o) const {
  check_same(o);
  Poly r = *this;
  for (const auto& [m, c] : o.t_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  check_same(o);
  Poly r = *this;
  for (const auto& [m, c] : o.t_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator-() const {
  Poly r(alg_);
  for (const auto& [m, c] : t_) r.t_[m] = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_same(o);
  Poly r(alg_);
  for (const auto& [ma, ca] : t_)
    for (const auto& [mb, cb] : o.t_) {
      auto prod = Monomial::mul(*alg_, ma, mb);
      if (!prod) continue;
      r.add_term(prod->first, ca * cb * prod->second);
    }
  return r;
}

Poly Poly::operator*(const Rat& c) const {
  Poly r(alg_);
  if (c == 0) return r;
  for (const auto& [m, k] : t_) r.t_[m] = k * c;
  return r;
}

bool Poly::operator==(const Poly& o) const { return t_ == o.t_; }

std::optional<int> Poly::homogeneous_degree() const {
  if (t_.empty()) return 0;
  int d = t_.begin()->first.degree(*alg_);
  for (const auto& [m, c] : t_)
    if (m.degree(*alg_) != d) return std::nullopt;
  return d;
}

Poly Poly::degree_part(int degree) const {
  Poly r(alg_);
  for (const auto& [m, c] : t_)
    if (m.degree(*alg_) == degree) r.t_[m] = c;
  return r;
}

Poly Poly::part_with_exponent_in(const std::vector<int>& gens,
                                 int count) const {
  Poly r(alg_);
  for (const auto& [m, c] : t_) {
    int n = 0;
    for (int g : gens) n += m.exponent_of(g);
    if (n == count) r.t_[m] = c;
  }
  return r;
}

int Poly::max_total_degree_in(const std::vector<int>& gens) const {
  int best = 0;
  for (const auto& [m, c] : t_) {
    int n = 0;
    for (int g : gens) n += m.exponent_of(g);
    best = std::max(best, n);
  }
  return best;
}

Poly Poly::substitute(const std::map<int, Poly>& images) const {
  for (const auto& [g, img] : images) {
    auto d = img.homogeneous_degree();
    if (!d || (!img.is_zero() && *d != alg_->gen(g).degree))
      throw ConfigError("image of " + alg_->gen(g).name +
                        " does not preserve degree");
  }
  Poly r(alg_);
  for (const auto& [m, c] : t_) {
    Poly acc = Poly::constant(alg_, c);
    for (auto [g, e] : m.factors()) {
      auto it = images.find(g);
      Poly base =
          (it != images.end()) ? it->second : Poly::generator(alg_, g);
      for (int k = 0; k < e; ++k) acc = acc * base;
    }
    r = r + acc;
  }
  return r;
}

Poly Poly::partial_left(int gen) const {
  Poly r(alg_);
  const bool g_odd = alg_->gen(gen).odd();
  for (const auto& [m, c] : t_) {
    int prefix_parity = 0;
    for (auto [g, e] : m.factors()) {
      if (g == gen) {
        Monomial rest;
        for (auto [g2, e2] : m.factors()) {
          int e3 = (g2 == gen) ? e2 - 1 : e2;
          if (e3 > 0) rest.push(g2, e3);
        }
        Rat coeff = c * e;
        if (g_odd && (prefix_parity & 1)) coeff = -coeff;
        r.add_term(rest, coeff);
        break;
      }
      if (alg_->gen(g).odd()) prefix_parity += e;
    }
  }
  return r;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (m.empty()) {
      os << a.str();
    } else {
      if (a != 1) os << a.str() << "*";
      os << m.str(*alg_);
    }
  }
  return os.str();
}

}  // namespace bfvlab::graded
