#include "cfh/poly.hpp"

#include <algorithm>

namespace cfh {

Monomial::Monomial(Var v, int exp) {
  if (exp < 0) throw Error("Monomial: negative exponent");
  if (exp > 0) factors_.push_back({v, exp});
}

int Monomial::exponent(Var v) const {
  for (const auto& [w, e] : factors_)
    if (w == v) return e;
  return 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [w, e] : factors_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  auto a = factors_.begin(), b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first))
      r.factors_.push_back(*a++);
    else if (a == factors_.end() || b->first < a->first)
      r.factors_.push_back(*b++);
    else {
      r.factors_.push_back({a->first, a->second + b->second});
      ++a, ++b;
    }
  }
  return r;
}

Monomial Monomial::without(Var v) const {
  Monomial r;
  for (const auto& f : factors_)
    if (f.first != v) r.factors_.push_back(f);
  return r;
}

std::string Monomial::str() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += "*";
    s += v.str();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly::Poly(Var v) { terms_.emplace(Monomial(v), Rational(1)); }

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  Poly r;
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Poly operator*(const Rational& c, const Poly& p) { return p * c; }

Poly pow(const Poly& base, int exp) {
  if (exp < 0) throw Error("pow: negative exponent");
  Poly r(Rational(1));
  for (int i = 0; i < exp; ++i) r = r * base;
  return r;
}

Poly Poly::substitute(Var v, const Poly& r) const {
  Poly out;
  std::vector<Poly> powers = {Poly(Rational(1))};  // cache r^e
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    if (e == 0) {
      out.add_term(m, c);
      continue;
    }
    while ((int)powers.size() <= e) powers.push_back(powers.back() * r);
    Poly rest;
    rest.add_term(m.without(v), c);
    out += rest * powers[e];
  }
  return out;
}

Poly Poly::substitute_all(const std::map<Var, Poly>& subs) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Poly term;
    Monomial untouched;
    for (const auto& [v, e] : m.factors()) {
      if (!subs.count(v)) untouched = untouched * Monomial(v, e);
    }
    term.add_term(untouched, c);
    for (const auto& [v, e] : m.factors()) {
      auto it = subs.find(v);
      if (it != subs.end()) term = term * pow(it->second, e);
    }
    out += term;
  }
  return out;
}

Poly Poly::rename(const std::map<Var, Var>& names) const {
  // Injectivity over the variables that actually occur.
  std::set<Var> occurring = vars(), targets;
  for (Var v : occurring) {
    auto it = names.find(v);
    Var t = it == names.end() ? v : it->second;
    if (!targets.insert(t).second)
      throw Error("Poly::rename: non-injective renaming on " + t.str());
  }
  Poly out;
  for (const auto& [m, c] : terms_) {
    Monomial r;
    for (const auto& [v, e] : m.factors()) {
      auto it = names.find(v);
      r = r * Monomial(it == names.end() ? v : it->second, e);
    }
    out.add_term(r, c);
  }
  return out;
}

int Poly::max_degree(Var v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
  return d;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

bool Poly::uses(Var v) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent(v) > 0) return true;
  return false;
}

std::set<Var> Poly::vars() const {
  std::set<Var> s;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors()) s.insert(v);
  return s;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (s.empty()) {
      if (a < 0) {
        s += "-";
        a = -a;
      }
    } else {
      s += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    if (m.is_one())
      s += to_string(a);
    else if (a == 1)
      s += m.str();
    else
      s += to_string(a) + "*" + m.str();
  }
  return s;
}

}  // namespace cfh
