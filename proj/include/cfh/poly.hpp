#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cfh/rational.hpp"

namespace cfh {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Variable of the coefficient ring Q[d, l1, l2, ...].  Id 0 is the
// translation generator d; id k >= 1 is the spectral variable l<k>.
// The total order d < l1 < l2 < ... is the id order.
struct Var {
  std::int32_t id = 0;

  static constexpr Var del() { return Var{0}; }
  static Var lam(int k) {
    if (k < 1) throw Error("Var::lam: index must be >= 1");
    return Var{k};
  }
  bool is_del() const { return id == 0; }
  int lam_index() const { return id; }
  auto operator<=>(const Var&) const = default;
  std::string str() const { return is_del() ? "d" : "l" + std::to_string(id); }
};

// Product of variable powers; sparse, sorted by variable, exponents > 0.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(Var v, int exp = 1);

  bool is_one() const { return factors_.empty(); }
  int exponent(Var v) const;
  int total_degree() const;
  const std::vector<std::pair<Var, int>>& factors() const { return factors_; }

  Monomial operator*(const Monomial& o) const;
  // Monomial with variable v removed entirely.
  Monomial without(Var v) const;

  auto operator<=>(const Monomial&) const = default;
  std::string str() const;  // "d^2*l1"; "1" when empty

 private:
  std::vector<std::pair<Var, int>> factors_;
};

// Sparse exact polynomial over Q in d and the l<k>.  Canonical form: no
// explicitly stored zero coefficients, terms keyed by monomial order.
class Poly {
 public:
  Poly() = default;                      // zero
  Poly(int c) : Poly(Rational(c)) {}     // NOLINT: implicit constants are handy
  explicit Poly(const Rational& c);
  explicit Poly(Var v);

  static Poly variable(Var v) { return Poly(v); }
  static Poly del() { return Poly(Var::del()); }
  static Poly lam(int k) { return Poly(Var::lam(k)); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Coefficient of the constant monomial.
  Rational constant_term() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator*(const Rational& c) const;
  bool operator==(const Poly&) const = default;

  // p with v replaced by r, expanded.  Other variables pass through.
  Poly substitute(Var v, const Poly& r) const;
  // Simultaneous substitution (needed when replacements mention the
  // substituted variables themselves, e.g. permutations of the l<k>).
  Poly substitute_all(const std::map<Var, Poly>& subs) const;
  // Injective renaming of variables; throws if two occurring variables
  // collapse to the same target.
  Poly rename(const std::map<Var, Var>& names) const;

  int max_degree(Var v) const;
  int total_degree() const;
  bool uses(Var v) const;
  std::set<Var> vars() const;

  const std::map<Monomial, Rational>& terms() const { return terms_; }

  // Canonical rendering in the definition-file grammar, e.g.
  // "d^2 - 2*d*l1 + 1/2".  Zero renders as "0".
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

Poly operator*(const Rational& c, const Poly& p);
Poly pow(const Poly& base, int exp);

}  // namespace cfh
