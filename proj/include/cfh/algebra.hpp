#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cfh/poly.hpp"
#include "cfh/report.hpp"

namespace cfh {

// Coordinate vector over a free finite-rank module: entry k is the
// coefficient polynomial of generator k.  Plain elements use only d;
// intermediate values may carry spectator l<k>.
class PolyVector {
 public:
  PolyVector() = default;
  explicit PolyVector(int rank) : entries_(rank) {}
  static PolyVector unit(int rank, int k);

  int rank() const { return (int)entries_.size(); }
  Poly& operator[](int k) { return entries_[k]; }
  const Poly& operator[](int k) const { return entries_[k]; }

  bool is_zero() const;
  PolyVector operator-() const;
  PolyVector operator+(const PolyVector& o) const;
  PolyVector operator-(const PolyVector& o) const;
  PolyVector operator*(const Poly& p) const;
  PolyVector& operator+=(const PolyVector& o);
  bool operator==(const PolyVector&) const = default;

  PolyVector substitute(Var v, const Poly& r) const;
  PolyVector substitute_all(const std::map<Var, Poly>& subs) const;
  PolyVector rename(const std::map<Var, Var>& names) const;
  bool uses(Var v) const;

  std::vector<std::string> str_entries() const;
  std::string str() const;  // ["p0", "p1", ...]

 private:
  std::vector<Poly> entries_;
};

// Free finite-rank conformal algebra datum.  prod(i, j) is the value of
// generator i producted with generator j: a PolyVector whose entries live in
// Q[d, l1], with l1 standing for the product parameter.
class ConformalAlgebra {
 public:
  ConformalAlgebra(int rank, std::vector<std::vector<PolyVector>> table);

  int rank() const { return rank_; }
  const PolyVector& prod(int i, int j) const { return table_[i][j]; }
  // Largest exponent of v over all table entries (cap growth bookkeeping).
  int max_table_degree(Var v) const;

 private:
  int rank_;
  std::vector<std::vector<PolyVector>> table_;
};

using AlgebraPtr = std::shared_ptr<const ConformalAlgebra>;

// Conformal bimodule over a fixed algebra; left(i, j) is algebra generator i
// acting on module generator j, right(j, i) is module generator j acted on
// from the right by algebra generator i.  Same l1 convention as prod.
class ConformalBimodule {
 public:
  ConformalBimodule(AlgebraPtr alg, int rank,
                    std::vector<std::vector<PolyVector>> left,
                    std::vector<std::vector<PolyVector>> right);

  const AlgebraPtr& algebra() const { return alg_; }
  int rank() const { return rank_; }
  const PolyVector& left(int i, int j) const { return left_[i][j]; }
  const PolyVector& right(int j, int i) const { return right_[j][i]; }
  int max_table_degree(Var v) const;

 private:
  AlgebraPtr alg_;
  int rank_;
  std::vector<std::vector<PolyVector>> left_, right_;
};

using BimodulePtr = std::shared_ptr<const ConformalBimodule>;

// x product y at parameter nu, extended bilinearly with the sesquilinear
// substitution rules: the left factor's d becomes -nu, the right factor's d
// becomes d + nu, the table parameter l1 becomes nu.  Spectator variables in
// x and y pass through untouched; composite nu may legitimately share
// variables with them (e.g. the l1+l2 of the associativity axiom).  nu must
// not mention d, and a bare-variable nu that already occurs in x or y is
// rejected as ambiguous.
PolyVector lambda_product(const ConformalAlgebra& alg, const PolyVector& x,
                          const PolyVector& y, const Poly& nu);
PolyVector left_action(const ConformalBimodule& mod, const PolyVector& a,
                       const PolyVector& v, const Poly& nu);
PolyVector right_action(const ConformalBimodule& mod, const PolyVector& v,
                        const PolyVector& a, const Poly& nu);

// (a (x)_l1 b) (x)_{l1+l2} c == a (x)_l1 (b (x)_l2 c) over all generator
// triples; first failing triple (row-major) becomes the witness.
Report check_associativity(const ConformalAlgebra& alg);
// The three bimodule axioms over all applicable generator triples.
Report check_bimodule(const ConformalBimodule& mod);

// Current-type algebra: generators multiply by the given structure
// constants, independent of the parameter.  consts[i][j][k] is the
// coefficient of generator k in (generator i) * (generator j).  The table is
// assembled unchecked; run check_associativity to validate it.
AlgebraPtr cur(const std::vector<std::vector<std::vector<Rational>>>& consts);

// The algebra acting on itself by its own product.
BimodulePtr regular_bimodule(AlgebraPtr alg);
// Both actions identically zero (always a valid bimodule).
BimodulePtr zero_bimodule(AlgebraPtr alg, int rank);

}  // namespace cfh
