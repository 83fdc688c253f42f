#pragma once

#include <cstdint>
#include <span>

#include "cfh/algebra.hpp"

namespace cfh {

// Degree-n component of the cochain complex of a conformal algebra with
// coefficients in a bimodule.
//
// Storage: values on generator tuples.  A degree-n value (n >= 1) is a
// PolyVector over the coefficient module whose entries live in
// Q[d, l1..l(n-1)]: l<k> is the parameter attached to argument k; the last
// argument carries no explicit parameter (sesquilinearity pins it down).
// Degree 0 is the module modulo the image of d, stored as the canonical
// constant-coefficient representative.
class Cochain {
 public:
  // The zero cochain of the given degree.
  Cochain(AlgebraPtr alg, BimodulePtr coeffs, int degree);

  // Degree-1 identity map; requires algebra-valued coefficients.
  static Cochain identity(AlgebraPtr alg, BimodulePtr coeffs);
  // Degree-0 class of an arbitrary element (coefficients in d only):
  // projects onto the canonical constant representative.
  static Cochain degree0(AlgebraPtr alg, BimodulePtr coeffs,
                         const PolyVector& element);

  int degree() const { return degree_; }
  const AlgebraPtr& algebra() const { return alg_; }
  const BimodulePtr& coefficients() const { return coeffs_; }

  // Stored value on a generator tuple (empty tuple for degree 0).
  const PolyVector& value(std::span<const int> tuple) const;
  // Validates rank, index range, and the variable discipline above.
  void set_value(std::span<const int> tuple, PolyVector v);

  // Multilinear evaluation at PolyVector arguments over the algebra, with
  // explicit parameter polynomials for arguments 1..n-1.  Argument k's
  // coefficient p(d) enters as p(-params[k]) for k < n and as
  // p(d + params[1] + ... + params[n-1]) for k = n; the stored value's
  // formal l<j> becomes params[j] (simultaneous substitution).  Parameters
  // may be composite and may mention d (used by the degree-0 branches).
  PolyVector evaluate(std::span<const PolyVector> args,
                      std::span<const Poly> params) const;

  bool is_zero() const;
  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  Cochain operator*(const Rational& c) const;
  // Same ambient complex (pointer identity) and equal stored values.
  bool operator==(const Cochain&) const = default;

  // Tuple enumeration, row-major (first index most significant).
  int tuple_count() const { return (int)values_.size(); }
  std::vector<int> tuple_at(int index) const;

 private:
  void validate_value(const PolyVector& v) const;
  int index_of(std::span<const int> tuple) const;

  AlgebraPtr alg_;
  BimodulePtr coeffs_;
  int degree_ = 0;
  std::vector<PolyVector> values_;
};

// True when the coefficient tables coincide with the algebra's own product
// (the shape required by the composition operations).
bool is_regular(const ConformalBimodule& mod);

// Insert g into argument slot i (1-based, 1 <= i <= m) of f; both cochains
// algebra-valued, result degree m+n-1.  For a non-last slot the inserted
// value's d becomes minus the sum of the parameters it absorbs and f's later
// parameters shift; for the last slot the inserted value's d shifts by the
// sum of f's explicit parameters (the sesquilinear degenerate case).
Cochain graft(const Cochain& f, const Cochain& g, int slot);

// The complex differential, any bimodule coefficients.
Cochain differential(const Cochain& phi);

// Coboundary of an arbitrary module element (not necessarily the canonical
// representative); degree-1 result.  Used by the differential at degree 0
// and by the inner-derivation constructions.
Cochain element_coboundary(AlgebraPtr alg, BimodulePtr coeffs,
                           const PolyVector& element);

// d(d(phi)) == 0 with a witness tuple on failure; the witness notes whether
// the coefficient tables actually satisfy the bimodule axioms, since that
// precondition is exactly what a nonzero square flags.
Report d_squared_check(const Cochain& phi);

// Deterministic seeded cochain: every monomial d^a l1^b1 ... with a <= d_cap
// and each b <= l_cap gets a coefficient in {-2..2} drawn from the raw
// engine stream (platform-independent).
Cochain random_cochain(AlgebraPtr alg, BimodulePtr coeffs, int degree,
                       int d_cap, int l_cap, std::uint64_t seed);

}  // namespace cfh
