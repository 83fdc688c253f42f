#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfh/cochain.hpp"
#include "cfh/linalg.hpp"

namespace cfh {

// Exponent caps carving a finite-dimensional slice out of the cochain
// spaces: d_cap bounds the d-exponent, l_cap bounds the exponent of each
// l<k> separately.  The full spaces are infinite-dimensional over Q, so all
// matrix computations happen inside such slices.
struct TruncationPolicy {
  int d_cap = 0;
  int l_cap = 0;
  TruncationPolicy(int d, int l) : d_cap(d), l_cap(l) {
    if (d < 0 || l < 0) throw Error("TruncationPolicy: negative cap");
  }
};

// One basis vector of the capped degree-n space: supported on a single
// generator tuple, a single monomial d^a * l1^b1 * ... * l<n-1>^b<n-1>, and
// a single target generator.  Degree 0 uses the constant representatives,
// one per module generator.
struct BasisVector {
  std::vector<int> tuple;   // size n; empty for degree 0
  int d_exp = 0;            // always 0 for degree 0
  std::vector<int> l_exps;  // size max(0, n-1)
  int target = 0;           // module generator index
  std::string str() const;  // "(0,1) d^2*l1 -> 2"
};

// Deterministic basis of the capped space, ordered lexicographically by
// (tuple index, d exponent, l exponents, target generator).
class CochainBasis {
 public:
  CochainBasis(AlgebraPtr alg, BimodulePtr coeffs, int degree,
               TruncationPolicy policy);

  const AlgebraPtr& algebra() const { return alg_; }
  const BimodulePtr& coefficients() const { return coeffs_; }
  int degree() const { return degree_; }
  const TruncationPolicy& policy() const { return policy_; }
  int dimension() const { return (int)vectors_.size(); }
  const BasisVector& vector(int k) const { return vectors_[k]; }

  // The k-th basis vector as a concrete cochain.
  Cochain materialize(int k) const;
  // The cochain with the given coordinates (size = dimension()).
  Cochain combine(const std::vector<Rational>& coords) const;
  // Exact coordinates of phi in this basis.  Throws if phi lives over a
  // different complex, has the wrong degree, or carries any monomial
  // outside the caps — expansion never truncates silently.
  std::vector<Rational> expand(const Cochain& phi) const;

 private:
  int index_of(int tuple_index, int d_exp, const std::vector<int>& l_exps,
               int target) const;

  AlgebraPtr alg_;
  BimodulePtr coeffs_;
  int degree_;
  TruncationPolicy policy_;
  std::vector<BasisVector> vectors_;
};

// The differential restricted to a capped slice, as an exact matrix.  The
// codomain caps are the domain caps enlarged by the worst-case growth of a
// single application of d, computed from the structure tables (never
// hard-coded); each image is expanded exactly, and an image escaping the
// enlarged caps throws (it would mean the growth bound is wrong).
struct LinearMapMatrix {
  CochainBasis domain;
  CochainBasis codomain;
  Matrix matrix;  // codomain.dimension() rows x domain.dimension() columns
};

LinearMapMatrix differential_matrix(AlgebraPtr alg, BimodulePtr coeffs, int n,
                                    TruncationPolicy policy);

// Capped cohomology dimensions at degree n.  The kernel dimension is exact
// within the caps.  The coboundary dimension is a lower bound: the image of
// the degree-(n-1) slice with caps enlarged by `slack`, intersected with
// the capped degree-n slice.  Consequently hh_upper = z_dim - b_dim is a
// certified upper bound.  The whole ladder b_by_slack[0..slack] is computed
// and its monotonicity (non-decreasing, so hh non-increasing) is asserted.
struct CohomologyDims {
  int z_dim = 0;
  int b_dim = 0;
  int hh_upper = 0;
  std::vector<int> b_by_slack;
};

CohomologyDims cohomology_dims(AlgebraPtr alg, BimodulePtr coeffs, int n,
                               TruncationPolicy policy, int slack);

// Basis of the derivation space: the exact kernel of the degree-1
// differential with the given d-cap on coefficients.
std::vector<Cochain> derivations(AlgebraPtr alg, BimodulePtr coeffs,
                                 int d_cap);
// Basis of the inner derivations: the image of the degree-0 differential.
// Every returned cochain is re-checked to be a derivation (the containment
// Inn within Der is asserted directly at the cochain level).
std::vector<Cochain> inner_derivations(AlgebraPtr alg, BimodulePtr coeffs);

// Search for psi with d(psi) = phi, allowing the preimage caps to exceed
// `policy` by `slack`.  phi must lie within `policy` (checked exactly).
// A returned witness is verified by direct re-evaluation of d(psi) == phi,
// independently of the matrix path.  nullopt means "not found at this
// slack" — never a definitive negative.
std::optional<Cochain> coboundary_witness(const Cochain& phi,
                                          TruncationPolicy policy, int slack);

}  // namespace cfh
