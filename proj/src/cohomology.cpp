#include "cfh/cohomology.hpp"

#include <algorithm>
#include <utility>

namespace cfh {

namespace {

// Caps after one application of the differential to a capped cochain.  A
// stored monomial d^a * prod l<j>^{b_j} passes through one action or product
// against a structure-table entry; substitutions replace d and the l<j> by
// signed sums of parameters (and, in the degree-0 case, by -d), so each
// variable's worst-case exponent is bounded by the total of the caps
// involved: the table's own degrees sd, sl plus the stored a and b.
TruncationPolicy enlarged(const ConformalAlgebra& alg,
                          const ConformalBimodule& coeffs,
                          TruncationPolicy in) {
  int sd = std::max(alg.max_table_degree(Var::del()),
                    coeffs.max_table_degree(Var::del()));
  int sl = std::max(alg.max_table_degree(Var::lam(1)),
                    coeffs.max_table_degree(Var::lam(1)));
  return TruncationPolicy(in.d_cap + sd + sl,
                          in.d_cap + in.l_cap + sd + sl);
}

// Row indices in `outer` whose basis vectors satisfy the tighter `inner`
// caps (the embedding of the small slice into the enlarged one), and the
// complementary rows.
void split_rows(const CochainBasis& outer, TruncationPolicy inner,
                std::vector<int>& within, std::vector<int>& outside) {
  for (int k = 0; k < outer.dimension(); ++k) {
    const BasisVector& v = outer.vector(k);
    bool ok = v.d_exp <= inner.d_cap;
    for (int b : v.l_exps) ok = ok && b <= inner.l_cap;
    (ok ? within : outside).push_back(k);
  }
}

}  // namespace

std::string BasisVector::str() const {
  std::string s = "(";
  for (size_t k = 0; k < tuple.size(); ++k)
    s += (k ? "," : "") + std::to_string(tuple[k]);
  s += ") ";
  Monomial m;
  if (d_exp > 0) m = m * Monomial(Var::del(), d_exp);
  for (size_t j = 0; j < l_exps.size(); ++j)
    if (l_exps[j] > 0) m = m * Monomial(Var::lam((int)j + 1), l_exps[j]);
  s += m.str();
  s += " -> " + std::to_string(target);
  return s;
}

CochainBasis::CochainBasis(AlgebraPtr alg, BimodulePtr coeffs, int degree,
                           TruncationPolicy policy)
    : alg_(std::move(alg)),
      coeffs_(std::move(coeffs)),
      degree_(degree),
      policy_(policy) {
  if (!alg_ || !coeffs_) throw Error("CochainBasis: null algebra or coefficients");
  if (coeffs_->algebra() != alg_)
    throw Error("CochainBasis: coefficients live over a different algebra");
  if (degree < 0) throw Error("CochainBasis: negative degree");

  const int rm = coeffs_->rank();
  if (degree == 0) {
    for (int t = 0; t < rm; ++t)
      vectors_.push_back(BasisVector{{}, 0, {}, t});
    return;
  }

  Cochain shape(alg_, coeffs_, degree);  // tuple enumeration only
  const int lam_count = degree - 1;
  for (int idx = 0; idx < shape.tuple_count(); ++idx) {
    std::vector<int> tuple = shape.tuple_at(idx);
    for (int a = 0; a <= policy.d_cap; ++a) {
      std::vector<int> b(lam_count, 0);
      for (;;) {
        for (int t = 0; t < rm; ++t)
          vectors_.push_back(BasisVector{tuple, a, b, t});
        int j = lam_count - 1;
        while (j >= 0 && b[j] == policy.l_cap) b[j--] = 0;
        if (j < 0) break;
        ++b[j];
      }
    }
  }
}

int CochainBasis::index_of(int tuple_index, int d_exp,
                           const std::vector<int>& l_exps, int target) const {
  int idx = tuple_index;
  idx = idx * (policy_.d_cap + 1) + d_exp;
  for (int b : l_exps) idx = idx * (policy_.l_cap + 1) + b;
  return idx * coeffs_->rank() + target;
}

Cochain CochainBasis::materialize(int k) const {
  std::vector<Rational> coords(dimension(), Rational(0));
  coords.at(k) = 1;
  return combine(coords);
}

Cochain CochainBasis::combine(const std::vector<Rational>& coords) const {
  if ((int)coords.size() != dimension())
    throw Error("CochainBasis::combine: coordinate count mismatch");
  Cochain out(alg_, coeffs_, degree_);

  if (degree_ == 0) {
    PolyVector v(coeffs_->rank());
    for (int k = 0; k < dimension(); ++k)
      if (coords[k] != 0) v[vectors_[k].target] += Poly(coords[k]);
    return Cochain::degree0(alg_, coeffs_, v);
  }

  // Accumulate per tuple, then store each tuple once.
  int per_tuple = dimension() / out.tuple_count();
  for (int idx = 0; idx < out.tuple_count(); ++idx) {
    PolyVector v(coeffs_->rank());
    bool any = false;
    for (int k = idx * per_tuple; k < (idx + 1) * per_tuple; ++k) {
      if (coords[k] == 0) continue;
      const BasisVector& bv = vectors_[k];
      Poly mono(coords[k]);
      if (bv.d_exp > 0) mono = mono * pow(Poly::del(), bv.d_exp);
      for (size_t j = 0; j < bv.l_exps.size(); ++j)
        if (bv.l_exps[j] > 0)
          mono = mono * pow(Poly::lam((int)j + 1), bv.l_exps[j]);
      v[bv.target] += mono;
      any = true;
    }
    if (any) out.set_value(out.tuple_at(idx), std::move(v));
  }
  return out;
}

std::vector<Rational> CochainBasis::expand(const Cochain& phi) const {
  if (phi.algebra() != alg_ || phi.coefficients() != coeffs_)
    throw Error("CochainBasis::expand: cochain over a different complex");
  if (phi.degree() != degree_)
    throw Error("CochainBasis::expand: degree mismatch");

  std::vector<Rational> coords(dimension(), Rational(0));
  const int lam_count = std::max(0, degree_ - 1);

  for (int idx = 0; idx < phi.tuple_count(); ++idx) {
    const PolyVector& v = phi.value(phi.tuple_at(idx));
    for (int t = 0; t < coeffs_->rank(); ++t) {
      for (const auto& [mono, c] : v[t].terms()) {
        int a = mono.exponent(Var::del());
        std::vector<int> b(lam_count, 0);
        for (int j = 1; j <= lam_count; ++j) b[j - 1] = mono.exponent(Var::lam(j));
        if (a > policy_.d_cap)
          throw Error("CochainBasis::expand: monomial " + mono.str() +
                      " exceeds d cap " + std::to_string(policy_.d_cap));
        for (int e : b)
          if (e > policy_.l_cap)
            throw Error("CochainBasis::expand: monomial " + mono.str() +
                        " exceeds l cap " + std::to_string(policy_.l_cap));
        coords[degree_ == 0 ? t : index_of(idx, a, b, t)] = c;
      }
    }
  }
  return coords;
}

LinearMapMatrix differential_matrix(AlgebraPtr alg, BimodulePtr coeffs, int n,
                                    TruncationPolicy policy) {
  CochainBasis domain(alg, coeffs, n, policy);
  CochainBasis codomain(alg, coeffs, n + 1, enlarged(*alg, *coeffs, policy));

  Matrix m(codomain.dimension(), domain.dimension());
  for (int j = 0; j < domain.dimension(); ++j) {
    // Exact by construction; expand() throws if the growth bound is wrong.
    std::vector<Rational> col = codomain.expand(differential(domain.materialize(j)));
    for (int i = 0; i < codomain.dimension(); ++i)
      if (col[i] != 0) m.at(i, j) = std::move(col[i]);
  }
  return LinearMapMatrix{std::move(domain), std::move(codomain), std::move(m)};
}

CohomologyDims cohomology_dims(AlgebraPtr alg, BimodulePtr coeffs, int n,
                               TruncationPolicy policy, int slack) {
  if (n < 0) throw Error("cohomology_dims: negative degree");
  if (slack < 0) throw Error("cohomology_dims: negative slack");

  CohomologyDims out;
  out.z_dim = (int)kernel_basis(differential_matrix(alg, coeffs, n, policy)
                                    .matrix)
                  .size();

  if (n == 0) {
    // Nothing below degree 0: the coboundary space is zero at every slack.
    out.b_by_slack.assign(slack + 1, 0);
  } else {
    for (int s = 0; s <= slack; ++s) {
      TruncationPolicy below(policy.d_cap + s, policy.l_cap + s);
      LinearMapMatrix dm = differential_matrix(alg, coeffs, n - 1, below);
      // dim(image ∩ capped slice) = rank(D) - rank(rows outside the slice):
      // the projection away from the slice has kernel exactly the slice.
      std::vector<int> within, outside;
      split_rows(dm.codomain, policy, within, outside);
      int b = rank(dm.matrix) - rank(dm.matrix.select_rows(outside));
      if (!out.b_by_slack.empty() && b < out.b_by_slack.back())
        throw Error("cohomology_dims: coboundary bound decreased with slack");
      out.b_by_slack.push_back(b);
    }
  }

  out.b_dim = out.b_by_slack.back();
  out.hh_upper = out.z_dim - out.b_dim;
  if (out.hh_upper < 0)
    throw Error("cohomology_dims: negative upper bound (image not in kernel)");
  return out;
}

std::vector<Cochain> derivations(AlgebraPtr alg, BimodulePtr coeffs,
                                 int d_cap) {
  LinearMapMatrix dm =
      differential_matrix(alg, coeffs, 1, TruncationPolicy(d_cap, 0));
  std::vector<Cochain> basis;
  for (const std::vector<Rational>& x : kernel_basis(dm.matrix))
    basis.push_back(dm.domain.combine(x));
  return basis;
}

std::vector<Cochain> inner_derivations(AlgebraPtr alg, BimodulePtr coeffs) {
  // Images of the constant classes, reduced to echelon form so the result
  // is a deterministic basis rather than a redundant spanning set.
  LinearMapMatrix d0 =
      differential_matrix(alg, coeffs, 0, TruncationPolicy(0, 0));
  Matrix rows(d0.matrix.cols(), d0.matrix.rows());
  for (int j = 0; j < d0.matrix.cols(); ++j)
    for (int i = 0; i < d0.matrix.rows(); ++i)
      rows.at(j, i) = d0.matrix.at(i, j);
  size_t dim = rref(rows).size();

  std::vector<Cochain> basis;
  for (size_t r = 0; r < dim; ++r) {
    std::vector<Rational> coords(rows.cols());
    for (int i = 0; i < rows.cols(); ++i) coords[i] = rows.at((int)r, i);
    Cochain c = d0.codomain.combine(coords);
    if (!differential(c).is_zero())
      throw Error("inner_derivations: image of d0 is not a derivation");
    basis.push_back(std::move(c));
  }
  return basis;
}

std::optional<Cochain> coboundary_witness(const Cochain& phi,
                                          TruncationPolicy policy,
                                          int slack) {
  if (phi.degree() < 1)
    throw Error("coboundary_witness: needs degree >= 1");
  if (slack < 0) throw Error("coboundary_witness: negative slack");

  TruncationPolicy below(policy.d_cap + slack, policy.l_cap + slack);
  LinearMapMatrix dm = differential_matrix(phi.algebra(), phi.coefficients(),
                                           phi.degree() - 1, below);
  // The codomain caps dominate `policy`, so a phi within policy expands
  // exactly; a phi outside policy is rejected by expand() below only if it
  // also escapes the enlarged caps, so check the declared caps first.
  CochainBasis declared(phi.algebra(), phi.coefficients(), phi.degree(),
                        policy);
  (void)declared.expand(phi);

  std::optional<std::vector<Rational>> x =
      solve(dm.matrix, dm.codomain.expand(phi));
  if (!x) return std::nullopt;
  Cochain psi = dm.domain.combine(*x);
  if (!(differential(psi) == phi))
    throw Error("coboundary_witness: solution fails re-evaluation");
  return psi;
}

}  // namespace cfh
