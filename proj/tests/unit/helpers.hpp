#pragma once

#include <random>
#include <vector>

#include "cfh/algebra.hpp"

namespace cfh::testing {

// Rank-1 algebra with e (x)_l e = e (the current algebra on Q).
inline AlgebraPtr make_e1() {
  return cur({{{make_rational(1)}}});
}

// Current algebra on Q x Q: two orthogonal idempotents.
inline AlgebraPtr make_qxq() {
  std::vector<std::vector<std::vector<Rational>>> c(
      2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2)));
  c[0][0][0] = 1;
  c[1][1][1] = 1;
  return cur(c);
}

// Current algebra on the dual numbers Q[x]/(x^2): generators 1, x.
inline AlgebraPtr make_dual() {
  std::vector<std::vector<std::vector<Rational>>> c(
      2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2)));
  c[0][0][0] = 1;  // 1*1 = 1
  c[0][1][1] = 1;  // 1*x = x
  c[1][0][1] = 1;  // x*1 = x
  return cur(c);
}

// Current algebra on 2x2 matrix units; index of e_{ij} is 2*i + j.
inline AlgebraPtr make_m2() {
  auto idx = [](int i, int j) { return 2 * i + j; };
  std::vector<std::vector<std::vector<Rational>>> c(
      4, std::vector<std::vector<Rational>>(4, std::vector<Rational>(4)));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          if (j == k) c[idx(i, j)][idx(k, l)][idx(i, l)] = 1;
  return cur(c);
}

// Deterministic small coefficient in {-2,...,2} from raw engine output.
inline Rational small_coeff(std::mt19937_64& rng) {
  return make_rational((long)(rng() % 5) - 2);
}

// Random polynomial in d alone, degree <= max_deg.
inline Poly random_del_poly(std::mt19937_64& rng, int max_deg) {
  Poly p;
  for (int e = 0; e <= max_deg; ++e)
    p += Poly(small_coeff(rng)) * pow(Poly::del(), e);
  return p;
}

// Random element (coefficients in d only) of a rank-r module.
inline PolyVector random_element(std::mt19937_64& rng, int rank, int max_deg) {
  PolyVector v(rank);
  for (int k = 0; k < rank; ++k) v[k] = random_del_poly(rng, max_deg);
  return v;
}

}  // namespace cfh::testing
