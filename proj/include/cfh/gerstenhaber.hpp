#pragma once

#include "cfh/cochain.hpp"

namespace cfh {

// The multiplication itself as an algebra-valued 2-cochain.
Cochain rho_cochain(AlgebraPtr alg, BimodulePtr coeffs);

// Slot insertion, degree-checked alias of graft (1 <= i <= deg f).
Cochain circ_i(const Cochain& f, const Cochain& g, int i);

// Pre-Lie composition: for degrees m, n >= 1 the alternating sum of the
// insertions, sign (-1)^{(n-1)(i-1)} on slot i.  Degree-0 right operand
// follows the constant-insertion formula (parameter literally 0 at interior
// slots, the d := -d substitution at the last); degree-0 left operand is
// zero by definition.
Cochain bullet(const Cochain& f, const Cochain& g);

// Graded bracket [f, g] = f bullet g - (-1)^{(m-1)(n-1)} g bullet f.
Cochain bracket(const Cochain& f, const Cochain& g);

// Cup product: f's value producted with g's value at nu = l1+...+lm.
// Degree-0 branches: left operand constant multiplies at parameter 0; right
// operand constant multiplies at a fresh parameter that is then set to -d.
Cochain cup(const Cochain& f, const Cochain& g);

// The correction cochain whose coboundary measures the failure of bullet to
// be a right derivation of cup: the double insertion sum over slots
// i in [1, p-1] and j in [m+i, m+p-1] with sign
// (-1)^{(m-1)(i-1)+(n-1)(j-1)}.  Requires deg h = p >= 2 and m, n >= 1.
Cochain correction_H(const Cochain& f, const Cochain& g, const Cochain& h);

// ------------------------------------------------------------------------
// Identity checkers.  All equalities are exact; a failure carries the first
// nonzero difference as witness.  Indices (i, j) of the pre-Lie relations
// are 0-based slot offsets (the composition-system convention); everything
// else uses cochain degrees.

// (f o_i g) o_j h against the two composition-system regimes:
// j in [0, i-1]:      equals (f o_j h) o_{i+ph} g   (ph = deg h - 1)
// j in [i, i+ng]:     equals f o_i (g o_{j-i} h)    (ng = deg g - 1)
Report check_pre_lie_system(const Cochain& f, const Cochain& g,
                            const Cochain& h, int i, int j);
// All (i, j) legal for the degrees of f, g, h.
std::vector<std::pair<int, int>> pre_lie_legal_pairs(int deg_f, int deg_g,
                                                     int deg_h);

// Graded right-symmetry of bullet (degrees >= 1).
Report check_right_symmetry(const Cochain& f, const Cochain& g,
                            const Cochain& h);
// [f,g] = -(-1)^{(m-1)(n-1)}[g,f].
Report check_antisymmetry(const Cochain& f, const Cochain& g);
// [f,[g,h]] = [[f,g],h] + (-1)^{(m-1)(n-1)}[g,[f,h]], degree 0 included.
Report check_jacobi(const Cochain& f, const Cochain& g, const Cochain& h);
// d(f) = (-1)^{m+1}[rho, f]; cross-validates graft, d and the signs at once.
Report check_d_via_bracket(const Cochain& f);
// d([f,g]) = (-1)^{n+1}[d(f), g] + [f, d(g)]; degree 0 allowed on either side.
Report check_bracket_leibniz(const Cochain& f, const Cochain& g);
// d(f cup g) = d(f) cup g + (-1)^m f cup d(g).
Report check_cup_leibniz(const Cochain& f, const Cochain& g);
// (f cup g) cup h = f cup (g cup h), all degrees >= 0.
Report check_cup_associativity(const Cochain& f, const Cochain& g,
                               const Cochain& h);
// f bullet d(g) + (-1)^{n-1} d(f) bullet g - d(f bullet g)
//   = (-1)^{n-1}(g cup f - (-1)^{mn} f cup g);  degrees >= 1.
// Commutativity of cup holds only up to this exhibited homotopy; the
// checker asserts the identity itself, never plain commutativity.
Report check_homotopy(const Cochain& f, const Cochain& g);
// (f cup g) bullet h = (f bullet h) cup g + (-1)^{m(p-1)} f cup (g bullet h).
Report check_cup_bullet_right(const Cochain& f, const Cochain& g,
                              const Cochain& h);
// d(correction_H(f,g,h)) =
//   (-1)^{(m-1)n}(h bullet (f cup g) - (-1)^{n(p-1)}(h bullet f) cup g
//                 - f cup (h bullet g));  f, g cocycles, p >= 2.
Report check_correction_coboundary(const Cochain& f, const Cochain& g,
                                   const Cochain& h);
// [f cup g, h] - [f,h] cup g - (-1)^{m(p-1)} f cup [g,h] equals
// epsilon * d(correction_H) for a sign epsilon determined empirically and
// recorded in the report; f, g cocycles, p >= 2.
Report check_graded_leibniz_mod_exact(const Cochain& f, const Cochain& g,
                                      const Cochain& h);
// The same left-hand side in the regimes where it must vanish outright:
// some operand of degree 0, or p <= 1.  Caller contract (the checker only
// asserts LHS == 0): with p = 1 the outer operand must be a derivation and
// f, g may be arbitrary; a degree-0 first or second operand must be a
// central class (zero coboundary) with the degree >= 1 operands cocycles;
// a degree-0 third operand needs no hypotheses at all.
Report check_graded_leibniz_degenerate(const Cochain& f, const Cochain& g,
                                       const Cochain& h);
// d((h after f at slot i) after g at slot j) expanded into the three
// boundary groups H + H' + H''; f, g cocycles, i in [1, p-1],
// j in [m+i, m+p-1] (degree indexing).
Report check_insertion_expansion(const Cochain& h, const Cochain& f,
                                 const Cochain& g, int i, int j);
// bracket(rho, rho) == 0, i.e. associativity in Maurer-Cartan form.
Report check_maurer_cartan(AlgebraPtr alg);

// Cocycles for the checks that need them: the translation derivation,
// inner coboundaries, rho, coboundaries of seeded cochains, cup products.
// Every member is validated (differential vanishes) before being returned.
struct CocyclePool {
  std::vector<Cochain> degree1, degree2, degree3;
};
CocyclePool build_cocycle_pool(AlgebraPtr alg, std::uint64_t seed);

// The full suite on seeded random cochains over one algebra: one aggregated
// report per identity family, in first-use order, carrying the first failure
// witness if any.  On a non-associative table only the families that are
// combinatorial consequences of sesquilinearity run; families that
// presuppose the Maurer-Cartan equation are omitted from the result.
std::vector<Report> check_identities(AlgebraPtr alg, std::uint64_t seed,
                                     int trials, int d_cap, int l_cap);

}  // namespace cfh
