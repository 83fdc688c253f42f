#pragma once

#include <cstdint>
#include <vector>

#include "cfh/cochain.hpp"

namespace cfh {

// A split extension: the direct sum of a base algebra and a bimodule over
// it, multiplied blockwise — base times base through the base product,
// base times fiber through the module actions, fiber times fiber through
// an explicit fiber product table (possibly zero).  Generators 0..rA-1 of
// the total algebra are the base block, rA..rA+rM-1 the fiber block.
//
// The assembled total algebra is never trusted: its associativity verdict
// is computed on construction and carried in `associativity` (an
// incompatible fiber product shows up there with a witness, not as UB).
struct SplitExtension {
  AlgebraPtr base;
  BimodulePtr fiber;
  AlgebraPtr total;
  Report associativity;

  // Whether the canonical section a -> (a, 0) is an algebra morphism, i.e.
  // whether base-times-base products have no fiber component.  True for
  // every plain split extension; false for the extension of a nonzero
  // 2-cocycle.  The intertwining checks below require it.
  bool split_section = true;

  int base_rank() const { return base->rank(); }
  int fiber_rank() const { return fiber->rank(); }

  // The exact-sequence maps, as coordinate block operations.
  PolyVector project_base(const PolyVector& x) const;   // total -> base
  PolyVector embed_base(const PolyVector& a) const;     // base -> total
  PolyVector include_fiber(const PolyVector& u) const;  // fiber -> total
};

// Assemble the split extension with the given fiber product table
// (fiber_product[i][j] = value of fiber generator i times fiber generator
// j, entries over the fiber in the same d/l1 convention as a product
// table).  The fiber bimodule must satisfy the bimodule axioms; the fiber
// product is arbitrary and only judged through the associativity verdict.
SplitExtension split_extension(
    AlgebraPtr base, BimodulePtr fiber,
    const std::vector<std::vector<PolyVector>>& fiber_product);

// Split extension with the zero fiber product.  Always associative.
SplitExtension trivial_extension(AlgebraPtr base, BimodulePtr fiber);

// The projection of a total-algebra-valued cochain to a base-valued one:
// evaluate on base tuples embedded into the total algebra, then project
// the value onto the base block.  Degree 0 projects the constant class.
Cochain pullback_phi(const SplitExtension& ext, const Cochain& phi);

// The projection intertwines the differentials of the two complexes: for
// random cochains of degrees 0..2 over the total algebra,
//   differential(pullback(phi)) == pullback(differential(phi)).
// Requires an associative extension whose section is an algebra morphism
// (split_section): with a nonzero cocycle in the base-times-base block the
// statement is genuinely false, so the check refuses to run.
Report check_projection_chain_map(const SplitExtension& ext, std::uint64_t seed,
                     int trials, int d_cap = 2, int l_cap = 1);

// The projection is multiplicative for the cup product at the cochain
// level: cup(pullback(f), pullback(g)) == pullback(cup(f, g)) for random
// f, g of degrees 0..2 (both degree-0 branches included).  Requires an
// associative extension with a multiplicative section, like check_projection_chain_map.
Report check_ring_morphism(const SplitExtension& ext, std::uint64_t seed,
                           int trials, int d_cap = 2, int l_cap = 1);

// The projection is multiplicative on elements: for random x, y in the
// total module, project(x (x)_l y) == project(x) (x)_l project(y).  This
// holds for every extension, split section or not, because the fiber is an
// ideal; it is the meaningful morphism check for abelian extensions of
// nonzero cocycles.  Requires an associative extension.
Report check_projection_morphism(const SplitExtension& ext,
                                 std::uint64_t seed, int trials);

// The abelian-extension constructor: total product
//   (a,u) x (b,v) = (a x b, a|>v + u<|b + phi(a,b))
// with zero fiber product.  The associativity verdict of the assembled
// algebra must reproduce the cocycle condition d(phi) == 0; the two are
// computed independently, compared, and a disagreement throws (it would
// mean one of the two computations is wrong).  The verdict is returned in
// `associativity`.
SplitExtension extension_from_2cocycle(AlgebraPtr base, BimodulePtr fiber,
                                       const Cochain& phi);

}  // namespace cfh
