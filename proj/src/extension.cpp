#include "cfh/extension.hpp"

#include <random>
#include <utility>

#include "cfh/gerstenhaber.hpp"

namespace cfh {

namespace {

// Total product table from the four blocks; `cocycle` adds a fiber-block
// component to base-times-base products (null for plain split extensions).
SplitExtension assemble(AlgebraPtr base, BimodulePtr fiber,
                        const std::vector<std::vector<PolyVector>>& fprod,
                        const Cochain* cocycle) {
  if (!base || !fiber) throw Error("split_extension: null base or fiber");
  if (fiber->algebra() != base)
    throw Error("split_extension: fiber is a bimodule over a different algebra");
  const int rA = base->rank(), rM = fiber->rank(), r = rA + rM;

  if ((int)fprod.size() != rM)
    throw Error("split_extension: fiber product table has wrong shape");
  for (const auto& row : fprod) {
    if ((int)row.size() != rM)
      throw Error("split_extension: fiber product table has wrong shape");
    for (const PolyVector& v : row)
      if (v.rank() != rM)
        throw Error("split_extension: fiber product value has wrong rank");
  }
  if (!check_bimodule(*fiber).pass)
    throw Error("split_extension: fiber violates the bimodule axioms");

  auto widen = [&](const PolyVector& x, int offset) {
    PolyVector out(r);
    for (int k = 0; k < x.rank(); ++k) out[offset + k] = x[k];
    return out;
  };

  std::vector<std::vector<PolyVector>> table(r, std::vector<PolyVector>(r));
  for (int i = 0; i < rA; ++i)
    for (int j = 0; j < rA; ++j) {
      table[i][j] = widen(base->prod(i, j), 0);
      if (cocycle) {
        int t[2] = {i, j};
        table[i][j] += widen(cocycle->value(t), rA);
      }
    }
  for (int i = 0; i < rA; ++i)
    for (int j = 0; j < rM; ++j) {
      table[i][rA + j] = widen(fiber->left(i, j), rA);
      table[rA + j][i] = widen(fiber->right(j, i), rA);
    }
  for (int i = 0; i < rM; ++i)
    for (int j = 0; j < rM; ++j) table[rA + i][rA + j] = widen(fprod[i][j], rA);

  SplitExtension ext{std::move(base), std::move(fiber),
                     std::make_shared<ConformalAlgebra>(r, std::move(table)),
                     Report::passed("extension-associativity")};
  ext.associativity = check_associativity(*ext.total);
  ext.associativity.check = "extension-associativity";
  if (cocycle) ext.split_section = cocycle->is_zero();
  return ext;
}

}  // namespace

PolyVector SplitExtension::project_base(const PolyVector& x) const {
  if (x.rank() != base_rank() + fiber_rank())
    throw Error("project_base: rank mismatch");
  PolyVector out(base_rank());
  for (int k = 0; k < base_rank(); ++k) out[k] = x[k];
  return out;
}

PolyVector SplitExtension::embed_base(const PolyVector& a) const {
  if (a.rank() != base_rank()) throw Error("embed_base: rank mismatch");
  PolyVector out(base_rank() + fiber_rank());
  for (int k = 0; k < base_rank(); ++k) out[k] = a[k];
  return out;
}

PolyVector SplitExtension::include_fiber(const PolyVector& u) const {
  if (u.rank() != fiber_rank()) throw Error("include_fiber: rank mismatch");
  PolyVector out(base_rank() + fiber_rank());
  for (int k = 0; k < fiber_rank(); ++k) out[base_rank() + k] = u[k];
  return out;
}

SplitExtension split_extension(
    AlgebraPtr base, BimodulePtr fiber,
    const std::vector<std::vector<PolyVector>>& fiber_product) {
  return assemble(std::move(base), std::move(fiber), fiber_product, nullptr);
}

SplitExtension trivial_extension(AlgebraPtr base, BimodulePtr fiber) {
  if (!fiber) throw Error("trivial_extension: null fiber");
  std::vector<std::vector<PolyVector>> zero(
      fiber->rank(),
      std::vector<PolyVector>(fiber->rank(), PolyVector(fiber->rank())));
  return assemble(std::move(base), std::move(fiber), zero, nullptr);
}

Cochain pullback_phi(const SplitExtension& ext, const Cochain& phi) {
  if (phi.algebra() != ext.total || !is_regular(*phi.coefficients()))
    throw Error("pullback_phi: cochain must be algebra-valued over the total");
  BimodulePtr reg = regular_bimodule(ext.base);
  const int n = phi.degree();

  if (n == 0)
    return Cochain::degree0(ext.base, reg, ext.project_base(phi.value({})));

  // Base tuples embed index-for-index: the base block comes first.
  Cochain out(ext.base, reg, n);
  for (int idx = 0; idx < out.tuple_count(); ++idx) {
    std::vector<int> t = out.tuple_at(idx);
    out.set_value(t, ext.project_base(phi.value(t)));
  }
  return out;
}

Report check_projection_chain_map(const SplitExtension& ext, std::uint64_t seed,
                     int trials, int d_cap, int l_cap) {
  if (!ext.associativity.pass)
    throw Error("check_projection_chain_map: extension is not associative");
  if (!ext.split_section)
    throw Error(
        "check_projection_chain_map: the section is not an algebra morphism (nonzero "
        "cocycle in the base block)");
  BimodulePtr total_reg = regular_bimodule(ext.total);

  for (int trial = 0; trial < trials; ++trial)
    for (int n : {0, 1, 2}) {
      Cochain phi = random_cochain(ext.total, total_reg, n, d_cap, l_cap,
                                   seed + 8 * trial + n);
      Cochain lhs = differential(pullback_phi(ext, phi));
      Cochain rhs = pullback_phi(ext, differential(phi));
      Cochain diff = lhs - rhs;
      if (diff.is_zero()) continue;
      for (int idx = 0; idx < diff.tuple_count(); ++idx) {
        std::vector<int> t = diff.tuple_at(idx);
        if (!diff.value(t).is_zero())
          return Report::failed(
              "projection-intertwines-differential",
              Witness{t, "degree n=" + std::to_string(n), diff.value(t).str_entries()},
              seed);
      }
    }
  Report r = Report::passed("projection-intertwines-differential");
  r.seed = seed;
  return r;
}

Report check_ring_morphism(const SplitExtension& ext, std::uint64_t seed,
                           int trials, int d_cap, int l_cap) {
  if (!ext.associativity.pass)
    throw Error("check_ring_morphism: extension is not associative");
  if (!ext.split_section)
    throw Error(
        "check_ring_morphism: the section is not an algebra morphism "
        "(nonzero cocycle in the base block)");
  BimodulePtr total_reg = regular_bimodule(ext.total);

  for (int trial = 0; trial < trials; ++trial)
    for (int s : {0, 1, 2})
      for (int t : {0, 1, 2}) {
        Cochain f = random_cochain(ext.total, total_reg, s, d_cap, l_cap,
                                   seed + 64 * trial + 8 * s + t);
        Cochain g = random_cochain(ext.total, total_reg, t, d_cap, l_cap,
                                   seed + 64 * trial + 8 * s + t + 1000003);
        Cochain lhs = cup(pullback_phi(ext, f), pullback_phi(ext, g));
        Cochain rhs = pullback_phi(ext, cup(f, g));
        Cochain diff = lhs - rhs;
        if (diff.is_zero()) continue;
        for (int idx = 0; idx < diff.tuple_count(); ++idx) {
          std::vector<int> tu = diff.tuple_at(idx);
          if (!diff.value(tu).is_zero())
            return Report::failed(
                "projection-respects-cup",
                Witness{tu,
                        "degrees s=" + std::to_string(s) +
                            " t=" + std::to_string(t),
                        diff.value(tu).str_entries()},
                seed);
        }
      }
  Report r = Report::passed("projection-respects-cup");
  r.seed = seed;
  return r;
}

Report check_projection_morphism(const SplitExtension& ext,
                                 std::uint64_t seed, int trials) {
  if (!ext.associativity.pass)
    throw Error("check_projection_morphism: extension is not associative");
  std::mt19937_64 rng(seed);
  const int r = ext.total->rank();
  auto random_element = [&] {
    PolyVector v(r);
    for (int k = 0; k < r; ++k) {
      Poly p;
      for (int e = 0; e <= 2; ++e) {
        long c = static_cast<long>(rng() % 5) - 2;
        p += Poly(make_rational(c)) * pow(Poly::del(), e);
      }
      v[k] = p;
    }
    return v;
  };
  Poly nu = Poly::lam(1);
  for (int trial = 0; trial < trials; ++trial) {
    PolyVector x = random_element();
    PolyVector y = random_element();
    PolyVector lhs = ext.project_base(lambda_product(*ext.total, x, y, nu));
    PolyVector rhs = lambda_product(*ext.base, ext.project_base(x),
                                    ext.project_base(y), nu);
    PolyVector diff = lhs - rhs;
    if (!diff.is_zero())
      return Report::failed(
          "projection-is-morphism",
          Witness{{}, "trial " + std::to_string(trial), diff.str_entries()},
          seed);
  }
  Report r2 = Report::passed("projection-is-morphism");
  r2.seed = seed;
  return r2;
}

SplitExtension extension_from_2cocycle(AlgebraPtr base, BimodulePtr fiber,
                                       const Cochain& phi) {
  if (phi.degree() != 2)
    throw Error("extension_from_2cocycle: cochain must have degree 2");
  if (phi.algebra() != base || phi.coefficients() != fiber)
    throw Error(
        "extension_from_2cocycle: cochain must map the base into the fiber");

  std::vector<std::vector<PolyVector>> zero(
      fiber->rank(),
      std::vector<PolyVector>(fiber->rank(), PolyVector(fiber->rank())));
  bool closed = differential(phi).is_zero();
  SplitExtension ext = assemble(std::move(base), std::move(fiber), zero, &phi);
  if (ext.associativity.pass != closed)
    throw Error(
        "extension_from_2cocycle: associativity verdict disagrees with the "
        "cocycle condition");
  return ext;
}

}  // namespace cfh
