#include <doctest.h>

#include <random>
#include <vector>

#include "cfh/cochain.hpp"
#include "helpers.hpp"

using namespace cfh;
using namespace cfh::testing;

namespace {

// Formula-level oracle for graft: evaluate f directly with g's value plugged
// in as a PolyVector argument and the parameter list the insertion rule
// prescribes.  Independent of graft's direct table assembly.
PolyVector graft_oracle(const Cochain& f, const Cochain& g, int i,
                        std::span<const int> t) {
  const int m = f.degree(), n = g.degree();
  const int r = f.algebra()->rank();
  PolyVector G = g.value(t.subspan(i - 1, n));
  std::map<Var, Var> gnames;
  for (int j = 1; j <= n - 1; ++j) gnames[Var::lam(j)] = Var::lam(i - 1 + j);
  if (!gnames.empty()) G = G.rename(gnames);

  std::vector<PolyVector> args(m);
  for (int k = 0; k < i - 1; ++k) args[k] = PolyVector::unit(r, t[k]);
  args[i - 1] = G;
  for (int k = i; k < m; ++k) args[k] = PolyVector::unit(r, t[k + n - 1]);

  std::vector<Poly> params;
  if (i < m) {
    Poly block;
    for (int k = i; k <= i + n - 1; ++k) block += Poly::lam(k);
    for (int k = 1; k < i; ++k) params.push_back(Poly::lam(k));
    params.push_back(block);
    for (int j = i + 1; j <= m - 1; ++j) params.push_back(Poly::lam(j + n - 1));
  } else {
    for (int k = 1; k <= m - 1; ++k) params.push_back(Poly::lam(k));
  }
  return f.evaluate(args, params);
}

Cochain rho_of(AlgebraPtr a, BimodulePtr reg) {
  Cochain rho(a, reg, 2);
  for (int i = 0; i < a->rank(); ++i)
    for (int j = 0; j < a->rank(); ++j) {
      int t[2] = {i, j};
      rho.set_value(t, a->prod(i, j));
    }
  return rho;
}

Cochain der_of(AlgebraPtr a, BimodulePtr reg) {
  Cochain der(a, reg, 1);
  for (int i = 0; i < a->rank(); ++i) {
    int t[1] = {i};
    der.set_value(t, PolyVector::unit(a->rank(), i) * Poly::del());
  }
  return der;
}

}  // namespace

TEST_CASE("value discipline is enforced") {
  AlgebraPtr a = make_e1();
  BimodulePtr reg = regular_bimodule(a);
  Cochain one(a, reg, 1);
  PolyVector bad(1);
  bad[0] = Poly::lam(1);
  int t[1] = {0};
  CHECK_THROWS_AS(one.set_value(t, bad), Error);  // 1-cochains: d only
  Cochain two(a, reg, 2);
  PolyVector ok(1), bad2(1);
  ok[0] = Poly::del() + Poly::lam(1);
  bad2[0] = Poly::lam(2);
  int t2[2] = {0, 0};
  CHECK_NOTHROW(two.set_value(t2, ok));
  CHECK_THROWS_AS(two.set_value(t2, bad2), Error);
  // Degree 0 stores constants; the class projection kills d-multiples.
  PolyVector elem(1);
  elem[0] = Poly(make_rational(3)) + Poly::del() * Poly::del();
  Cochain zero_deg = Cochain::degree0(a, reg, elem);
  CHECK(zero_deg.value({})[0] == Poly(make_rational(3)));
}

TEST_CASE("evaluate is the l-linear extension") {
  AlgebraPtr a = make_m2();
  BimodulePtr reg = regular_bimodule(a);
  std::mt19937_64 rng(7);
  Cochain phi = random_cochain(a, reg, 2, 2, 2, 99);

  // Multilinearity over generator combinations.
  PolyVector x = random_element(rng, 4, 2), y = random_element(rng, 4, 2);
  std::vector<Poly> params = {Poly::lam(1)};
  PolyVector whole = phi.evaluate(std::vector<PolyVector>{x, y}, params);
  PolyVector sum(4);
  for (int gx = 0; gx < 4; ++gx)
    for (int gy = 0; gy < 4; ++gy) {
      PolyVector ux(4), uy(4);
      ux[gx] = x[gx];
      uy[gy] = y[gy];
      sum += phi.evaluate(std::vector<PolyVector>{ux, uy}, params);
    }
  CHECK(whole == sum);
}

TEST_CASE("evaluate applies the sesquilinear substitutions per slot") {
  AlgebraPtr a = make_m2();
  BimodulePtr reg = regular_bimodule(a);
  Cochain phi = random_cochain(a, reg, 3, 2, 1, 5);
  std::mt19937_64 rng(8);
  Poly p = random_del_poly(rng, 2);
  std::vector<Poly> params = {Poly::lam(1), Poly::lam(2)};

  std::vector<PolyVector> base = {PolyVector::unit(4, 1), PolyVector::unit(4, 2),
                                  PolyVector::unit(4, 3)};
  PolyVector plain = phi.evaluate(base, params);

  for (int slot = 0; slot < 3; ++slot) {
    auto args = base;
    args[slot] = args[slot] * p;
    PolyVector scaled = phi.evaluate(args, params);
    Poly expected =
        slot < 2 ? p.substitute(Var::del(), -params[slot])
                 : p.substitute(Var::del(),
                                Poly::del() + Poly::lam(1) + Poly::lam(2));
    CHECK(scaled == plain * expected);
  }
}

TEST_CASE("evaluate performs simultaneous parameter substitution") {
  AlgebraPtr a = make_e1();
  BimodulePtr reg = regular_bimodule(a);
  Cochain phi(a, reg, 3);
  PolyVector v(1);
  v[0] = Poly::lam(1) * (Poly::lam(2) + Poly::del());
  int t[3] = {0, 0, 0};
  phi.set_value(t, v);

  std::vector<PolyVector> args(3, PolyVector::unit(1, 0));
  // Swapped parameters must swap, not collapse.
  std::vector<Poly> params = {Poly::lam(2), Poly::lam(1)};
  PolyVector got = phi.evaluate(args, params);
  // Formal l1 := l2 and l2 := l1 simultaneously; unit coefficients leave the
  // stored d alone.
  Poly expect = Poly::lam(2) * (Poly::lam(1) + Poly::del());
  CHECK(got[0] == expect);
}

TEST_CASE("graft matches the evaluation oracle") {
  for (AlgebraPtr a : {make_e1(), make_m2()}) {
    BimodulePtr reg = regular_bimodule(a);
    std::uint64_t seed = 100;
    for (auto [m, n] : std::vector<std::pair<int, int>>{
             {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 2}, {2, 3}}) {
      Cochain f = random_cochain(a, reg, m, 1, 1, seed++);
      Cochain g = random_cochain(a, reg, n, 1, 1, seed++);
      for (int i = 1; i <= m; ++i) {
        Cochain h = graft(f, g, i);
        REQUIRE(h.degree() == m + n - 1);
        for (int idx = 0; idx < h.tuple_count(); ++idx) {
          std::vector<int> t = h.tuple_at(idx);
          CHECK(h.value(t) == graft_oracle(f, g, i, t));
        }
      }
    }
  }
}

TEST_CASE("grafting the identity is neutral") {
  AlgebraPtr a = make_m2();
  BimodulePtr reg = regular_bimodule(a);
  Cochain id = Cochain::identity(a, reg);
  std::uint64_t seed = 55;
  for (int m : {1, 2, 3}) {
    Cochain f = random_cochain(a, reg, m, 1, 1, seed++);
    for (int i = 1; i <= m; ++i) CHECK(graft(f, id, i) == f);
  }
  Cochain g = random_cochain(a, reg, 2, 1, 1, seed);
  CHECK(graft(id, g, 1) == g);
}

TEST_CASE("graft of the product into itself is the associativity expression") {
  AlgebraPtr a = make_e1();
  BimodulePtr reg = regular_bimodule(a);
  Cochain rho = rho_of(a, reg);
  Cochain left = graft(rho, rho, 1);   // (a b) c
  Cochain right = graft(rho, rho, 2);  // a (b c)
  int t[3] = {0, 0, 0};
  CHECK(left.value(t) == PolyVector::unit(1, 0));
  CHECK(right.value(t) == PolyVector::unit(1, 0));
  CHECK((left - right).is_zero());  // associativity of E1
}

TEST_CASE("differential at low degrees: worked examples") {
  AlgebraPtr a = make_e1();
  BimodulePtr reg = regular_bimodule(a);

  // d of the translation derivation vanishes.
  CHECK(differential(der_of(a, reg)).is_zero());

  // d of the identity is the product itself.
  Cochain did = differential(Cochain::identity(a, reg));
  int t[2] = {0, 0};
  CHECK(did.value(t) == PolyVector::unit(1, 0));

  // Degree 0: the single class maps to zero here.
  Cochain v = Cochain::degree0(a, reg, PolyVector::unit(1, 0));
  CHECK(differential(v).is_zero());
}

TEST_CASE("degree-0 differential is representative independent") {
  AlgebraPtr a = make_m2();
  BimodulePtr reg = regular_bimodule(a);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    PolyVector v = random_element(rng, 4, 0);  // constants
    PolyVector w = random_element(rng, 4, 2);
    Cochain base = element_coboundary(a, reg, v);
    Cochain shifted = element_coboundary(a, reg, v + w * Poly::del());
    CHECK(base == shifted);
  }
}

TEST_CASE("inner coboundaries on matrix units are commutators") {
  AlgebraPtr a = make_m2();
  BimodulePtr reg = regular_bimodule(a);
  // f_v(a) = a (x)_{-d} v - v (x)_0 a = av - va for constant tables.
  PolyVector v = PolyVector::unit(4, 1);  // e01
  Cochain f = element_coboundary(a, reg, v);
  // [e00, e01] = e01, [e01, e01] = 0, [e10, e01] = e11 - e00, [e11, e01] = -e01.
  auto val = [&](int g) {
    int t[1] = {g};
    return f.value(t);
  };
  CHECK(val(0) == PolyVector::unit(4, 1));
  CHECK(val(1).is_zero());
  CHECK(val(2) == PolyVector::unit(4, 3) - PolyVector::unit(4, 0));
  CHECK(val(3) == -PolyVector::unit(4, 1));
}

TEST_CASE("d squared vanishes across degrees, coefficients, algebras") {
  std::uint64_t seed = 1000;
  for (AlgebraPtr a : {make_e1(), make_qxq()}) {
    BimodulePtr reg = regular_bimodule(a);
    BimodulePtr zero = zero_bimodule(a, 2);
    for (int n : {0, 1, 2, 3}) {
      CHECK(d_squared_check(random_cochain(a, reg, n, 2, 2, seed++)).pass);
      CHECK(d_squared_check(random_cochain(a, zero, n, 2, 2, seed++)).pass);
    }
  }
  AlgebraPtr m2 = make_m2();
  BimodulePtr reg = regular_bimodule(m2);
  for (int n : {0, 1, 2}) {
    CHECK(d_squared_check(random_cochain(m2, reg, n, 2, 2, seed++)).pass);
  }
}

TEST_CASE("d squared flags a broken coefficient table") {
  AlgebraPtr a = make_dual();
  int r = a->rank();
  std::vector<std::vector<PolyVector>> left(r), right(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      left[i].push_back(a->prod(i, j));
      right[i].push_back(a->prod(i, j));
    }
  left[1][1][0] = Poly(make_rational(1));  // x acting on x now yields 1
  BimodulePtr broken =
      std::make_shared<ConformalBimodule>(a, r, std::move(left), std::move(right));
  REQUIRE_FALSE(check_bimodule(*broken).pass);

  Report rep = d_squared_check(random_cochain(a, broken, 1, 1, 0, 3));
  REQUIRE_FALSE(rep.pass);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->lambda_assignment.find("violated") != std::string::npos);
}

TEST_CASE("random cochains are deterministic and capped") {
  AlgebraPtr a = make_m2();
  BimodulePtr reg = regular_bimodule(a);
  Cochain f1 = random_cochain(a, reg, 2, 2, 1, 42);
  Cochain f2 = random_cochain(a, reg, 2, 2, 1, 42);
  Cochain f3 = random_cochain(a, reg, 2, 2, 1, 43);
  CHECK(f1 == f2);
  CHECK_FALSE(f1 == f3);
  for (int idx = 0; idx < f1.tuple_count(); ++idx) {
    std::vector<int> t = f1.tuple_at(idx);
    const PolyVector& v = f1.value(t);
    for (int k = 0; k < v.rank(); ++k) {
      CHECK(v[k].max_degree(Var::del()) <= 2);
      CHECK(v[k].max_degree(Var::lam(1)) <= 1);
    }
  }
}
