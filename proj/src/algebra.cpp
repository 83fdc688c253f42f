#include "cfh/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace cfh {

PolyVector PolyVector::unit(int rank, int k) {
  PolyVector v(rank);
  v[k] = Poly(make_rational(1));
  return v;
}

bool PolyVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Poly& p) { return p.is_zero(); });
}

PolyVector PolyVector::operator-() const {
  PolyVector r(rank());
  for (int k = 0; k < rank(); ++k) r[k] = -entries_[k];
  return r;
}

PolyVector PolyVector::operator+(const PolyVector& o) const {
  PolyVector r = *this;
  r += o;
  return r;
}

PolyVector& PolyVector::operator+=(const PolyVector& o) {
  if (rank() != o.rank()) throw Error("PolyVector: rank mismatch");
  for (int k = 0; k < rank(); ++k) entries_[k] += o[k];
  return *this;
}

PolyVector PolyVector::operator-(const PolyVector& o) const {
  if (rank() != o.rank()) throw Error("PolyVector: rank mismatch");
  PolyVector r(rank());
  for (int k = 0; k < rank(); ++k) r[k] = entries_[k] - o[k];
  return r;
}

PolyVector PolyVector::operator*(const Poly& p) const {
  PolyVector r(rank());
  for (int k = 0; k < rank(); ++k) r[k] = entries_[k] * p;
  return r;
}

PolyVector PolyVector::substitute(Var v, const Poly& r) const {
  PolyVector out(rank());
  for (int k = 0; k < rank(); ++k) out[k] = entries_[k].substitute(v, r);
  return out;
}

PolyVector PolyVector::substitute_all(const std::map<Var, Poly>& subs) const {
  PolyVector out(rank());
  for (int k = 0; k < rank(); ++k) out[k] = entries_[k].substitute_all(subs);
  return out;
}

PolyVector PolyVector::rename(const std::map<Var, Var>& names) const {
  PolyVector out(rank());
  for (int k = 0; k < rank(); ++k) out[k] = entries_[k].rename(names);
  return out;
}

bool PolyVector::uses(Var v) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Poly& p) { return p.uses(v); });
}

std::vector<std::string> PolyVector::str_entries() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const Poly& p : entries_) out.push_back(p.str());
  return out;
}

std::string PolyVector::str() const {
  std::string s = "[";
  for (int k = 0; k < rank(); ++k) {
    if (k) s += ", ";
    s += "\"" + entries_[k].str() + "\"";
  }
  return s + "]";
}

namespace {

void validate_table(const std::vector<std::vector<PolyVector>>& t, int rows,
                    int cols, int rank, const char* what) {
  if ((int)t.size() != rows) throw Error(std::string(what) + ": bad row count");
  for (const auto& row : t) {
    if ((int)row.size() != cols)
      throw Error(std::string(what) + ": bad column count");
    for (const PolyVector& v : row) {
      if (v.rank() != rank) throw Error(std::string(what) + ": bad entry rank");
      for (Var var : [&] {
             std::set<Var> s;
             for (int k = 0; k < v.rank(); ++k)
               for (Var w : v[k].vars()) s.insert(w);
             return s;
           }())
        if (!var.is_del() && var.lam_index() != 1)
          throw Error(std::string(what) +
                      ": table entries may use only d and l1");
    }
  }
}

int table_degree(const std::vector<std::vector<PolyVector>>& t, Var v) {
  int d = 0;
  for (const auto& row : t)
    for (const PolyVector& e : row)
      for (int k = 0; k < e.rank(); ++k) d = std::max(d, e[k].max_degree(v));
  return d;
}

// Shared bilinear extension of the three product-like maps.
PolyVector bilinear(int x_rank, int y_rank, int out_rank,
                    const std::function<const PolyVector&(int, int)>& table,
                    const PolyVector& x, const PolyVector& y, const Poly& nu) {
  if (x.rank() != x_rank || y.rank() != y_rank)
    throw Error("lambda product: operand rank mismatch");
  if (nu.uses(Var::del()))
    throw Error("lambda product: parameter must not mention d");
  // A bare-variable parameter that already occurs as a spectator in an
  // operand is ambiguous (fresh-variable and literal reading diverge in
  // intent); composite parameters sharing variables are well-defined.
  if (nu.terms().size() == 1) {
    const auto& [m, c] = *nu.terms().begin();
    if (c == 1 && m.factors().size() == 1 && m.factors()[0].second == 1) {
      Var v = m.factors()[0].first;
      if (x.uses(v) || y.uses(v))
        throw Error("lambda product: parameter variable " + v.str() +
                    " collides with a spectator");
    }
  }
  const Poly minus_nu = -nu;
  const Poly shifted = Poly::del() + nu;
  PolyVector out(out_rank);
  for (int i = 0; i < x_rank; ++i) {
    if (x[i].is_zero()) continue;
    const Poly xi = x[i].substitute(Var::del(), minus_nu);
    for (int j = 0; j < y_rank; ++j) {
      if (y[j].is_zero()) continue;
      const Poly factor = xi * y[j].substitute(Var::del(), shifted);
      const PolyVector& entry = table(i, j);
      for (int k = 0; k < out_rank; ++k) {
        if (entry[k].is_zero()) continue;
        out[k] += factor * entry[k].substitute(Var::lam(1), nu);
      }
    }
  }
  return out;
}

}  // namespace

ConformalAlgebra::ConformalAlgebra(int rank,
                                   std::vector<std::vector<PolyVector>> table)
    : rank_(rank), table_(std::move(table)) {
  if (rank < 1) throw Error("ConformalAlgebra: rank must be >= 1");
  validate_table(table_, rank, rank, rank, "prod table");
}

int ConformalAlgebra::max_table_degree(Var v) const {
  return table_degree(table_, v);
}

ConformalBimodule::ConformalBimodule(AlgebraPtr alg, int rank,
                                     std::vector<std::vector<PolyVector>> left,
                                     std::vector<std::vector<PolyVector>> right)
    : alg_(std::move(alg)),
      rank_(rank),
      left_(std::move(left)),
      right_(std::move(right)) {
  if (!alg_) throw Error("ConformalBimodule: null algebra");
  if (rank < 1) throw Error("ConformalBimodule: rank must be >= 1");
  validate_table(left_, alg_->rank(), rank, rank, "left table");
  validate_table(right_, rank, alg_->rank(), rank, "right table");
}

int ConformalBimodule::max_table_degree(Var v) const {
  return std::max(table_degree(left_, v), table_degree(right_, v));
}

PolyVector lambda_product(const ConformalAlgebra& alg, const PolyVector& x,
                          const PolyVector& y, const Poly& nu) {
  return bilinear(
      alg.rank(), alg.rank(), alg.rank(),
      [&](int i, int j) -> const PolyVector& { return alg.prod(i, j); }, x, y,
      nu);
}

PolyVector left_action(const ConformalBimodule& mod, const PolyVector& a,
                       const PolyVector& v, const Poly& nu) {
  return bilinear(
      mod.algebra()->rank(), mod.rank(), mod.rank(),
      [&](int i, int j) -> const PolyVector& { return mod.left(i, j); }, a, v,
      nu);
}

PolyVector right_action(const ConformalBimodule& mod, const PolyVector& v,
                        const PolyVector& a, const Poly& nu) {
  return bilinear(
      mod.rank(), mod.algebra()->rank(), mod.rank(),
      [&](int j, int i) -> const PolyVector& { return mod.right(j, i); }, v, a,
      nu);
}

Report check_associativity(const ConformalAlgebra& alg) {
  const Poly l1 = Poly::lam(1), l2 = Poly::lam(2);
  for (int i = 0; i < alg.rank(); ++i)
    for (int j = 0; j < alg.rank(); ++j)
      for (int k = 0; k < alg.rank(); ++k) {
        PolyVector ei = PolyVector::unit(alg.rank(), i);
        PolyVector ej = PolyVector::unit(alg.rank(), j);
        PolyVector ek = PolyVector::unit(alg.rank(), k);
        PolyVector lhs =
            lambda_product(alg, lambda_product(alg, ei, ej, l1), ek, l1 + l2);
        PolyVector rhs =
            lambda_product(alg, ei, lambda_product(alg, ej, ek, l2), l1);
        PolyVector diff = lhs - rhs;
        if (!diff.is_zero())
          return Report::failed("associativity",
                                Witness{{i, j, k}, "l1, l2", diff.str_entries()});
      }
  return Report::passed("associativity");
}

Report check_bimodule(const ConformalBimodule& mod) {
  const Poly l1 = Poly::lam(1), l2 = Poly::lam(2);
  const ConformalAlgebra& alg = *mod.algebra();
  const int ra = alg.rank(), rm = mod.rank();
  auto ae = [&](int i) { return PolyVector::unit(ra, i); };
  auto me = [&](int j) { return PolyVector::unit(rm, j); };

  // (a (x)_l1 b) acting left at l1+l2 == a acting left at l1 after b at l2.
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ra; ++j)
      for (int v = 0; v < rm; ++v) {
        PolyVector lhs = left_action(
            mod, lambda_product(alg, ae(i), ae(j), l1), me(v), l1 + l2);
        PolyVector rhs =
            left_action(mod, ae(i), left_action(mod, ae(j), me(v), l2), l1);
        PolyVector diff = lhs - rhs;
        if (!diff.is_zero())
          return Report::failed("bimodule-left",
                                Witness{{i, j, v}, "l1, l2", diff.str_entries()});
      }
  // (v <|_l1 a) <|_{l1+l2} b == v <|_l1 (a (x)_l2 b).
  for (int v = 0; v < rm; ++v)
    for (int i = 0; i < ra; ++i)
      for (int j = 0; j < ra; ++j) {
        PolyVector lhs = right_action(
            mod, right_action(mod, me(v), ae(i), l1), ae(j), l1 + l2);
        PolyVector rhs =
            right_action(mod, me(v), lambda_product(alg, ae(i), ae(j), l2), l1);
        PolyVector diff = lhs - rhs;
        if (!diff.is_zero())
          return Report::failed("bimodule-right",
                                Witness{{v, i, j}, "l1, l2", diff.str_entries()});
      }
  // (a |>_l1 v) <|_{l1+l2} b == a |>_l1 (v <|_l2 b).
  for (int i = 0; i < ra; ++i)
    for (int v = 0; v < rm; ++v)
      for (int j = 0; j < ra; ++j) {
        PolyVector lhs = right_action(
            mod, left_action(mod, ae(i), me(v), l1), ae(j), l1 + l2);
        PolyVector rhs =
            left_action(mod, ae(i), right_action(mod, me(v), ae(j), l2), l1);
        PolyVector diff = lhs - rhs;
        if (!diff.is_zero())
          return Report::failed("bimodule-mixed",
                                Witness{{i, v, j}, "l1, l2", diff.str_entries()});
      }
  return Report::passed("bimodule");
}

AlgebraPtr cur(const std::vector<std::vector<std::vector<Rational>>>& consts) {
  int rank = (int)consts.size();
  if (rank < 1) throw Error("cur: rank must be >= 1");
  std::vector<std::vector<PolyVector>> table(
      rank, std::vector<PolyVector>(rank, PolyVector(rank)));
  for (int i = 0; i < rank; ++i) {
    if ((int)consts[i].size() != rank) throw Error("cur: ragged table");
    for (int j = 0; j < rank; ++j) {
      if ((int)consts[i][j].size() != rank) throw Error("cur: ragged entry");
      for (int k = 0; k < rank; ++k)
        table[i][j][k] = Poly(consts[i][j][k]);
    }
  }
  return std::make_shared<ConformalAlgebra>(rank, std::move(table));
}

BimodulePtr regular_bimodule(AlgebraPtr alg) {
  if (!alg) throw Error("regular_bimodule: null algebra");
  // Memoized per algebra instance: cochain operations identify a complex by
  // its bimodule pointer, so repeated calls must hand back the same module.
  static std::mutex cache_mutex;
  static std::map<const ConformalAlgebra*, std::weak_ptr<const ConformalBimodule>>
      cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[alg.get()];
  if (BimodulePtr hit = slot.lock()) return hit;

  int r = alg->rank();
  std::vector<std::vector<PolyVector>> left(r), right(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      left[i].push_back(alg->prod(i, j));
      right[i].push_back(alg->prod(i, j));
    }
  auto made = std::make_shared<ConformalBimodule>(alg, r, std::move(left),
                                                  std::move(right));
  slot = made;
  return made;
}

BimodulePtr zero_bimodule(AlgebraPtr alg, int rank) {
  if (!alg) throw Error("zero_bimodule: null algebra");
  std::vector<std::vector<PolyVector>> left(
      alg->rank(), std::vector<PolyVector>(rank, PolyVector(rank)));
  std::vector<std::vector<PolyVector>> right(
      rank, std::vector<PolyVector>(alg->rank(), PolyVector(rank)));
  return std::make_shared<ConformalBimodule>(alg, rank, std::move(left),
                                             std::move(right));
}

}  // namespace cfh
