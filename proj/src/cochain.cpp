#include "cfh/cochain.hpp"

#include <algorithm>
#include <random>

namespace cfh {

namespace {

int checked_pow(int base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > (1 << 28)) throw Error("Cochain: tuple space too large");
  }
  return (int)r;
}

Poly param_sum(std::span<const Poly> params) {
  Poly s;
  for (const Poly& p : params) s += p;
  return s;
}

}  // namespace

Cochain::Cochain(AlgebraPtr alg, BimodulePtr coeffs, int degree)
    : alg_(std::move(alg)), coeffs_(std::move(coeffs)), degree_(degree) {
  if (!alg_ || !coeffs_) throw Error("Cochain: null algebra or coefficients");
  if (coeffs_->algebra() != alg_)
    throw Error("Cochain: coefficients live over a different algebra");
  if (degree < 0) throw Error("Cochain: negative degree");
  values_.assign(degree == 0 ? 1 : checked_pow(alg_->rank(), degree),
                 PolyVector(coeffs_->rank()));
}

Cochain Cochain::identity(AlgebraPtr alg, BimodulePtr coeffs) {
  if (!coeffs || !is_regular(*coeffs))
    throw Error("Cochain::identity: needs algebra-valued coefficients");
  Cochain f(alg, coeffs, 1);
  for (int i = 0; i < f.alg_->rank(); ++i)
    f.values_[i] = PolyVector::unit(f.coeffs_->rank(), i);
  return f;
}

Cochain Cochain::degree0(AlgebraPtr alg, BimodulePtr coeffs,
                         const PolyVector& element) {
  Cochain f(std::move(alg), std::move(coeffs), 0);
  if (element.rank() != f.coeffs_->rank())
    throw Error("Cochain::degree0: element rank mismatch");
  PolyVector rep(element.rank());
  for (int k = 0; k < element.rank(); ++k) {
    for (Var v : element[k].vars())
      if (!v.is_del())
        throw Error("Cochain::degree0: element must use only d");
    // Collapsing d to zero is exactly passing to the quotient by d(module).
    rep[k] = element[k].substitute(Var::del(), Poly());
  }
  f.values_[0] = std::move(rep);
  return f;
}

int Cochain::index_of(std::span<const int> tuple) const {
  if ((int)tuple.size() != degree_) throw Error("Cochain: tuple arity mismatch");
  int idx = 0;
  for (int t : tuple) {
    if (t < 0 || t >= alg_->rank()) throw Error("Cochain: generator index out of range");
    idx = idx * alg_->rank() + t;
  }
  return idx;
}

std::vector<int> Cochain::tuple_at(int index) const {
  std::vector<int> t(degree_);
  for (int k = degree_ - 1; k >= 0; --k) {
    t[k] = index % alg_->rank();
    index /= alg_->rank();
  }
  return t;
}

const PolyVector& Cochain::value(std::span<const int> tuple) const {
  return values_[index_of(tuple)];
}

void Cochain::validate_value(const PolyVector& v) const {
  if (v.rank() != coeffs_->rank()) throw Error("Cochain: value rank mismatch");
  for (int k = 0; k < v.rank(); ++k)
    for (Var var : v[k].vars()) {
      bool ok = degree_ == 0 ? false
                             : (var.is_del() || var.lam_index() <= degree_ - 1);
      if (!ok)
        throw Error("Cochain: value uses " + var.str() +
                    ", outside the degree-" + std::to_string(degree_) +
                    " variable range");
    }
}

void Cochain::set_value(std::span<const int> tuple, PolyVector v) {
  validate_value(v);
  values_[index_of(tuple)] = std::move(v);
}

PolyVector Cochain::evaluate(std::span<const PolyVector> args,
                             std::span<const Poly> params) const {
  const int n = degree_;
  if ((int)args.size() != n) throw Error("Cochain::evaluate: arity mismatch");
  if ((int)params.size() != std::max(0, n - 1))
    throw Error("Cochain::evaluate: parameter count mismatch");
  if (n == 0) return values_[0];

  for (const PolyVector& a : args)
    if (a.rank() != alg_->rank())
      throw Error("Cochain::evaluate: argument rank mismatch");

  // Substituted coefficient of argument k at generator g, zero skipped.
  const Poly shift = Poly::del() + param_sum(params);
  auto sigma = [&](int k, const Poly& p) {
    return k < n - 1 ? p.substitute(Var::del(), -params[k])
                     : p.substitute(Var::del(), shift);
  };

  std::map<Var, Poly> formal;
  for (int j = 0; j + 1 < n; ++j)
    if (params[j] != Poly(Var::lam(j + 1))) formal[Var::lam(j + 1)] = params[j];

  PolyVector out(coeffs_->rank());
  std::vector<int> tuple(n, 0);
  std::vector<Poly> factors(n);
  // Depth-first product over the supports of the arguments.
  auto rec = [&](auto&& self, int k, const Poly& acc) -> void {
    if (k == n) {
      const PolyVector& base = values_[index_of(tuple)];
      if (base.is_zero()) return;
      PolyVector v = formal.empty() ? base : base.substitute_all(formal);
      out += v * acc;
      return;
    }
    for (int g = 0; g < alg_->rank(); ++g) {
      if (args[k][g].is_zero()) continue;
      tuple[k] = g;
      self(self, k + 1, k == 0 ? sigma(0, args[0][g]) : acc * sigma(k, args[k][g]));
    }
  };
  // Seed with 1 for the k==0 call; handled inside by replacing acc.
  rec(rec, 0, Poly(make_rational(1)));
  return out;
}

bool Cochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const PolyVector& v) { return v.is_zero(); });
}

Cochain Cochain::operator+(const Cochain& o) const {
  if (degree_ != o.degree_ || alg_ != o.alg_ || coeffs_ != o.coeffs_)
    throw Error("Cochain: mismatched complexes in +");
  Cochain r = *this;
  for (size_t i = 0; i < values_.size(); ++i) r.values_[i] += o.values_[i];
  return r;
}

Cochain Cochain::operator-() const {
  Cochain r = *this;
  for (auto& v : r.values_) v = -v;
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::operator*(const Rational& c) const {
  Cochain r = *this;
  for (auto& v : r.values_) v = v * Poly(c);
  return r;
}

bool is_regular(const ConformalBimodule& mod) {
  const ConformalAlgebra& alg = *mod.algebra();
  if (mod.rank() != alg.rank()) return false;
  for (int i = 0; i < alg.rank(); ++i)
    for (int j = 0; j < alg.rank(); ++j)
      if (mod.left(i, j) != alg.prod(i, j) || mod.right(i, j) != alg.prod(i, j))
        return false;
  return true;
}

Cochain graft(const Cochain& f, const Cochain& g, int slot) {
  const int m = f.degree(), n = g.degree();
  if (m < 1 || n < 1) throw Error("graft: degrees must be >= 1");
  if (slot < 1 || slot > m) throw Error("graft: slot out of range");
  if (f.algebra() != g.algebra() || f.coefficients() != g.coefficients())
    throw Error("graft: mismatched complexes");
  if (!is_regular(*f.coefficients()))
    throw Error("graft: needs algebra-valued cochains");

  const int i = slot, r = f.algebra()->rank(), N = m + n - 1;
  Cochain out(f.algebra(), f.coefficients(), N);

  // Rename of g's formal parameters into result coordinates i..i+n-2.
  std::map<Var, Var> gnames;
  for (int j = 1; j <= n - 1; ++j) gnames[Var::lam(j)] = Var::lam(i - 1 + j);

  // Substitution applied to f's formal parameters (non-last slot only):
  // slot i absorbs the whole inserted block, later slots shift by n-1.
  Poly lambda_block;
  for (int k = i; k <= i + n - 1; ++k) lambda_block += Poly::lam(k);
  std::map<Var, Poly> fsubs;
  if (i < m) {
    fsubs[Var::lam(i)] = lambda_block;
    for (int j = i + 1; j <= m - 1; ++j)
      fsubs[Var::lam(j)] = Poly::lam(j + n - 1);
  }
  Poly explicit_sum;  // last-slot case: d shifts by f's explicit parameters
  for (int k = 1; k <= m - 1; ++k) explicit_sum += Poly::lam(k);

  std::vector<int> ftuple(m);
  for (int idx = 0; idx < out.tuple_count(); ++idx) {
    std::vector<int> t = out.tuple_at(idx);
    PolyVector G = g.value(std::span<const int>(t).subspan(i - 1, n));
    if (G.is_zero()) continue;
    if (!gnames.empty()) G = G.rename(gnames);

    for (int k = 0; k < i - 1; ++k) ftuple[k] = t[k];
    for (int k = i; k < m; ++k) ftuple[k] = t[k + n - 1];

    PolyVector acc(r);
    for (int k = 0; k < r; ++k) {
      if (G[k].is_zero()) continue;
      ftuple[i - 1] = k;
      const PolyVector& fv = f.value(ftuple);
      if (fv.is_zero()) continue;
      if (i < m) {
        Poly c = G[k].substitute(Var::del(), -lambda_block);
        acc += fv.substitute_all(fsubs) * c;
      } else {
        Poly c = G[k].substitute(Var::del(), Poly::del() + explicit_sum);
        acc += fv * c;
      }
    }
    out.set_value(t, std::move(acc));
  }
  return out;
}

Cochain element_coboundary(AlgebraPtr alg, BimodulePtr coeffs,
                           const PolyVector& element) {
  Cochain out(alg, coeffs, 1);
  if (element.rank() != coeffs->rank())
    throw Error("element_coboundary: element rank mismatch");
  for (int k = 0; k < element.rank(); ++k)
    for (Var v : element[k].vars())
      if (!v.is_del()) throw Error("element_coboundary: element must use only d");

  const Poly omega = Poly::lam(1);
  for (int a = 0; a < alg->rank(); ++a) {
    PolyVector ea = PolyVector::unit(alg->rank(), a);
    PolyVector lv = left_action(*coeffs, ea, element, omega)
                        .substitute(Var::lam(1), -Poly::del());
    PolyVector rv = right_action(*coeffs, element, ea, omega)
                        .substitute(Var::lam(1), Poly());
    int t[1] = {a};
    out.set_value(t, lv - rv);
  }
  return out;
}

Cochain differential(const Cochain& phi) {
  const int n = phi.degree();
  AlgebraPtr alg = phi.algebra();
  BimodulePtr coeffs = phi.coefficients();
  if (n == 0) return element_coboundary(alg, coeffs, phi.value({}));

  const int r = alg->rank();
  Cochain out(alg, coeffs, n + 1);

  // Rename for the head term: phi's parameters move one slot right.
  std::map<Var, Var> shift_right;
  for (int j = 1; j <= n - 1; ++j) shift_right[Var::lam(j)] = Var::lam(j + 1);

  Poly all_params;  // l1 + ... + ln, the tail term's action parameter
  for (int k = 1; k <= n; ++k) all_params += Poly::lam(k);

  std::vector<PolyVector> units;
  units.reserve(r);
  for (int g = 0; g < r; ++g) units.push_back(PolyVector::unit(r, g));

  for (int idx = 0; idx < out.tuple_count(); ++idx) {
    std::vector<int> t = out.tuple_at(idx);

    // Head: first argument acts from the left on phi of the rest.
    PolyVector head = phi.value(std::span<const int>(t).subspan(1));
    if (!head.is_zero()) {
      if (!shift_right.empty()) head = head.rename(shift_right);
      head = left_action(*coeffs, units[t[0]], head, Poly::lam(1));
    } else {
      head = PolyVector(coeffs->rank());
    }

    // Middle: fold arguments i, i+1 through the product at l<i>.
    PolyVector acc = head;
    std::vector<PolyVector> args(n);
    std::vector<Poly> params(n - 1);
    for (int i = 1; i <= n; ++i) {
      for (int k = 0; k < n; ++k) args[k] = units[t[k < i ? k : k + 1]];
      args[i - 1] =
          lambda_product(*alg, units[t[i - 1]], units[t[i]], Poly::lam(i));
      for (int j = 1; j <= n - 1; ++j) {
        if (j < i)
          params[j - 1] = Poly::lam(j);
        else if (j == i)
          params[j - 1] = Poly::lam(i) + Poly::lam(i + 1);
        else
          params[j - 1] = Poly::lam(j + 1);
      }
      PolyVector mid = phi.evaluate(args, params);
      acc += (i % 2 == 1) ? -mid : mid;
    }

    // Tail: phi of the first n arguments acted on from the right.
    PolyVector tail = phi.value(std::span<const int>(t).first(n));
    if (!tail.is_zero()) {
      tail = right_action(*coeffs, tail, units[t[n]], all_params);
      acc += (n % 2 == 0) ? -tail : tail;
    }
    out.set_value(t, std::move(acc));
  }
  return out;
}

Report d_squared_check(const Cochain& phi) {
  Cochain dd = differential(differential(phi));
  if (dd.is_zero()) return Report::passed("d-squared");
  for (int idx = 0; idx < dd.tuple_count(); ++idx) {
    std::vector<int> t = dd.tuple_at(idx);
    const PolyVector& v = dd.value(t);
    if (!v.is_zero()) {
      bool bimod_ok = check_bimodule(*phi.coefficients()).pass;
      return Report::failed(
          "d-squared",
          Witness{t,
                  std::string("l1..l") + std::to_string(dd.degree() - 1) +
                      "; bimodule precondition " +
                      (bimod_ok ? "holds" : "violated"),
                  v.str_entries()});
    }
  }
  return Report::passed("d-squared");
}

Cochain random_cochain(AlgebraPtr alg, BimodulePtr coeffs, int degree,
                       int d_cap, int l_cap, std::uint64_t seed) {
  if (d_cap < 0 || l_cap < 0) throw Error("random_cochain: negative cap");
  Cochain out(alg, coeffs, degree);
  std::mt19937_64 rng(seed);
  auto coeff = [&] { return make_rational((long)(rng() % 5) - 2); };

  if (degree == 0) {
    PolyVector v(coeffs->rank());
    for (int k = 0; k < coeffs->rank(); ++k) v[k] = Poly(coeff());
    out.set_value({}, std::move(v));
    return out;
  }

  // Monomial streams per (tuple, target): d^a * prod l_j^{b_j}, enumerated
  // in mixed-radix order so the stream is reproducible.
  const int lam_count = degree - 1;
  for (int idx = 0; idx < out.tuple_count(); ++idx) {
    std::vector<int> t = out.tuple_at(idx);
    PolyVector v(coeffs->rank());
    for (int k = 0; k < coeffs->rank(); ++k) {
      Poly p;
      std::vector<int> exps(1 + lam_count, 0);
      for (;;) {
        Poly mono(coeff());
        mono = mono * pow(Poly::del(), exps[0]);
        for (int j = 1; j <= lam_count; ++j)
          mono = mono * pow(Poly::lam(j), exps[j]);
        p += mono;
        int pos = 0;
        while (pos < (int)exps.size()) {
          int cap = pos == 0 ? d_cap : l_cap;
          if (++exps[pos] <= cap) break;
          exps[pos++] = 0;
        }
        if (pos == (int)exps.size()) break;
      }
      v[k] = std::move(p);
    }
    out.set_value(t, std::move(v));
  }
  return out;
}

}  // namespace cfh
