#pragma once

#include <gmpxx.h>

#include <string>

namespace cfh {

// Exact rational scalar. GMP keeps values canonical (reduced, positive
// denominator) under arithmetic; only raw num/den construction needs an
// explicit canonicalization, which make_rational performs.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace cfh
