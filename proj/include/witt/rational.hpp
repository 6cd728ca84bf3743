#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "witt/errors.hpp"

namespace witt {

using Int = boost::multiprecision::cpp_int;
// Exact arbitrary-precision rationals; always stored reduced with a positive
// denominator (cpp_rational maintains this canonical form).
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline std::string rat_str(const Rat& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

// Accepts "p", "-p", "p/q" with optional sign on either part; q must be nonzero.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw NotInvertible("zero denominator in '" + s + "'");
    return Rat(num, den);
  } catch (const std::runtime_error& e) {
    throw;
  }
}

inline Int factorial(int n) {
  Int r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// Generalized binomial coefficient C(n, k) for integer n (possibly negative)
// and k >= 0: n(n-1)...(n-k+1)/k!. Always an integer.
inline Int binomial(const Int& n, int k) {
  if (k < 0) return 0;
  Int num = 1;
  for (int j = 0; j < k; ++j) num *= (n - j);
  return num / factorial(k);
}

inline Rat rat_pow(const Rat& x, int e) {
  if (e == 0) return Rat(1);
  if (x == 0) {
    if (e > 0) return Rat(0);
    throw EvalAtPole("0 raised to a negative power");
  }
  Rat base = e > 0 ? x : Rat(1) / x;
  int n = e > 0 ? e : -e;
  Rat r = 1;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

}  // namespace witt
