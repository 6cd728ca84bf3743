#pragma once

#include <map>
#include <string>

#include "witt/rational.hpp"

namespace witt {

// Sparse Laurent polynomial over the rationals: a finitely supported map
// exponent -> coefficient, negative exponents allowed, no stored zeros.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Rat& constant);

  static LaurentPoly term(int exp, const Rat& coeff);
  static LaurentPoly t(int exp = 1) { return term(exp, Rat(1)); }
  // (t - x)^k for k >= 0
  static LaurentPoly binom_power(const Rat& x, int k);

  const std::map<int, Rat>& coeffs() const { return c_; }
  Rat coeff(int exp) const;
  bool is_zero() const { return c_.empty(); }
  bool has_negative_exponents() const { return !c_.empty() && c_.begin()->first < 0; }
  int min_exp() const;  // requires nonzero
  int max_exp() const;  // requires nonzero

  LaurentPoly operator-() const;
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const Rat& s) const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
  bool operator<(const LaurentPoly& o) const { return c_ < o.c_; }

  LaurentPoly pow(int k) const;  // k >= 0
  LaurentPoly shifted(int delta) const;  // multiply by t^delta

  LaurentPoly derivative() const;
  Rat residue() const { return coeff(-1); }
  // p(x); EvalAtPole if x = 0 while negative exponents are present
  Rat evaluate(const Rat& x) const;
  // f^{(k)}(x) / k!  (divided power), exact
  Rat taylor_coefficient(const Rat& x, int k) const;
  // q with p = (t - x) q; NotDivisible if p(x) != 0
  LaurentPoly divide_exact(const Rat& x) const;

  std::string str(const std::string& var = "t") const;

 private:
  std::map<int, Rat> c_;
  void set(int exp, const Rat& v);
};

inline LaurentPoly operator*(const Rat& s, const LaurentPoly& p) { return p * s; }

}  // namespace witt
