#include "witt/laurent.hpp"

#include <sstream>
#include <vector>

namespace witt {

LaurentPoly::LaurentPoly(const Rat& constant) { set(0, constant); }

LaurentPoly LaurentPoly::term(int exp, const Rat& coeff) {
  LaurentPoly p;
  p.set(exp, coeff);
  return p;
}

LaurentPoly LaurentPoly::binom_power(const Rat& x, int k) {
  LaurentPoly p;
  for (int r = 0; r <= k; ++r)
    p.set(r, binomial(Int(k), k - r) * rat_pow(-x, k - r));
  return p;
}

void LaurentPoly::set(int exp, const Rat& v) {
  if (v == 0)
    c_.erase(exp);
  else
    c_[exp] = v;
}

Rat LaurentPoly::coeff(int exp) const {
  auto it = c_.find(exp);
  return it == c_.end() ? Rat(0) : it->second;
}

int LaurentPoly::min_exp() const { return c_.begin()->first; }
int LaurentPoly::max_exp() const { return c_.rbegin()->first; }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (auto& [e, v] : c_) r.c_[e] = -v;
  return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (auto& [e, v] : o.c_) set(e, coeff(e) + v);
  return *this;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (auto& [e1, v1] : c_)
    for (auto& [e2, v2] : o.c_) r.set(e1 + e2, r.coeff(e1 + e2) + v1 * v2);
  return r;
}

LaurentPoly LaurentPoly::operator*(const Rat& s) const {
  LaurentPoly r;
  if (s == 0) return r;
  for (auto& [e, v] : c_) r.c_[e] = v * s;
  return r;
}

LaurentPoly LaurentPoly::pow(int k) const {
  LaurentPoly r(Rat(1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

LaurentPoly LaurentPoly::shifted(int delta) const {
  LaurentPoly r;
  for (auto& [e, v] : c_) r.c_[e + delta] = v;
  return r;
}

LaurentPoly LaurentPoly::derivative() const {
  LaurentPoly r;
  for (auto& [e, v] : c_)
    if (e != 0) r.set(e - 1, Rat(e) * v);
  return r;
}

Rat LaurentPoly::evaluate(const Rat& x) const {
  if (x == 0) {
    if (has_negative_exponents())
      throw EvalAtPole("evaluating a Laurent polynomial with poles at t = 0");
    return coeff(0);
  }
  Rat r = 0;
  for (auto& [e, v] : c_) r += v * rat_pow(x, e);
  return r;
}

Rat LaurentPoly::taylor_coefficient(const Rat& x, int k) const {
  if (x == 0) {
    if (has_negative_exponents())
      throw EvalAtPole("Taylor coefficient at t = 0 of a Laurent polynomial with poles");
    return coeff(k);
  }
  Rat r = 0;
  for (auto& [e, v] : c_) r += v * binomial(Int(e), k) * rat_pow(x, e - k);
  return r;
}

LaurentPoly LaurentPoly::divide_exact(const Rat& x) const {
  if (is_zero()) return LaurentPoly();
  if (evaluate(x) != 0) throw NotDivisible("p(x) != 0 with x = " + rat_str(x));
  if (x == 0) return shifted(-1);
  // Shift to an honest polynomial, run synthetic division, shift back.
  int M = min_exp();
  int N = max_exp() - M;
  std::vector<Rat> a(N + 1);
  for (auto& [e, v] : c_) a[e - M] = v;
  std::vector<Rat> b(N);  // quotient coefficients
  Rat carry = a[N];
  for (int k = N - 1; k >= 0; --k) {
    b[k] = carry;
    carry = a[k] + x * carry;
  }
  LaurentPoly q;
  for (int k = 0; k < N; ++k) q.set(k + M, b[k]);
  return q;
}

std::string LaurentPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto& [e, v] = *it;
    Rat av = v < 0 ? Rat(-v) : v;
    if (first) {
      if (v < 0) os << "-";
      first = false;
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    bool unit = (av == 1) && e != 0;
    if (!unit) os << rat_str(av);
    if (e != 0) {
      if (!unit) os << "*";
      os << var;
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace witt
