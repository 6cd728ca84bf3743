#pragma once

#include <vector>

#include "witt/rational.hpp"

namespace witt {

// Dual numbers r + d*h with h^2 = 0, used for exact first-order derivatives.
struct DualNumber {
  Rat v;  // value
  Rat d;  // derivative part (coefficient of h)

  DualNumber(Rat value = Rat(0), Rat deriv = Rat(0))
      : v(std::move(value)), d(std::move(deriv)) {}

  DualNumber operator-() const { return {-v, -d}; }
  DualNumber operator+(const DualNumber& o) const { return {v + o.v, d + o.d}; }
  DualNumber operator-(const DualNumber& o) const { return {v - o.v, d - o.d}; }
  DualNumber operator*(const DualNumber& o) const { return {v * o.v, v * o.d + d * o.v}; }
  DualNumber& operator+=(const DualNumber& o) { *this = *this + o; return *this; }
  DualNumber& operator*=(const DualNumber& o) { *this = *this * o; return *this; }
  bool operator==(const DualNumber& o) const { return v == o.v && d == o.d; }
  bool is_zero() const { return v == 0 && d == 0; }

  DualNumber inverse() const {
    if (v == 0) throw NotInvertible("dual number with zero value part");
    return {Rat(1) / v, -d / (v * v)};
  }
};

inline Rat scalar_inverse(const Rat& x) {
  if (x == 0) throw NotInvertible("zero constant term");
  return Rat(1) / x;
}
inline DualNumber scalar_inverse(const DualNumber& x) { return x.inverse(); }
inline bool scalar_is_zero(const Rat& x) { return x == 0; }
inline bool scalar_is_zero(const DualNumber& x) { return x.is_zero(); }

// Truncated power series in a formal variable a: coefficients of a^0..a^{order-1};
// all arithmetic truncates at a^order. The scalar type is a template parameter so
// the same code drives both exact jets and dual-number (tangent) jets.
template <class S>
struct JetT {
  int order = 1;
  std::vector<S> c;  // size == order

  JetT() : c(1, S(0)) {}
  explicit JetT(int ord) : order(ord), c(ord, S(0)) {}
  JetT(int ord, std::vector<S> coeffs) : order(ord), c(std::move(coeffs)) { c.resize(order, S(0)); }

  static JetT constant(const S& v, int ord) {
    JetT j(ord);
    j.c[0] = v;
    return j;
  }
  static JetT var(int ord) {
    JetT j(ord);
    if (ord > 1) j.c[1] = S(1);
    return j;
  }

  const S& operator[](int k) const { return c[k]; }
  S& operator[](int k) { return c[k]; }

  JetT operator+(const JetT& o) const {
    JetT r(order);
    for (int k = 0; k < order; ++k) r.c[k] = c[k] + o.c[k];
    return r;
  }
  JetT operator-(const JetT& o) const {
    JetT r(order);
    for (int k = 0; k < order; ++k) r.c[k] = c[k] - o.c[k];
    return r;
  }
  JetT operator*(const JetT& o) const {
    JetT r(order);
    for (int i = 0; i < order; ++i)
      for (int j = 0; i + j < order; ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
  }
  JetT operator*(const S& s) const {
    JetT r(order);
    for (int k = 0; k < order; ++k) r.c[k] = c[k] * s;
    return r;
  }
  bool operator==(const JetT& o) const { return order == o.order && c == o.c; }

  bool is_zero() const {
    for (auto& v : c)
      if (!scalar_is_zero(v)) return false;
    return true;
  }

  JetT derivative() const {  // d/da, same truncation order
    JetT r(order);
    for (int k = 1; k < order; ++k) r.c[k - 1] = c[k] * S(k);
    return r;
  }

  // Multiplicative inverse; requires an invertible constant term.
  JetT inverse() const {
    JetT r(order);
    S u0 = scalar_inverse(c[0]);
    r.c[0] = u0;
    for (int k = 1; k < order; ++k) {
      S acc(0);
      for (int j = 1; j <= k; ++j) acc += c[j] * r.c[k - j];
      r.c[k] = -u0 * acc;
    }
    return r;
  }

  JetT pow(int k) const {
    JetT r = constant(S(1), order);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  // this(inner); requires inner constant term zero so powers stabilize.
  JetT compose(const JetT& inner) const {
    JetT r = constant(c[0], order);
    JetT p = constant(S(1), order);
    for (int k = 1; k < order; ++k) {
      p = p * inner;
      r = r + p * c[k];
    }
    return r;
  }

  JetT truncated(int new_order) const {
    JetT r(new_order);
    for (int k = 0; k < new_order && k < order; ++k) r.c[k] = c[k];
    return r;
  }
};

using Jet = JetT<Rat>;

}  // namespace witt
