#pragma once

#include <vector>

#include "witt/jet.hpp"
#include "witt/lie.hpp"
#include "witt/matrix.hpp"

namespace witt {

// A jet-group element: the truncated change of coordinate
// s(a) = c_1 a + c_2 a^2 + ... + c_n a^n with c_1 invertible.
struct GroupElement {
  int n = 1;
  std::vector<Rat> c;  // c[k] is the coefficient of a^{k+1}

  GroupElement() = default;
  GroupElement(int n_, std::vector<Rat> coeffs);

  static GroupElement identity(int n);
  // a + alpha a^{k+1} (one-parameter direction)
  static GroupElement one_param(int n, int k, const Rat& alpha);

  bool operator==(const GroupElement& o) const { return n == o.n && c == o.c; }
  std::string str() const;
};

// Matrix of the group element acting on the truncated algebra in the basis
// v_0..v_{n-1}: column i holds the coefficients of a^1..a^n in
// s(a)^{i+1} * (s'(a))^{-1}.
RatMatrix group_matrix(const GroupElement& g);

// "g then h": the composite whose jet is h(g(a)).
GroupElement group_compose(const GroupElement& g, const GroupElement& h);

// Dual (coadjoint) action on a covector xi given in coordinates
// xi_i = <xi, v_i>: xi -> M(g)^T xi.
std::vector<Rat> act_on_dual(const GroupElement& g, const std::vector<Rat>& xi);

struct ReduceResult {
  std::vector<Rat> xi;
  GroupElement witness;  // act_on_dual(witness, input) == xi
};

// Sweep the one-parameter directions to clear every clearable coordinate,
// leaving the canonical representative of the orbit (no dilations are used).
ReduceResult orbit_reduce(const std::vector<Rat>& xi);

// Same orbit over the algebraic closure of the ground field.
bool orbit_equal(const std::vector<Rat>& xi, const std::vector<Rat>& eta);

// Rank of the Kostant-Kirillov form at xi.
int orbit_dimension(const std::vector<Rat>& xi);

// Whether the orbit of eta lies in the closure of the orbit of xi.
bool closure_leq(const std::vector<Rat>& eta, const std::vector<Rat>& xi);

// First-order consistency: the derivative of the group action along the
// direction s = sum_j sigma_j a^j (sigma[j-1] = sigma_j) matches the
// infinitesimal coadjoint action of sum_j sigma_j v_{j-1} at xi.
bool tangent_check(const std::vector<Rat>& xi, const std::vector<Rat>& sigma);

}  // namespace witt
