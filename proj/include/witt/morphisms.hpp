#pragma once

#include <vector>

#include "witt/env.hpp"
#include "witt/lie.hpp"

namespace witt {

// Structure constant of the y-coordinate Poisson bracket:
// {y_i, y_j} = dcoeff(i, j) * y_{i+j-1} for i, j >= 1.
Rat dcoeff(int i, int j);

// f d/dt as an element of the enveloping algebra (degree-one part).
EnvElement witt_to_env(const WittElement& w, int slots = 1, int slot = 0);
// Inverse of witt_to_env on degree-one elements of a single-slot algebra.
WittElement env_to_witt(const EnvElement& u);

// y-coordinate realization: f d/dt |-> sum_{k<=n} f^(k)(t) y_k.
EnvElement phi_apply(const WittElement& w, int n);
EnvElement phi_apply(const EnvElement& sym, int n);  // on the symmetric algebra

// Identification between the y-coordinate algebra and k[t^{±1}, y0] (x) S(g):
// y_{i+1} <-> v_i / (i+1)!.
EnvElement siso_to_tys(const EnvElement& sn);
EnvElement siso_from_tys(const EnvElement& tys);
// Identify the commutative shadow of a one-block mixed algebra with the same
// target (t -> t, symbol of the derivation -> y0, v -> v).
EnvElement tn_shadow_to_tys(const EnvElement& u);

// First-order realization: f d/dt |-> f(t) d + sum_{i<n} f^(i+1)(t)/(i+1)! v_i.
EnvElement psi_apply(const WittElement& w, int n);
EnvElement psi_apply(const EnvElement& u, int n);

// Multi-block version: each generator maps to the sum of its one-block images
// placed in separate slots.
EnvElement psi_multi_apply(const std::vector<int>& ns, const WittElement& w);
EnvElement psi_multi_apply(const std::vector<int>& ns, const EnvElement& u);

// Iterated coproduct into the ell-fold tensor power (generators primitive).
EnvElement coproduct_power(const EnvElement& u, int ell);

// Weyl realization of the even-width truncated algebra (n = 2m) on
// k[s_0..s_{m-1}]: the module induced, with the zero character, from the
// bracket-closed span of v_0, v_{m-1}, v_{m+1}, ..., v_{2m-2}; the ascending
// complementary letters become the coordinates s_0..s_{m-1}. For m <= 2 this
// is v_{m+j} |-> s_j, v_j |-> sum_{i<m-j} (m+i-j) s_{i+j} d_i; no assignment
// of the form v_{m+j} |-> s_j extends to a homomorphism once m >= 3, so the
// higher widths genuinely need the induced-module operators.
EnvElement phiweyl_apply(const GnElement& g, int m);
EnvElement phiweyl_apply(const EnvElement& u, int m);

// Composite first-order-then-Weyl realization into A_m with the t letter.
EnvElement psibar_apply(const WittElement& w, int m);
EnvElement psibar_apply(const EnvElement& u, int m);
EnvElement psibar_multi_apply(const std::vector<int>& ns, const WittElement& w);
EnvElement psibar_multi_apply(const std::vector<int>& ns, const EnvElement& u);

// Quotient map between mixed algebras dropping v letters above the new bounds.
EnvElement truncate_vs(const EnvElement& u, const std::vector<int>& n_new);

// Central reduction z -> 0 on enveloping elements.
EnvElement env_gamma(const EnvElement& u);

}  // namespace witt
