#pragma once

#include <string>
#include <utility>
#include <vector>

#include "witt/lie.hpp"

namespace witt {

// One base point of a local function: the point x and the jet weights
// alpha_0..alpha_n (n = order of the component).
struct LocalComponent {
  Rat x;
  std::vector<Rat> alpha;

  int order() const { return static_cast<int>(alpha.size()) - 1; }
  int half() const { return order() / 2; }
  bool operator==(const LocalComponent& o) const { return x == o.x && alpha == o.alpha; }
};

// A finitely supported jet functional on the vector-field algebra:
// w = f d/dt  |->  sum_d sum_k alpha_{d,k} f^(k)(x_d)   (and 0 on the center).
// Construction normalizes: trailing zero weights are trimmed, vanished
// components dropped, order-0 components padded to order 1, points sorted.
struct LocalFunction {
  Variant variant = Variant::W;
  std::vector<LocalComponent> comps;

  LocalFunction() = default;
  LocalFunction(Variant var, std::vector<LocalComponent> components);

  bool is_zero() const { return comps.empty(); }
  std::vector<Rat> points() const;
  std::vector<int> orders() const;

  Rat evaluate(const WittElement& w) const;

  // Half-density correction: alpha_1 -= 1/2 on every order-1 component.
  LocalFunction twist() const;
  // True when some order-1 component has alpha_1 == 1/2, so the corrected
  // functional loses that direction.
  bool twist_obstructed() const;

  // Corrected weights of component d (same correction as twist(), without
  // renormalization, so component indices stay aligned).
  std::vector<Rat> alpha_prime(int d) const;

  // Per-component covector on the truncated algebra: entry i is the corrected
  // functional on (t-x_d)^{i+1} d/dt, i = 0..n_d-1.
  std::vector<std::vector<Rat>> project_to_gn() const;

  bool operator==(const LocalFunction& o) const {
    return variant == o.variant && comps == o.comps;
  }

  std::string str() const;
};

// A local function with prescribed per-component covectors: component d is
// based at xs[d] and projects to xis[d].
LocalFunction lift_from_gn(Variant var, const std::vector<Rat>& xs,
                           const std::vector<std::vector<Rat>>& xis);

// Candidate subspace V = { f M d/dt } + span(extras), where M is the monic
// polynomial with the given roots and multiplicities.
struct PolarizationCandidate {
  std::vector<std::pair<Rat, int>> modulus;  // (root, multiplicity >= 1)
  std::vector<WittElement> extras;
};

enum class PolarizationCheck { Ok, NotASubalgebra, NotIsotropic, WrongCodimension };
std::string polarization_check_name(PolarizationCheck c);

// The standard polarization of chi: modulus prod (t-x_d)^{m_d+1}, no extras.
PolarizationCandidate canonical_polarization(const LocalFunction& chi);

// Windowed verification that V is a polarization of chi: closed under the
// bracket, isotropic for B_chi(a,b) = chi([a,b]), and of the right
// codimension sum (m_d + 1).
PolarizationCheck is_polarization(const PolarizationCandidate& cand, const LocalFunction& chi);

// Half-trace of ad(w) on the quotient by the standard polarization; w must lie
// in the standard polarization. Central parts contribute 0.
Rat twist_rho(const LocalFunction& chi, const WittElement& w);

// Same coadjoint pseudo-orbit: orders match as multisets and the
// per-component orbit data agree (up to the residual dilation, over the
// algebraic closure).
bool pseudo_orbit_equal(const LocalFunction& a, const LocalFunction& b);

// The data that determines the annihilator of the induced module.
struct DixmierDescriptor {
  Variant variant = Variant::W;
  std::vector<int> ns;
  std::vector<std::vector<Rat>> chibar;
  bool totally_even = false;

  bool operator==(const DixmierDescriptor& o) const {
    return variant == o.variant && ns == o.ns && chibar == o.chibar &&
           totally_even == o.totally_even;
  }
  std::string str() const;
};

DixmierDescriptor dixmier_descriptor(const LocalFunction& chi);

}  // namespace witt
