#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "witt/env.hpp"
#include "witt/localfn.hpp"
#include "witt/morphisms.hpp"

namespace witt {

// Exponents of one induced-module basis monomial: per component d the
// exponents of u_{-1,d}, u_{0,d}, ..., u_{m_d-1,d} (slot length m_d + 1),
// where u_{j,d} = (t - x_d)^{j+1} d/dt.
using SlotExps = std::vector<int>;
using ModExps = std::vector<SlotExps>;

struct ModuleVector {
  std::map<ModExps, Rat> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const ModExps& e, const Rat& c);
  ModuleVector operator+(const ModuleVector& o) const;
  ModuleVector operator-(const ModuleVector& o) const;
  ModuleVector operator*(const Rat& s) const;
  bool operator==(const ModuleVector& o) const { return terms == o.terms; }

  std::string str() const;
};

// The induced module attached to a local function: the quotient of the
// enveloping algebra by the corrected character of the standard polarization.
// Basis: ordered monomials in the adapted directions, acting by exact
// normal-ordering recursions (memoized per module).
class Module {
 public:
  explicit Module(const LocalFunction& chi);

  const LocalFunction& chi() const { return chi_; }
  Variant variant() const { return chi_.variant; }
  Variant wvariant() const { return wvar_; }
  int slots() const { return static_cast<int>(chi_.comps.size()); }
  int n(int d) const { return chi_.comps[d].order(); }
  int m(int d) const { return chi_.comps[d].half(); }
  const Rat& x(int d) const { return chi_.comps[d].x; }
  std::vector<int> ns() const { return chi_.orders(); }
  bool totally_even() const;

  // Corrected functional of component d on f d/dt.
  Rat chi_prime_eval(int d, const LaurentPoly& f) const;
  // chi'_d(u_{j,x_d}); meaningful as a scalar action for j >= m_d.
  Rat sigma(int d, int j) const;
  // Scalar of the v_j letter on the first-order model vacuum (j >= m_d).
  Rat lmodel_scalar(int d, int j) const;

  WittElement u_elem(int d, int j) const;  // (t-x_d)^{j+1} d/dt

  ModExps zero_exps() const;
  ModuleVector vacuum() const;
  ModuleVector basis(const ModExps& e) const;

  ModuleVector act(const WittElement& w, const ModuleVector& v) const;
  ModuleVector act(const EnvElement& u, const ModuleVector& v) const;

 private:
  using SlotVec = std::map<SlotExps, Rat>;

  SlotVec act_letter(int d, int j, const SlotExps& e) const;
  SlotVec act_letter_vec(int d, int j, const SlotVec& v) const;
  SlotVec act_rem(int d, const WittElement& r, const SlotExps& e) const;
  SlotVec slot_act(int d, const WittElement& w, const SlotExps& e) const;

  LocalFunction chi_;
  Variant wvar_;
  std::vector<std::vector<Rat>> alpha_prime_;
  mutable std::vector<std::map<std::pair<int, SlotExps>, SlotVec>> memo_letter_;
  mutable std::vector<std::map<std::pair<std::string, SlotExps>, SlotVec>> memo_rem_;

  friend ModuleVector lmodel_act(const Module&, const EnvElement&, const ModuleVector&);
  mutable std::vector<std::map<std::pair<int, SlotExps>, SlotVec>> memo_vact_;
  SlotVec vact(int d, int j, const SlotExps& e) const;
};

// Any vector generates: Y v = c * vacuum with c != 0 and Y an explicit
// enveloping element (product of one operator per component stage).
struct GeneratorReduction {
  EnvElement y;
  Rat c;
};
GeneratorReduction reduce_to_generator(const Module& mod, const ModuleVector& v);

// First-order model: same exponent bookkeeping, with the mixed algebra of the
// first-order realization acting directly.
ModuleVector lmodel_vacuum(const Module& mod);
ModuleVector lmodel_act(const Module& mod, const EnvElement& u, const ModuleVector& v);
// Intertwiner from the induced module to the first-order model.
ModuleVector theta_L(const Module& mod, const ModuleVector& v);

// Weyl-algebra model, available when every component order is even.
ModuleVector nmodel_vacuum(const Module& mod);
ModuleVector nmodel_act(const Module& mod, const EnvElement& u, const ModuleVector& v);
ModuleVector theta_N(const Module& mod, const ModuleVector& v);

// Exact decision procedure for membership in the annihilator of the module.
bool annihilates(const Module& mod, const EnvElement& u);

// The v-letter coefficient of one Weyl-part monomial of the first-order image,
// evaluated on the grid monomial and reduced against the vacuum scalars;
// exposed for the polynomiality spot-checks.
EnvElement annihilator_grid_value(const Module& mod, const EnvElement& z,
                                  const std::vector<int>& grid);

// Basis of the kernel of the first-order realization restricted to the span of
// enveloping monomials with letter indices |i| <= max_support, at most
// max_filtration letters, and total t-degree equal to weight.
std::vector<EnvElement> slice_kernel(Variant var, const std::vector<int>& ns, int max_support,
                                     int max_filtration, int weight);

// Windowed evidence that the half-corrected order-1 components with weights
// (alpha, 1/2) and (beta, -1/2) at the same point produce the same
// annihilator: kernel combos found on one side must kill the other side's
// basis window, in both directions.
bool primreplace_window_check(Variant var, const Rat& x, const Rat& alpha, const Rat& beta,
                              int max_support, int max_filtration, int kmax);

}  // namespace witt
