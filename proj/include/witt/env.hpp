#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "witt/lie.hpp"

namespace witt {

// Letter kinds, in the order used inside one tensor slot: position-like
// letters (t and the Weyl s_j), then derivation letters (the t-partner and
// the Weyl d_j), then commutative y letters, then v letters, then the central
// letter, then Witt letters. Monomials sort slot-major, then by kind, then by
// index, and normal forms are non-decreasing in this order.
enum class Kind : std::uint8_t { S = 0, D = 1, Y = 2, V = 3, Z = 4, E = 5 };

struct BasisIndex {
  int slot = 0;
  Kind kind = Kind::E;
  int idx = 0;

  auto operator<=>(const BasisIndex&) const = default;

  static BasisIndex e(int i, int slot = 0) { return {slot, Kind::E, i}; }
  static BasisIndex z(int slot = 0) { return {slot, Kind::Z, 0}; }
  static BasisIndex v(int block, int i) { return {block, Kind::V, i}; }
  static BasisIndex y(int i) { return {0, Kind::Y, i}; }
  static BasisIndex t(int slot = 0) { return {slot, Kind::S, 0}; }
  static BasisIndex dt(int slot = 0) { return {slot, Kind::D, 0}; }
  static BasisIndex s(int j, int slot = 0) { return {slot, Kind::S, j + 1}; }
  static BasisIndex d(int j, int slot = 0) { return {slot, Kind::D, j + 1}; }
};

// A word: letters with integer exponents, in arbitrary order (input form) or
// strictly increasing with nonzero exponents (normal form).
using Monomial = std::vector<std::pair<BasisIndex, int>>;

// Which algebra an element lives in. One descriptor covers enveloping
// algebras, their symmetric shadows, Weyl and localized Weyl algebras, the
// mixed tensor algebras, and the y-coordinate Poisson polynomial algebras.
struct Algebra {
  enum class Base : std::uint8_t {
    UWitt,  // e letters (plus z for Vir); tensor powers via slots
    UGn,    // v letters, one block per slot, truncated at blocks[d]
    Sn,     // t and y letters, Poisson polynomial algebra
    TyS,    // t, y0 and v letters: k[t^{±1}, y0] (x) S(g)
    Tn,     // per slot: t, its partner derivation, and a v block
    An      // per slot: optional (t, d) pair plus Weyl pairs (s_j, d_j)
  };

  Base base = Base::UWitt;
  bool commutative = false;
  Variant variant = Variant::W;
  int slots = 1;
  std::vector<int> blocks;  // per-slot v-truncation (UGn/Tn/TyS) or Weyl width m_d (An); -1 = none
  int y_max = -1;           // Sn only: largest y index, -1 = unbounded
  bool t_localized = false;
  bool an_has_t = true;     // An only: whether the (t, d) pair is present

  bool operator==(const Algebra&) const = default;

  static Algebra UW(Variant v, int slots = 1) {
    return {Base::UWitt, false, v, slots, {}, -1, v != Variant::Wm1, true};
  }
  static Algebra SW(Variant v) {
    Algebra a = UW(v);
    a.commutative = true;
    return a;
  }
  static Algebra UGnAlg(std::vector<int> blocks) {
    return {Base::UGn, false, Variant::W, static_cast<int>(blocks.size()), std::move(blocks), -1, false, true};
  }
  static Algebra SGnAlg(std::vector<int> blocks) {
    Algebra a = UGnAlg(std::move(blocks));
    a.commutative = true;
    return a;
  }
  static Algebra SnAlg(int y_max, bool t_loc) {
    return {Base::Sn, true, Variant::W, 1, {}, y_max, t_loc, true};
  }
  static Algebra TySAlg(std::vector<int> blocks, bool t_loc) {
    return {Base::TyS, true, Variant::W, static_cast<int>(blocks.size()), std::move(blocks), -1, t_loc, true};
  }
  static Algebra TnAlg(std::vector<int> blocks, bool t_loc) {
    return {Base::Tn, false, Variant::W, static_cast<int>(blocks.size()), std::move(blocks), -1, t_loc, true};
  }
  static Algebra AnAlg(std::vector<int> blocks, bool with_t, bool t_loc) {
    return {Base::An, false, Variant::W, static_cast<int>(blocks.size()), std::move(blocks), -1, t_loc, with_t};
  }

  std::string name() const;
  void validate_letter(const BasisIndex& b) const;
  bool letter_localized(const BasisIndex& b) const;
  // True when hi, lo form a canonical-commutation pair d s = s d + 1 (hi the
  // derivation, lo the position letter).
  bool weyl_pair(const BasisIndex& hi, const BasisIndex& lo) const;

  struct BracketResult {
    std::vector<std::pair<BasisIndex, Rat>> terms;
    Rat scalar = 0;
  };
  // Lie/Poisson bracket of two letters (antisymmetric); canonical-commutation
  // pairs are handled by the rewriter separately, not through this table.
  BracketResult bracket_letters(const BasisIndex& x, const BasisIndex& y) const;

  int letter_weight(const BasisIndex& b) const;       // t-degree grading
  int letter_filtration(const BasisIndex& b) const;   // order filtration
};

struct EnvElement {
  Algebra alg;
  std::map<Monomial, Rat> terms;

  EnvElement() = default;
  explicit EnvElement(Algebra a) : alg(std::move(a)) {}

  static EnvElement scalar(const Algebra& a, const Rat& c);
  static EnvElement unit(const Algebra& a) { return scalar(a, Rat(1)); }
  static EnvElement letter(const Algebra& a, const BasisIndex& b, int exp = 1);

  bool is_zero() const { return terms.empty(); }
  bool is_scalar(Rat* value = nullptr) const;
  void add_term(const Monomial& m, const Rat& c);

  EnvElement operator+(const EnvElement& o) const;
  EnvElement operator-(const EnvElement& o) const;
  EnvElement operator*(const Rat& s) const;
  bool operator==(const EnvElement& o) const { return alg == o.alg && terms == o.terms; }

  std::string str() const;
};

// Rewrites an arbitrary word into the canonical PBW / Weyl normal form.
EnvElement normal_order(const Algebra& alg, const Monomial& word);

EnvElement multiply(const EnvElement& a, const EnvElement& b);
EnvElement power(const EnvElement& a, int k);
EnvElement commutator(const EnvElement& a, const EnvElement& b);

// Kostant-Kirillov / coordinate Poisson bracket on the commutative algebras.
EnvElement poisson_bracket(const EnvElement& a, const EnvElement& b);

int filtration_degree(const Algebra& alg, const Monomial& m);
int max_filtration_degree(const EnvElement& u);  // 0 for the zero element

Algebra shadow(const Algebra& a);  // commutative copy (associated graded target)
// The degree-d layer of u, reinterpreted commutatively.
EnvElement symbol_at(const EnvElement& u, int d);
// The top-degree layer of u.
EnvElement associated_graded_symbol(const EnvElement& u);

// t-degree of u if homogeneous, nullopt otherwise.
std::optional<int> w_weight(const EnvElement& u);

// Algebra-map evaluation: sends each letter through gen (multiplicatively,
// left to right inside each monomial) into the target algebra.
EnvElement apply_hom(const EnvElement& u, const Algebra& target,
                     const std::function<EnvElement(const BasisIndex&)>& gen);

std::string letter_str(const Algebra& alg, const BasisIndex& b);

}  // namespace witt
