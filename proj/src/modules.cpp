#include "witt/modules.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "witt/errors.hpp"
#include "witt/matrix.hpp"

namespace witt {

namespace {

void map_add(std::map<ModExps, Rat>& m, const ModExps& k, const Rat& c) {
  if (c == 0) return;
  auto it = m.find(k);
  if (it == m.end()) {
    m.emplace(k, c);
  } else {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

void slot_add(std::map<SlotExps, Rat>& m, const SlotExps& k, const Rat& c) {
  if (c == 0) return;
  auto it = m.find(k);
  if (it == m.end()) {
    m.emplace(k, c);
  } else {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

bool all_zero(const SlotExps& e) {
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Rat falling(int k, int r) {
  Rat f(1);
  for (int i = 0; i < r; ++i) f *= Rat(k - i);
  return f;
}

Rat rat_int_pow(const Rat& b, int p) {
  Rat out(1);
  for (int i = 0; i < p; ++i) out *= b;
  return out;
}

}  // namespace

void ModuleVector::add(const ModExps& e, const Rat& c) { map_add(terms, e, c); }

ModuleVector ModuleVector::operator+(const ModuleVector& o) const {
  ModuleVector out = *this;
  for (const auto& [k, c] : o.terms) map_add(out.terms, k, c);
  return out;
}

ModuleVector ModuleVector::operator-(const ModuleVector& o) const {
  ModuleVector out = *this;
  for (const auto& [k, c] : o.terms) map_add(out.terms, k, -c);
  return out;
}

ModuleVector ModuleVector::operator*(const Rat& s) const {
  ModuleVector out;
  if (s == 0) return out;
  for (const auto& [k, c] : terms) out.terms.emplace(k, c * s);
  return out;
}

std::string ModuleVector::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(c) << "*[";
    for (size_t d = 0; d < k.size(); ++d) {
      if (d) os << "|";
      for (size_t j = 0; j < k[d].size(); ++j) {
        if (j) os << ",";
        os << k[d][j];
      }
    }
    os << "]";
  }
  return os.str();
}

Module::Module(const LocalFunction& chi) : chi_(chi) {
  if (chi_.comps.empty())
    throw SizeMismatch("induced module needs a nonzero jet functional");
  wvar_ = chi_.variant == Variant::Vir ? Variant::W : chi_.variant;
  const int ell = static_cast<int>(chi_.comps.size());
  for (int d = 0; d < ell; ++d) alpha_prime_.push_back(chi_.alpha_prime(d));
  memo_letter_.resize(ell);
  memo_rem_.resize(ell);
  memo_vact_.resize(ell);
}

bool Module::totally_even() const {
  for (int d = 0; d < slots(); ++d)
    if (n(d) % 2 != 0) return false;
  return true;
}

Rat Module::chi_prime_eval(int d, const LaurentPoly& f) const {
  Rat out(0);
  for (int k = 0; k <= n(d); ++k) {
    const Rat& a = alpha_prime_[d][k];
    if (a == 0) continue;
    out += a * Rat(factorial(k)) * f.taylor_coefficient(x(d), k);
  }
  return out;
}

Rat Module::sigma(int d, int j) const {
  if (j + 1 > n(d) || j + 1 < 0) return Rat(0);
  return Rat(factorial(j + 1)) * alpha_prime_[d][j + 1];
}

Rat Module::lmodel_scalar(int d, int j) const {
  Rat out = sigma(d, j);
  if (m(d) == 0 && j == 0) out += 1;
  return out;
}

WittElement Module::u_elem(int d, int j) const {
  return WittElement(wvar_, LaurentPoly::binom_power(x(d), j + 1));
}

ModExps Module::zero_exps() const {
  ModExps e;
  for (int d = 0; d < slots(); ++d) e.push_back(SlotExps(m(d) + 1, 0));
  return e;
}

ModuleVector Module::vacuum() const { return basis(zero_exps()); }

ModuleVector Module::basis(const ModExps& e) const {
  if (static_cast<int>(e.size()) != slots()) throw SizeMismatch("basis key has wrong slot count");
  for (int d = 0; d < slots(); ++d) {
    if (static_cast<int>(e[d].size()) != m(d) + 1)
      throw SizeMismatch("basis key slot has wrong length");
    for (int k : e[d])
      if (k < 0) throw NegativeExponent("basis exponents must be >= 0");
  }
  ModuleVector v;
  v.terms.emplace(e, Rat(1));
  return v;
}

// u_j applied on the left of an ordered slot monomial. Empty monomials are the
// slot vacuum: adapted letters create a basis vector, deeper letters evaluate
// through the corrected functional.
Module::SlotVec Module::act_letter(int d, int j, const SlotExps& e) const {
  auto key = std::make_pair(j, e);
  auto hit = memo_letter_[d].find(key);
  if (hit != memo_letter_[d].end()) return hit->second;

  SlotVec out;
  if (all_zero(e)) {
    if (j <= m(d) - 1) {
      SlotExps b = e;
      b[j + 1] = 1;
      out.emplace(b, Rat(1));
    } else {
      Rat s = sigma(d, j);
      if (s != 0) out.emplace(e, s);
    }
  } else {
    int i_idx = 0;
    while (e[i_idx] == 0) ++i_idx;
    const int i = i_idx - 1;
    if (j <= i) {
      SlotExps b = e;
      b[j + 1] += 1;
      out.emplace(b, Rat(1));
    } else {
      SlotExps e2 = e;
      e2[i_idx] -= 1;
      // u_j u_i = u_i u_j + (i-j) u_{i+j}; every letter produced by the first
      // summand is >= i, so re-attaching u_i keeps the word ordered.
      SlotVec a = act_letter(d, j, e2);
      for (const auto& [k, c] : a) {
        SlotExps k2 = k;
        k2[i_idx] += 1;
        slot_add(out, k2, c);
      }
      const Rat br(i - j);
      SlotVec b = act_letter(d, i + j, e2);
      for (const auto& [k, c] : b) slot_add(out, k, c * br);
    }
  }
  memo_letter_[d].emplace(std::move(key), out);
  return out;
}

Module::SlotVec Module::act_letter_vec(int d, int j, const SlotVec& v) const {
  SlotVec out;
  for (const auto& [k, c] : v) {
    SlotVec a = act_letter(d, j, k);
    for (const auto& [k2, c2] : a) slot_add(out, k2, c * c2);
  }
  return out;
}

// r lies in the stabilizing part at x_d (vanishing order >= m_d + 1 there).
Module::SlotVec Module::act_rem(int d, const WittElement& r, const SlotExps& e) const {
  if (r.f.is_zero()) return {};
  auto key = std::make_pair(r.f.str(), e);
  auto hit = memo_rem_[d].find(key);
  if (hit != memo_rem_[d].end()) return hit->second;

  SlotVec out;
  if (all_zero(e)) {
    Rat c = chi_prime_eval(d, r.f);
    if (c != 0) out.emplace(e, c);
  } else {
    int i_idx = 0;
    while (e[i_idx] == 0) ++i_idx;
    const int i = i_idx - 1;
    SlotExps e2 = e;
    e2[i_idx] -= 1;
    // r u_i = u_i r + [r, u_i]; the bracket can leave the stabilizing part,
    // so it goes back through the full slot action.
    SlotVec inner = act_rem(d, r, e2);
    out = act_letter_vec(d, i, inner);
    WittElement br = witt_bracket(r, u_elem(d, i));
    SlotVec t2 = slot_act(d, br, e2);
    for (const auto& [k, c] : t2) slot_add(out, k, c);
  }
  memo_rem_[d].emplace(std::move(key), out);
  return out;
}

Module::SlotVec Module::slot_act(int d, const WittElement& w, const SlotExps& e) const {
  Coordinates co = coordinates_at_points(w, {{x(d), m(d)}});
  SlotVec out;
  for (int jj = 0; jj <= m(d); ++jj) {
    const Rat& c = co.c[0][jj];
    if (c == 0) continue;
    SlotVec a = act_letter(d, jj - 1, e);
    for (const auto& [k, cc] : a) slot_add(out, k, c * cc);
  }
  if (!co.remainder.f.is_zero()) {
    SlotVec a = act_rem(d, WittElement(wvar_, co.remainder.f), e);
    for (const auto& [k, cc] : a) slot_add(out, k, cc);
  }
  return out;
}

ModuleVector Module::act(const WittElement& w, const ModuleVector& v) const {
  WittElement w2;
  if (w.variant == chi_.variant) {
    w2 = chi_.variant == Variant::Vir ? vir_project(w) : w;
  } else if (w.variant == wvar_) {
    w2 = w;
  } else {
    throw VariantMismatch("cannot act with a " + variant_name(w.variant) +
                          " element on a " + variant_name(chi_.variant) + " module");
  }
  ModuleVector out;
  if (w2.f.is_zero()) return out;
  for (const auto& [e, c] : v.terms) {
    for (int d = 0; d < slots(); ++d) {
      SlotVec sv = slot_act(d, w2, e[d]);
      for (const auto& [k, cc] : sv) {
        ModExps e2 = e;
        e2[d] = k;
        map_add(out.terms, e2, c * cc);
      }
    }
  }
  return out;
}

ModuleVector Module::act(const EnvElement& u, const ModuleVector& v) const {
  if (u.alg.base != Algebra::Base::UWitt || u.alg.slots != 1)
    throw AlgebraMismatch("module action expects a one-slot enveloping element, got " +
                          u.alg.name());
  if (u.alg.variant != chi_.variant && u.alg.variant != wvar_)
    throw VariantMismatch("cannot act with " + u.alg.name() + " on a " +
                          variant_name(chi_.variant) + " module");
  ModuleVector out;
  for (const auto& [word, c] : u.terms) {
    ModuleVector cur = v * c;
    for (auto it = word.rbegin(); it != word.rend() && !cur.is_zero(); ++it) {
      const auto& [b, p] = *it;
      if (p < 0) throw NegativeExponent("module action needs nonnegative exponents");
      if (b.kind == Kind::Z) {
        cur = ModuleVector();  // the center acts by 0
      } else if (b.kind == Kind::E) {
        WittElement w = WittElement::e(wvar_, b.idx);
        for (int q = 0; q < p && !cur.is_zero(); ++q) cur = act(w, cur);
      } else {
        throw AlgebraMismatch("unexpected letter in module action");
      }
    }
    for (const auto& [k, cc] : cur.terms) map_add(out.terms, k, cc);
  }
  return out;
}

GeneratorReduction reduce_to_generator(const Module& mod, const ModuleVector& v) {
  if (v.is_zero()) throw ZeroVector("cannot reduce the zero vector to a generator");
  if (mod.chi().twist_obstructed())
    throw TwistObstruction("a corrected order-1 component vanishes; the cyclic reduction fails");

  const int ell = mod.slots();
  const Algebra UA = Algebra::UW(mod.wvariant());
  EnvElement y_total = EnvElement::unit(UA);
  ModuleVector z = v;

  auto chi_prime_full = [&](const LaurentPoly& f) {
    Rat out(0);
    for (int d = 0; d < ell; ++d) out += mod.chi_prime_eval(d, f);
    return out;
  };

  for (int d = 0; d < ell; ++d) {
    const ModExps& lead = z.terms.rbegin()->first;
    const SlotExps s = lead[d];
    const int nd = mod.n(d);
    const int md = mod.m(d);

    // Multiplier vanishing deeply enough at every other point that the stage
    // operators act on that slot by zero, even across the u_{-1} letters.
    LaurentPoly q(Rat(1));
    for (int e = 0; e < ell; ++e) {
      if (e == d) continue;
      int ke = 0;
      for (const auto& [key, c] : z.terms) ke = std::max(ke, key[e][0]);
      q = q * LaurentPoly::binom_power(mod.x(e), mod.n(e) + 1 + ke);
    }

    auto ubar = [&](int j) {
      return WittElement(mod.wvariant(), q * LaurentPoly::binom_power(mod.x(d), j + 1));
    };

    const Rat a0 = chi_prime_full(ubar(nd - 1).f);
    EnvElement yd = witt_to_env(ubar(nd - 1 + s[0]));
    for (int i = 0; i < md; ++i) {
      if (s[i + 1] == 0) continue;
      const Rat ai = chi_prime_full(ubar(nd - 1 - i).f);
      EnvElement xi = (witt_to_env(ubar(nd - 1 - i)) - EnvElement::scalar(UA, ai)) *
                      (Rat(1) / (Rat(2 * i - nd + 1) * a0));
      yd = multiply(power(xi, s[i + 1]), yd);
    }

    z = mod.act(yd, z);
    y_total = multiply(yd, y_total);
  }

  if (z.terms.size() != 1 || z.terms.begin()->first != mod.zero_exps())
    throw std::logic_error("cyclic reduction did not land on the vacuum line");
  return {y_total, z.terms.begin()->second};
}

// ---------------------------------------------------------------------------
// First-order model.

Module::SlotVec Module::vact(int d, int i, const SlotExps& ve) const {
  auto key = std::make_pair(i, ve);
  auto hit = memo_vact_[d].find(key);
  if (hit != memo_vact_[d].end()) return hit->second;

  SlotVec out;
  if (all_zero(ve)) {
    if (i < m(d)) {
      SlotExps b = ve;
      b[i] = 1;
      out.emplace(b, Rat(1));
    } else {
      Rat s = lmodel_scalar(d, i);
      if (s != 0) out.emplace(ve, s);
    }
  } else {
    int j0 = 0;
    while (ve[j0] == 0) ++j0;
    if (i <= j0) {
      SlotExps b = ve;
      b[i] += 1;
      out.emplace(b, Rat(1));
    } else {
      SlotExps e2 = ve;
      e2[j0] -= 1;
      SlotVec a = vact(d, i, e2);
      for (const auto& [k, c] : a) {
        SlotExps k2 = k;
        k2[j0] += 1;
        slot_add(out, k2, c);
      }
      if (i + j0 < n(d)) {
        const Rat br(j0 - i);
        SlotVec b = vact(d, i + j0, e2);
        for (const auto& [k, c] : b) slot_add(out, k, c * br);
      }
    }
  }
  memo_vact_[d].emplace(std::move(key), out);
  return out;
}

ModuleVector lmodel_vacuum(const Module& mod) {
  ModuleVector v;
  v.terms.emplace(mod.zero_exps(), Rat(1));
  return v;
}

namespace {

// (center - S)^p on the exponent at position `pos` of slot d, where S lowers
// that exponent: S(w^k) = k w^{k-1}. Negative p uses the (finite, since S is
// locally nilpotent) binomial series and needs center != 0.
ModuleVector shift_power(const ModuleVector& v, int d, int pos, const Rat& center, int p) {
  if (p < 0 && center == 0) throw EvalAtPole("negative power at a vanishing center");
  ModuleVector out;
  for (const auto& [e, c] : v.terms) {
    const int k = e[d][pos];
    for (int r = 0; r <= k; ++r) {
      if (center == 0 && p != r) continue;
      Rat coef = Rat(binomial(Int(p), r)) * falling(k, r);
      if (r % 2 != 0) coef = -coef;
      if (coef == 0) continue;
      if (center != 0) coef *= rat_pow(center, p - r);
      ModExps e2 = e;
      e2[d][pos] = k - r;
      map_add(out.terms, e2, c * coef);
    }
  }
  return out;
}

}  // namespace

ModuleVector lmodel_act(const Module& mod, const EnvElement& u, const ModuleVector& v) {
  const Algebra expect = Algebra::TnAlg(mod.ns(), mod.wvariant() == Variant::W);
  if (u.alg != expect)
    throw AlgebraMismatch("first-order model expects " + expect.name() + ", got " +
                          u.alg.name());
  ModuleVector out;
  for (const auto& [word, c] : u.terms) {
    ModuleVector cur = v * c;
    for (auto it = word.rbegin(); it != word.rend() && !cur.is_zero(); ++it) {
      const auto& [b, p] = *it;
      const int d = b.slot;
      if (b.kind == Kind::S) {
        cur = shift_power(cur, d, 0, mod.x(d), p);
      } else if (b.kind == Kind::D) {
        if (p < 0) throw NegativeExponent("derivation letters need nonnegative exponents");
        ModuleVector nxt;
        for (const auto& [e, cc] : cur.terms) {
          ModExps e2 = e;
          e2[d][0] += p;
          nxt.terms.emplace(std::move(e2), cc);
        }
        cur = std::move(nxt);
      } else if (b.kind == Kind::V) {
        if (p < 0) throw NegativeExponent("v letters need nonnegative exponents");
        for (int q = 0; q < p && !cur.is_zero(); ++q) {
          ModuleVector nxt;
          for (const auto& [e, cc] : cur.terms) {
            SlotExps ve(e[d].begin() + 1, e[d].end());
            auto sv = mod.vact(d, b.idx, ve);
            for (const auto& [k, c2] : sv) {
              ModExps e2 = e;
              std::copy(k.begin(), k.end(), e2[d].begin() + 1);
              map_add(nxt.terms, e2, cc * c2);
            }
          }
          cur = std::move(nxt);
        }
      } else {
        throw AlgebraMismatch("unexpected letter in first-order model action");
      }
    }
    for (const auto& [k, cc] : cur.terms) map_add(out.terms, k, cc);
  }
  return out;
}

ModuleVector theta_L(const Module& mod, const ModuleVector& v) {
  ModuleVector out;
  for (const auto& [e, c] : v.terms) {
    std::vector<std::pair<ModExps, Rat>> acc = {{e, c}};
    for (int d = 0; d < mod.slots(); ++d) {
      if (mod.m(d) == 0) continue;
      const int k0 = e[d][1];
      if (k0 == 0) continue;
      std::vector<std::pair<ModExps, Rat>> nxt;
      for (const auto& [ee, cc] : acc) {
        for (int j = 0; j <= k0; ++j) {
          Rat coef = Rat(binomial(Int(k0), j));
          if ((k0 - j) % 2 != 0) coef = -coef;
          ModExps e2 = ee;
          e2[d][1] = j;
          nxt.emplace_back(std::move(e2), cc * coef);
        }
      }
      acc = std::move(nxt);
    }
    for (const auto& [ee, cc] : acc) map_add(out.terms, ee, cc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weyl model (all component orders even).

namespace {

std::vector<int> half_orders(const Module& mod) {
  std::vector<int> ms;
  for (int d = 0; d < mod.slots(); ++d) ms.push_back(mod.m(d));
  return ms;
}

void require_totally_even(const Module& mod) {
  if (!mod.totally_even())
    throw NotTotallyEven("the Weyl model needs every component order even");
}

}  // namespace

ModuleVector nmodel_vacuum(const Module& mod) {
  require_totally_even(mod);
  ModuleVector v;
  v.terms.emplace(mod.zero_exps(), Rat(1));
  return v;
}

ModuleVector nmodel_act(const Module& mod, const EnvElement& u, const ModuleVector& v) {
  require_totally_even(mod);
  const Algebra expect = Algebra::AnAlg(half_orders(mod), true, mod.wvariant() == Variant::W);
  if (u.alg != expect)
    throw AlgebraMismatch("Weyl model expects " + expect.name() + ", got " + u.alg.name());
  ModuleVector out;
  for (const auto& [word, c] : u.terms) {
    ModuleVector cur = v * c;
    for (auto it = word.rbegin(); it != word.rend() && !cur.is_zero(); ++it) {
      const auto& [b, p] = *it;
      const int d = b.slot;
      if (b.kind == Kind::S) {
        const Rat center = b.idx == 0 ? mod.x(d) : mod.sigma(d, mod.m(d) + b.idx - 1);
        cur = shift_power(cur, d, b.idx, center, p);
      } else if (b.kind == Kind::D) {
        if (p < 0) throw NegativeExponent("derivation letters need nonnegative exponents");
        ModuleVector nxt;
        for (const auto& [e, cc] : cur.terms) {
          ModExps e2 = e;
          e2[d][b.idx] += p;
          nxt.terms.emplace(std::move(e2), cc);
        }
        cur = std::move(nxt);
      } else {
        throw AlgebraMismatch("unexpected letter in Weyl model action");
      }
    }
    for (const auto& [k, cc] : cur.terms) map_add(out.terms, k, cc);
  }
  return out;
}

namespace {

EnvElement reslot(const EnvElement& u, const Algebra& target, int d) {
  EnvElement out(target);
  for (const auto& [word, c] : u.terms) {
    Monomial w2 = word;
    for (auto& [b, p] : w2) b.slot = d;
    out.add_term(w2, c);
  }
  return out;
}

}  // namespace

ModuleVector theta_N(const Module& mod, const ModuleVector& v) {
  require_totally_even(mod);
  const Algebra UA = Algebra::UW(mod.wvariant());
  const Algebra target = Algebra::AnAlg(half_orders(mod), true, mod.wvariant() == Variant::W);
  ModuleVector out;
  const ModuleVector vac = nmodel_vacuum(mod);
  for (const auto& [e, c] : v.terms) {
    EnvElement op = EnvElement::unit(target);
    for (int d = 0; d < mod.slots(); ++d) {
      EnvElement word = EnvElement::unit(UA);
      for (int j = -1; j < mod.m(d); ++j) {
        const int k = e[d][j + 1];
        if (k > 0) word = multiply(word, power(witt_to_env(mod.u_elem(d, j)), k));
      }
      EnvElement img = psibar_multi_apply({mod.n(d)}, word);
      op = multiply(op, reslot(img, target, d));
    }
    ModuleVector contrib = nmodel_act(mod, op, vac) * c;
    for (const auto& [k, cc] : contrib.terms) map_add(out.terms, k, cc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Annihilator membership.

EnvElement annihilator_grid_value(const Module& mod, const EnvElement& z,
                                  const std::vector<int>& grid) {
  const Algebra& G = z.alg;
  if (G.base != Algebra::Base::UGn)
    throw AlgebraMismatch("grid evaluation expects a truncated-current element");
  std::vector<std::pair<int, int>> pos;
  for (int d = 0; d < mod.slots(); ++d)
    for (int i = 0; i < mod.m(d); ++i) pos.emplace_back(d, i);
  if (grid.size() != pos.size()) throw SizeMismatch("grid point has wrong arity");

  EnvElement mono = EnvElement::unit(G);
  {
    Monomial w;
    for (size_t p = 0; p < pos.size(); ++p)
      if (grid[p] > 0) w.push_back({BasisIndex::v(pos[p].first, pos[p].second), grid[p]});
    mono = EnvElement(G);
    mono.add_term(w, Rat(1));
  }
  EnvElement zk = multiply(z, mono);

  EnvElement out(G);
  for (const auto& [word, c] : zk.terms) {
    Rat scal = c;
    Monomial rest;
    for (const auto& [b, p] : word) {
      if (b.idx >= mod.m(b.slot)) {
        scal *= rat_int_pow(mod.lmodel_scalar(b.slot, b.idx), p);
        if (scal == 0) break;
      } else {
        rest.push_back({b, p});
      }
    }
    if (scal != 0) out.add_term(rest, scal);
  }
  return out;
}

bool annihilates(const Module& mod, const EnvElement& u) {
  if (u.alg.base != Algebra::Base::UWitt || u.alg.slots != 1)
    throw AlgebraMismatch("annihilator test expects a one-slot enveloping element");
  if (u.alg.variant != mod.variant() && u.alg.variant != mod.wvariant())
    throw VariantMismatch("annihilator test got " + u.alg.name() + " for a " +
                          variant_name(mod.variant()) + " module");
  EnvElement u2 = u.alg.variant == Variant::Vir ? env_gamma(u) : u;
  const std::vector<int> ns = mod.ns();

  if (mod.totally_even()) return psi_multi_apply(ns, u2).is_zero();

  EnvElement w = psi_multi_apply(ns, u2);
  const Algebra G = Algebra::UGnAlg(ns);

  std::map<Monomial, EnvElement> groups;
  for (const auto& [word, c] : w.terms) {
    Monomial weyl, vpart;
    for (const auto& [b, p] : word) {
      if (b.kind == Kind::V)
        vpart.push_back({b, p});
      else
        weyl.push_back({b, p});
    }
    auto it = groups.find(weyl);
    if (it == groups.end()) it = groups.emplace(weyl, EnvElement(G)).first;
    it->second.add_term(vpart, c);
  }

  std::vector<std::pair<int, int>> pos;
  for (int d = 0; d < mod.slots(); ++d)
    for (int i = 0; i < mod.m(d); ++i) pos.emplace_back(d, i);

  for (const auto& [weyl, zm] : groups) {
    int deg = 0;
    for (const auto& [word, c] : zm.terms) {
      int t = 0;
      for (const auto& [b, p] : word) t += p;
      deg = std::max(deg, t);
    }
    std::vector<int> grid(pos.size(), 0);
    while (true) {
      if (!annihilator_grid_value(mod, zm, grid).is_zero()) return false;
      size_t p = 0;
      while (p < grid.size() && grid[p] == deg) grid[p++] = 0;
      if (p == grid.size()) break;
      ++grid[p];
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Kernel slices and the windowed annihilator comparison.

namespace {

void enumerate_monomials(const std::vector<int>& letters, size_t at, int used, int max_total,
                         std::vector<int>& exps, const std::function<void()>& emit) {
  if (at == letters.size()) {
    if (used >= 1) emit();
    return;
  }
  for (int k = 0; used + k <= max_total; ++k) {
    exps[at] = k;
    enumerate_monomials(letters, at + 1, used + k, max_total, exps, emit);
  }
  exps[at] = 0;
}

std::vector<EnvElement> pbw_monomials(Variant var, int max_support, int max_filtration,
                                      bool use_weight, int weight) {
  if (var == Variant::Vir)
    throw VariantMismatch("kernel slices are defined for the vector-field variants");
  const Algebra A = Algebra::UW(var);
  std::vector<int> letters;
  for (int i = (var == Variant::Wm1 ? -1 : -max_support); i <= max_support; ++i)
    letters.push_back(i);
  std::vector<EnvElement> out;
  std::vector<int> exps(letters.size(), 0);
  enumerate_monomials(letters, 0, 0, max_filtration, exps, [&]() {
    if (use_weight) {
      int wsum = 0;
      for (size_t j = 0; j < letters.size(); ++j) wsum += letters[j] * exps[j];
      if (wsum != weight) return;
    }
    Monomial m;
    for (size_t j = 0; j < letters.size(); ++j)
      if (exps[j] > 0) m.push_back({BasisIndex::e(letters[j]), exps[j]});
    EnvElement u(A);
    u.add_term(m, Rat(1));
    out.push_back(std::move(u));
  });
  return out;
}

std::vector<EnvElement> kernel_combos(const std::vector<EnvElement>& monos,
                                      const std::vector<EnvElement>& images) {
  std::map<Monomial, int> row_of;
  for (const auto& img : images)
    for (const auto& [word, c] : img.terms)
      row_of.emplace(word, 0);
  int r = 0;
  for (auto& [word, idx] : row_of) idx = r++;
  RatMatrix a(r, static_cast<int>(images.size()));
  for (size_t j = 0; j < images.size(); ++j)
    for (const auto& [word, c] : images[j].terms)
      a.at(row_of[word], static_cast<int>(j)) = c;
  std::vector<EnvElement> out;
  for (const auto& ker : a.nullspace()) {
    EnvElement combo(monos.front().alg);
    for (size_t j = 0; j < monos.size(); ++j) {
      if (ker[j] == 0) continue;
      combo = combo + monos[j] * ker[j];
    }
    out.push_back(std::move(combo));
  }
  return out;
}

}  // namespace

std::vector<EnvElement> slice_kernel(Variant var, const std::vector<int>& ns, int max_support,
                                     int max_filtration, int weight) {
  std::vector<EnvElement> monos = pbw_monomials(var, max_support, max_filtration, true, weight);
  if (monos.empty()) return {};
  std::vector<EnvElement> images;
  images.reserve(monos.size());
  for (const auto& u : monos) images.push_back(psi_multi_apply(ns, u));
  return kernel_combos(monos, images);
}

bool primreplace_window_check(Variant var, const Rat& x, const Rat& alpha, const Rat& beta,
                              int max_support, int max_filtration, int kmax) {
  const LocalFunction chi(var, {{x, {alpha, Rat(1, 2)}}});
  const LocalFunction eta(var, {{x, {beta, Rat(-1, 2)}}});
  const Module a(chi), b(eta);

  std::vector<EnvElement> monos = pbw_monomials(var, max_support, max_filtration, false, 0);
  if (monos.empty()) return false;

  auto window_basis = [&](const Module& md, int k) {
    ModExps e = md.zero_exps();
    e[0][0] = k;
    return md.basis(e);
  };

  auto window_kernel = [&](const Module& md) {
    std::map<std::pair<int, ModExps>, int> row_of;
    std::vector<std::vector<ModuleVector>> results(monos.size());
    for (size_t j = 0; j < monos.size(); ++j) {
      for (int k = 0; k <= kmax; ++k) {
        ModuleVector r = md.act(monos[j], window_basis(md, k));
        for (const auto& [key, c] : r.terms) row_of.emplace(std::make_pair(k, key), 0);
        results[j].push_back(std::move(r));
      }
    }
    int rr = 0;
    for (auto& [key, idx] : row_of) idx = rr++;
    RatMatrix mat(rr, static_cast<int>(monos.size()));
    for (size_t j = 0; j < monos.size(); ++j)
      for (int k = 0; k <= kmax; ++k)
        for (const auto& [key, c] : results[j][static_cast<size_t>(k)].terms)
          mat.at(row_of[{k, key}], static_cast<int>(j)) = c;
    std::vector<EnvElement> combos;
    for (const auto& ker : mat.nullspace()) {
      EnvElement combo(monos.front().alg);
      for (size_t j = 0; j < monos.size(); ++j)
        if (ker[j] != 0) combo = combo + monos[j] * ker[j];
      combos.push_back(std::move(combo));
    }
    return combos;
  };

  auto kills_window = [&](const EnvElement& u, const Module& md) {
    for (int k = 0; k <= kmax; ++k)
      if (!md.act(u, window_basis(md, k)).is_zero()) return false;
    return true;
  };

  const auto ka = window_kernel(a);
  if (ka.empty()) return false;
  for (const auto& u : ka)
    if (!kills_window(u, b)) return false;
  const auto kb = window_kernel(b);
  if (kb.empty()) return false;
  for (const auto& u : kb)
    if (!kills_window(u, a)) return false;
  return true;
}

}  // namespace witt
