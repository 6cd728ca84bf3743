#include "witt/morphisms.hpp"

#include <iterator>
#include <stdexcept>
#include <utility>

#include "witt/errors.hpp"

namespace witt {

Rat dcoeff(int i, int j) {
  if (i < 0 || j < 0) return 0;
  if (i == 0 && j == 0) return 0;  // antisymmetry pins the diagonal corner
  return Rat(binomial(Int(i + j - 1), i) - binomial(Int(i + j - 1), i - 1));
}

EnvElement witt_to_env(const WittElement& w, int slots, int slot) {
  EnvElement out(Algebra::UW(w.variant, slots));
  for (const auto& [a, c] : w.f.coeffs()) out.add_term({{BasisIndex::e(a - 1, slot), 1}}, c);
  if (w.z != 0) out.add_term({{BasisIndex::z(slot), 1}}, w.z);
  return out;
}

WittElement env_to_witt(const EnvElement& u) {
  if (u.alg.base != Algebra::Base::UWitt || u.alg.slots != 1)
    throw AlgebraMismatch("expected a one-slot enveloping element, got " + u.alg.name());
  LaurentPoly f;
  Rat z = 0;
  for (const auto& [m, c] : u.terms) {
    if (m.size() != 1 || m[0].second != 1)
      throw AlgebraMismatch("not a degree-one element: " + u.str());
    const BasisIndex& b = m[0].first;
    if (b.kind == Kind::E)
      f = f + LaurentPoly::term(b.idx + 1, c);
    else
      z += c;
  }
  return WittElement(u.alg.variant, f, z);
}

namespace {

void require_witt_variant(Variant v, const char* what) {
  if (v == Variant::Vir) throw VariantMismatch(std::string(what) + " is not defined on the central extension");
}

}  // namespace

EnvElement phi_apply(const WittElement& w, int n) {
  require_witt_variant(w.variant, "phi");
  EnvElement out(Algebra::SnAlg(n, w.variant == Variant::W));
  LaurentPoly g = w.f;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) g = g.derivative();
    for (const auto& [a, c] : g.coeffs()) {
      Monomial m;
      if (a != 0) m.push_back({BasisIndex::t(), a});
      m.push_back({BasisIndex::y(k), 1});
      out.add_term(m, c);
    }
  }
  return out;
}

EnvElement phi_apply(const EnvElement& sym, int n) {
  if (sym.alg.base != Algebra::Base::UWitt || !sym.alg.commutative || sym.alg.slots != 1)
    throw AlgebraMismatch("phi expects a symmetric-algebra element, got " + sym.alg.name());
  require_witt_variant(sym.alg.variant, "phi");
  const Variant var = sym.alg.variant;
  Algebra target = Algebra::SnAlg(n, var == Variant::W);
  return apply_hom(sym, target, [&](const BasisIndex& b) {
    return phi_apply(WittElement::e(var, b.idx), n);
  });
}

EnvElement siso_to_tys(const EnvElement& sn) {
  if (sn.alg.base != Algebra::Base::Sn)
    throw AlgebraMismatch("expected a y-coordinate element, got " + sn.alg.name());
  const int n = sn.alg.y_max;
  Algebra target = Algebra::TySAlg({n < 0 ? -1 : n}, sn.alg.t_localized);
  return apply_hom(sn, target, [&](const BasisIndex& b) {
    if (b.kind == Kind::S) return EnvElement::letter(target, BasisIndex::t());
    if (b.idx == 0) return EnvElement::letter(target, BasisIndex::y(0));
    return EnvElement::letter(target, BasisIndex::v(0, b.idx - 1)) * (Rat(1) / Rat(factorial(b.idx)));
  });
}

EnvElement siso_from_tys(const EnvElement& tys) {
  if (tys.alg.base != Algebra::Base::TyS || tys.alg.slots != 1)
    throw AlgebraMismatch("expected a one-block element, got " + tys.alg.name());
  const int n = tys.alg.blocks[0];
  Algebra target = Algebra::SnAlg(n < 0 ? -1 : n, tys.alg.t_localized);
  return apply_hom(tys, target, [&](const BasisIndex& b) {
    if (b.kind == Kind::S) return EnvElement::letter(target, BasisIndex::t());
    if (b.kind == Kind::Y) return EnvElement::letter(target, BasisIndex::y(0));
    return EnvElement::letter(target, BasisIndex::y(b.idx + 1)) * Rat(factorial(b.idx + 1));
  });
}

EnvElement tn_shadow_to_tys(const EnvElement& u) {
  if (u.alg.base != Algebra::Base::Tn || !u.alg.commutative || u.alg.slots != 1)
    throw AlgebraMismatch("expected the shadow of a one-block mixed algebra, got " + u.alg.name());
  Algebra target = Algebra::TySAlg({u.alg.blocks[0]}, u.alg.t_localized);
  return apply_hom(u, target, [&](const BasisIndex& b) {
    if (b.kind == Kind::S) return EnvElement::letter(target, BasisIndex::t());
    if (b.kind == Kind::D) return EnvElement::letter(target, BasisIndex::y(0));
    return EnvElement::letter(target, BasisIndex::v(0, b.idx));
  });
}

EnvElement psi_multi_apply(const std::vector<int>& ns, const WittElement& w) {
  require_witt_variant(w.variant, "psi");
  Algebra target = Algebra::TnAlg(ns, w.variant == Variant::W);
  EnvElement out(target);
  for (int d = 0; d < static_cast<int>(ns.size()); ++d) {
    for (const auto& [a, c] : w.f.coeffs()) {
      Monomial m;
      if (a != 0) m.push_back({BasisIndex::t(d), a});
      m.push_back({BasisIndex::dt(d), 1});
      out.add_term(m, c);
    }
    LaurentPoly g = w.f;
    for (int i = 0; i < ns[d]; ++i) {
      g = g.derivative();
      const Rat inv = Rat(1) / Rat(factorial(i + 1));
      for (const auto& [a, c] : g.coeffs()) {
        Monomial m;
        if (a != 0) m.push_back({BasisIndex::t(d), a});
        m.push_back({BasisIndex::v(d, i), 1});
        out.add_term(m, c * inv);
      }
    }
  }
  return out;
}

EnvElement psi_apply(const WittElement& w, int n) { return psi_multi_apply({n}, w); }

EnvElement psi_multi_apply(const std::vector<int>& ns, const EnvElement& u) {
  if (u.alg.base != Algebra::Base::UWitt || u.alg.commutative || u.alg.slots != 1)
    throw AlgebraMismatch("psi expects a one-slot enveloping element, got " + u.alg.name());
  require_witt_variant(u.alg.variant, "psi");
  const Variant var = u.alg.variant;
  Algebra target = Algebra::TnAlg(ns, var == Variant::W);
  return apply_hom(u, target, [&](const BasisIndex& b) {
    return psi_multi_apply(ns, WittElement::e(var, b.idx));
  });
}

EnvElement psi_apply(const EnvElement& u, int n) { return psi_multi_apply({n}, u); }

EnvElement coproduct_power(const EnvElement& u, int ell) {
  if (u.alg.base != Algebra::Base::UWitt || u.alg.commutative || u.alg.slots != 1)
    throw AlgebraMismatch("coproduct expects a one-slot enveloping element, got " + u.alg.name());
  if (ell < 1) throw SizeMismatch("tensor power must be positive");
  Algebra target = Algebra::UW(u.alg.variant, ell);
  return apply_hom(u, target, [&](const BasisIndex& b) {
    EnvElement s(target);
    for (int d = 0; d < ell; ++d) s.add_term({{BasisIndex{d, b.kind, b.idx}, 1}}, 1);
    return s;
  });
}

namespace {

// The Weyl realization of U(g_{2m}) on k[s_0..s_{m-1}] is the induced module
// attached to the subalgebra spanned by v_0, v_{m-1}, v_{m+1}, ..., v_{2m-2}
// (for m = 1, by v_0 alone) with the zero character; that span is closed
// under the bracket and the complementary indices below give the coordinate
// letters, listed in increasing order.
std::vector<int> weyl_coordinates(int m) {
  if (m == 1) return {1};
  std::vector<int> c;
  for (int i = 1; i <= m - 2; ++i) c.push_back(i);
  c.push_back(m);
  c.push_back(2 * m - 1);
  return c;
}

// Action of the basis letter v_k on the monomial s^a of the induced module:
// normal-order v_k through the coordinate word; letters of the inducing
// subalgebra evaluate to zero on the cyclic vector. Every bracket step
// strictly raises the truncation index, so the recursion terminates.
std::map<std::vector<int>, Rat> weyl_letter_act(int m, int k, const std::vector<int>& a) {
  std::map<std::vector<int>, Rat> out;
  if (k >= 2 * m) return out;
  const std::vector<int> coords = weyl_coordinates(m);
  int kp = -1;
  for (int i = 0; i < m; ++i)
    if (coords[i] == k) kp = i;
  int i0 = -1;
  for (int i = 0; i < m; ++i)
    if (a[i] > 0) {
      i0 = i;
      break;
    }
  if (i0 < 0) {
    if (kp >= 0) {
      std::vector<int> b(m, 0);
      b[kp] = 1;
      out[b] = 1;
    }
    return out;
  }
  const int c = coords[i0];
  if (kp >= 0 && k <= c) {
    std::vector<int> b = a;
    b[kp] += 1;
    out[b] = 1;
    return out;
  }
  std::vector<int> rest = a;
  rest[i0] -= 1;
  for (const auto& [b, q] : weyl_letter_act(m, k, rest)) {
    std::vector<int> b2 = b;
    b2[i0] += 1;
    out[b2] += q;
  }
  if (k + c < 2 * m) {
    const Rat f(c - k);
    for (const auto& [b, q] : weyl_letter_act(m, k + c, rest)) out[b] += q * f;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

Rat falling_product(const std::vector<int>& a, const std::vector<int>& al) {
  Rat r = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (al[i] > a[i]) return Rat(0);
    for (int j = 0; j < al[i]; ++j) r *= Rat(a[i] - j);
  }
  return r;
}

std::vector<std::vector<int>> exponents_of_degree(int m, int deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(m, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == m - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, deg);
  return out;
}

// Each v_k acts as a differential operator of order at most 2m with
// polynomial coefficients; recover s^beta d^alpha coefficients from the
// matrix elements on low monomials by a solve that is triangular in |alpha|,
// then confirm the truncation order on the next degree layer.
EnvElement weyl_generator_image(int m, int k) {
  std::vector<std::vector<int>> alphas;
  for (int deg = 0; deg <= 2 * m; ++deg)
    for (auto& a : exponents_of_degree(m, deg)) alphas.push_back(a);
  std::map<std::vector<int>, std::map<std::vector<int>, Rat>> p;
  for (const auto& alpha : alphas) {
    std::map<std::vector<int>, Rat> rhs = weyl_letter_act(m, k, alpha);
    for (const auto& [alpha2, poly] : p) {
      const Rat fall = falling_product(alpha, alpha2);
      if (fall == 0) continue;
      for (const auto& [beta, c] : poly) {
        std::vector<int> b2 = beta;
        for (int i = 0; i < m; ++i) b2[i] += alpha[i] - alpha2[i];
        rhs[b2] -= c * fall;
      }
    }
    Rat afact = 1;
    for (int e : alpha) afact *= Rat(factorial(e));
    std::map<std::vector<int>, Rat>& tgt = p[alpha];
    for (const auto& [beta, c] : rhs)
      if (c != 0) tgt[beta] = c / afact;
  }
  for (const auto& a : exponents_of_degree(m, 2 * m + 1)) {
    std::map<std::vector<int>, Rat> lhs;
    for (const auto& [alpha, poly] : p) {
      const Rat fall = falling_product(a, alpha);
      if (fall == 0) continue;
      for (const auto& [beta, c] : poly) {
        std::vector<int> b2 = beta;
        for (int i = 0; i < m; ++i) b2[i] += a[i] - alpha[i];
        lhs[b2] += c * fall;
      }
    }
    for (auto it = lhs.begin(); it != lhs.end();)
      it = it->second == 0 ? lhs.erase(it) : std::next(it);
    if (lhs != weyl_letter_act(m, k, a))
      throw std::logic_error("Weyl realization operator reconstruction failed");
  }
  EnvElement out(Algebra::AnAlg({m}, false, false));
  for (const auto& [alpha, poly] : p)
    for (const auto& [beta, c] : poly) {
      Monomial mo;
      for (int j = 0; j < m; ++j)
        if (beta[j] != 0) mo.push_back({BasisIndex::s(j), beta[j]});
      for (int j = 0; j < m; ++j)
        if (alpha[j] != 0) mo.push_back({BasisIndex::d(j), alpha[j]});
      out.add_term(mo, c);
    }
  return out;
}

const EnvElement& phiweyl_generator(int m, int k) {
  static std::map<std::pair<int, int>, EnvElement> cache;
  const auto key = std::make_pair(m, k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, weyl_generator_image(m, k)).first;
  return it->second;
}

// Image of v_j under the Weyl realization, with an optional t-power prefix.
void add_phiweyl_image(EnvElement& out, int m, int slot, int j, int t_exp, const Rat& coeff) {
  const EnvElement& gen = phiweyl_generator(m, j);
  for (const auto& [word, c] : gen.terms) {
    Monomial mo;
    if (t_exp != 0) mo.push_back({BasisIndex::t(slot), t_exp});
    for (const auto& [b, p] : word) mo.push_back({BasisIndex{slot, b.kind, b.idx}, p});
    out.add_term(mo, c * coeff);
  }
}

}  // namespace

EnvElement phiweyl_apply(const GnElement& g, int m) {
  if (m < 1) throw SizeMismatch("Weyl realization needs m >= 1");
  if (g.n != 2 * m) throw SizeMismatch("Weyl realization needs truncation width 2m");
  EnvElement out(Algebra::AnAlg({m}, false, false));
  for (int j = 0; j < g.n; ++j)
    if (g.c[j] != 0) add_phiweyl_image(out, m, 0, j, 0, g.c[j]);
  return out;
}

EnvElement phiweyl_apply(const EnvElement& u, int m) {
  if (m < 1) throw SizeMismatch("Weyl realization needs m >= 1");
  if (u.alg.base != Algebra::Base::UGn || u.alg.commutative || u.alg.slots != 1)
    throw AlgebraMismatch("expected a one-block truncated enveloping element, got " + u.alg.name());
  if (u.alg.blocks[0] != 2 * m) throw SizeMismatch("Weyl realization needs truncation width 2m");
  Algebra target = Algebra::AnAlg({m}, false, false);
  return apply_hom(u, target, [&](const BasisIndex& b) {
    EnvElement img(target);
    add_phiweyl_image(img, m, 0, b.idx, 0, 1);
    return img;
  });
}

EnvElement psibar_multi_apply(const std::vector<int>& ns, const WittElement& w) {
  require_witt_variant(w.variant, "psibar");
  std::vector<int> ms;
  for (int n : ns) {
    if (n < 0 || n % 2 != 0) throw NotTotallyEven("all truncation widths must be even");
    ms.push_back(n / 2);
  }
  Algebra target = Algebra::AnAlg(ms, true, w.variant == Variant::W);
  EnvElement out(target);
  for (int d = 0; d < static_cast<int>(ns.size()); ++d) {
    const int m = ms[d];
    for (const auto& [a, c] : w.f.coeffs()) {
      Monomial mo;
      if (a != 0) mo.push_back({BasisIndex::t(d), a});
      mo.push_back({BasisIndex::dt(d), 1});
      out.add_term(mo, c);
    }
    LaurentPoly g = w.f;
    for (int i = 0; i < ns[d]; ++i) {
      g = g.derivative();
      const Rat inv = Rat(1) / Rat(factorial(i + 1));
      for (const auto& [a, c] : g.coeffs()) add_phiweyl_image(out, m, d, i, a, c * inv);
    }
  }
  return out;
}

EnvElement psibar_apply(const WittElement& w, int m) { return psibar_multi_apply({2 * m}, w); }

EnvElement psibar_multi_apply(const std::vector<int>& ns, const EnvElement& u) {
  if (u.alg.base != Algebra::Base::UWitt || u.alg.commutative || u.alg.slots != 1)
    throw AlgebraMismatch("psibar expects a one-slot enveloping element, got " + u.alg.name());
  require_witt_variant(u.alg.variant, "psibar");
  const Variant var = u.alg.variant;
  std::vector<int> ms;
  for (int n : ns) {
    if (n < 0 || n % 2 != 0) throw NotTotallyEven("all truncation widths must be even");
    ms.push_back(n / 2);
  }
  Algebra target = Algebra::AnAlg(ms, true, var == Variant::W);
  return apply_hom(u, target, [&](const BasisIndex& b) {
    return psibar_multi_apply(ns, WittElement::e(var, b.idx));
  });
}

EnvElement psibar_apply(const EnvElement& u, int m) { return psibar_multi_apply({2 * m}, u); }

EnvElement truncate_vs(const EnvElement& u, const std::vector<int>& n_new) {
  if (u.alg.base != Algebra::Base::Tn)
    throw AlgebraMismatch("expected a mixed-algebra element, got " + u.alg.name());
  if (static_cast<int>(n_new.size()) != u.alg.slots)
    throw SizeMismatch("truncation widths must match the number of blocks");
  Algebra target = u.alg;
  target.blocks = n_new;
  return apply_hom(u, target, [&](const BasisIndex& b) {
    if (b.kind == Kind::V && n_new[b.slot] >= 0 && b.idx >= n_new[b.slot])
      return EnvElement(target);
    return EnvElement::letter(target, b);
  });
}

EnvElement env_gamma(const EnvElement& u) {
  if (u.alg.base != Algebra::Base::UWitt)
    throw AlgebraMismatch("central reduction expects an enveloping element, got " + u.alg.name());
  if (u.alg.variant != Variant::Vir) return u;
  Algebra target = u.alg;
  target.variant = Variant::W;
  return apply_hom(u, target, [&](const BasisIndex& b) {
    if (b.kind == Kind::Z) return EnvElement(target);
    return EnvElement::letter(target, b);
  });
}

}  // namespace witt
