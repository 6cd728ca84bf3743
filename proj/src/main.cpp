#include <CLI11.hpp>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "witt/coadjoint.hpp"
#include "witt/env.hpp"
#include "witt/errors.hpp"
#include "witt/json_io.hpp"
#include "witt/lie.hpp"
#include "witt/localfn.hpp"
#include "witt/modules.hpp"
#include "witt/morphisms.hpp"
#include "witt/parse.hpp"

namespace {

using namespace witt;

bool g_json = false;
int g_exit = 0;

template <class T>
void emit(const T& value) {
  if (g_json)
    std::cout << to_json(value).dump(2) << "\n";
  else
    std::cout << value.str() << "\n";
}

std::string join_rats(const std::vector<Rat>& v) {
  std::string out;
  for (const auto& r : v) out += (out.empty() ? "" : ",") + rat_str(r);
  return out;
}

void emit(const ReduceResult& r) {
  if (g_json)
    std::cout << to_json(r).dump(2) << "\n";
  else
    std::cout << join_rats(r.xi) << "\nwitness: " << r.witness.str() << "\n";
}

void emit(const RatMatrix& m) {
  if (g_json) {
    std::cout << to_json(m).dump(2) << "\n";
    return;
  }
  for (int i = 0; i < m.rows; ++i) {
    std::string row;
    for (int j = 0; j < m.cols; ++j) row += (j ? " " : "") + rat_str(m.at(i, j));
    std::cout << row << "\n";
  }
}

void emit_bool(bool b) {
  if (g_json)
    std::cout << Json{{"result", b}}.dump(2) << "\n";
  else
    std::cout << (b ? "true" : "false") << "\n";
}

void emit_rat(const Rat& r) {
  if (g_json)
    std::cout << Json{{"result", rat_str(r)}}.dump(2) << "\n";
  else
    std::cout << rat_str(r) << "\n";
}

bool is_variant_name(const std::string& s) {
  return s == "W" || s == "W-1" || s == "Wm1" || s == "W>=-1" || s == "Vir";
}

Variant variant_arg(const std::string& alg) {
  if (!is_variant_name(alg))
    throw ParseError("this verb needs --algebra W, W-1, or Vir (got '" + alg + "')");
  return parse_variant(alg);
}

// Vector-field input for verbs that also accept enveloping words: try the
// f(t) d syntax first, then the letter syntax.
EnvElement parse_env_or_witt(Variant var, const std::string& s) {
  const Algebra a = Algebra::UW(var);
  try {
    return witt_to_env(parse_witt(var, s));
  } catch (const Error&) {
    return parse_env(a, s);
  }
}

// ---------------------------------------------------------------------------
// Verification suites (sampled, seeded, exact).

struct VerifyCtx {
  std::mt19937_64 rng;
  int trials;
  int window;
  int checks = 0;
  int fails = 0;
  unsigned long long seed;

  int rint(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  }
  Rat rrat(int mag = 9) {
    int num = rint(-mag, mag);
    int den = rint(1, 3);
    return Rat(num) / den;
  }
  Rat rrat_nonzero(int mag = 9) {
    Rat r = rrat(mag);
    return r == 0 ? Rat(1) : r;
  }
  LaurentPoly rpoly(Variant var) {
    const int lo = var == Variant::W || var == Variant::Vir ? -window : 0;
    LaurentPoly f;
    const int nterms = rint(1, 3);
    for (int i = 0; i < nterms; ++i) f = f + LaurentPoly::term(rint(lo, window), rrat());
    return f;
  }
  WittElement rwitt(Variant var) {
    return WittElement(var, rpoly(var), var == Variant::Vir ? rrat() : Rat(0));
  }
  GnElement rgn(int n) {
    std::vector<Rat> c;
    for (int i = 0; i < n; ++i) c.push_back(rrat());
    return GnElement(n, c);
  }
  EnvElement rword(const Algebra& a, const std::vector<BasisIndex>& pool, int max_len,
                   int max_terms, int max_exp = 2) {
    EnvElement u = EnvElement::scalar(a, rrat());
    const int nterms = rint(1, max_terms);
    for (int t = 0; t < nterms; ++t) {
      EnvElement w = EnvElement::scalar(a, rrat_nonzero(4));
      const int len = rint(1, max_len);
      for (int i = 0; i < len; ++i) {
        const BasisIndex& b = pool[static_cast<size_t>(rint(0, static_cast<int>(pool.size()) - 1))];
        int e = rint(1, max_exp);
        if (a.letter_localized(b) && rint(0, 3) == 0) e = -e;
        w = multiply(w, EnvElement::letter(a, b, e));
      }
      u = u + w;
    }
    return u;
  }

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++fails;
      std::cerr << "FAIL (seed " << seed << "): " << what << "\n";
    }
  }
};

const std::vector<std::pair<Variant, std::string>>& fixtures() {
  static const std::vector<std::pair<Variant, std::string>> fx = {
      {Variant::W, "1:0,0,1"},
      {Variant::Wm1, "1:1,2"},
      {Variant::Wm1, "1:3,1/2"},
      {Variant::W, "2:0,0,0,1"},
      {Variant::Wm1, "1:0,0,0,0,0,1"},
      {Variant::W, "1:2,0,3,1"},
      {Variant::Wm1, "0:0,0,1,0,1"},
      {Variant::W, "1:0,0,1;2:0,0,1"},
      {Variant::Wm1, "1:0,2;3:0,0,0,1"},
      {Variant::Vir, "1:0,0,1"},
  };
  return fx;
}

void verify_jacobi(VerifyCtx& c) {
  const int T = c.trials > 0 ? c.trials : 60;
  for (Variant var : {Variant::W, Variant::Wm1, Variant::Vir}) {
    for (int t = 0; t < T; ++t) {
      WittElement a = c.rwitt(var), b = c.rwitt(var), x = c.rwitt(var);
      c.check((witt_bracket(a, b) + witt_bracket(b, a)).is_zero(), "bracket antisymmetry");
      WittElement j = witt_bracket(a, witt_bracket(b, x)) + witt_bracket(b, witt_bracket(x, a)) +
                      witt_bracket(x, witt_bracket(a, b));
      c.check(j.is_zero(), "bracket Jacobi");
    }
  }
  for (int t = 0; t < T; ++t) {
    const int n = c.rint(1, 8);
    GnElement a = c.rgn(n), b = c.rgn(n), x = c.rgn(n);
    c.check((gn_bracket(a, b) + gn_bracket(b, a)).is_zero(), "g_n antisymmetry");
    GnElement j = gn_bracket(a, gn_bracket(b, x)) + gn_bracket(b, gn_bracket(x, a)) +
                  gn_bracket(x, gn_bracket(a, b));
    c.check(j.is_zero(), "g_n Jacobi");
  }
  // 2-cocycle identity of the central term.
  auto omega = [](const WittElement& a, const WittElement& b) {
    return witt_bracket(WittElement(Variant::Vir, a.f), WittElement(Variant::Vir, b.f)).z;
  };
  for (int t = 0; t < T; ++t) {
    WittElement a = c.rwitt(Variant::Vir), b = c.rwitt(Variant::Vir), x = c.rwitt(Variant::Vir);
    auto br = [](const WittElement& p, const WittElement& q) {
      return WittElement(Variant::Vir, witt_bracket(p, q).f);
    };
    Rat s = omega(br(a, b), x) + omega(br(b, x), a) + omega(br(x, a), b);
    c.check(s == 0, "central cocycle identity");
  }
}

void verify_poisson(VerifyCtx& c) {
  const int T = c.trials > 0 ? c.trials : 60;
  for (Variant var : {Variant::W, Variant::Wm1}) {
    for (int t = 0; t < T; ++t) {
      const int n = c.rint(0, 5);
      WittElement a = c.rwitt(var), b = c.rwitt(var);
      EnvElement lhs = phi_apply(witt_bracket(a, b), n);
      EnvElement rhs = poisson_bracket(phi_apply(a, n), phi_apply(b, n));
      c.check(lhs == rhs, "phi preserves the bracket");
    }
  }
  const Algebra sn = Algebra::SnAlg(6, true);
  std::vector<BasisIndex> pool{BasisIndex::t()};
  for (int i = 0; i <= 6; ++i) pool.push_back(BasisIndex::y(i));
  for (int t = 0; t < T; ++t) {
    EnvElement a = c.rword(sn, pool, 3, 2), b = c.rword(sn, pool, 3, 2),
               x = c.rword(sn, pool, 3, 2);
    EnvElement j = poisson_bracket(a, poisson_bracket(b, x)) +
                   poisson_bracket(b, poisson_bracket(x, a)) +
                   poisson_bracket(x, poisson_bracket(a, b));
    c.check(j.terms.empty(), "Poisson Jacobi");
    EnvElement lhs = poisson_bracket(a, multiply(b, x));
    EnvElement rhs = multiply(poisson_bracket(a, b), x) + multiply(b, poisson_bracket(a, x));
    c.check(lhs == rhs, "Poisson Leibniz");
  }
  for (int t = 0; t < T; ++t) {
    EnvElement a = c.rword(sn, pool, 3, 2), b = c.rword(sn, pool, 3, 2);
    c.check(siso_from_tys(siso_to_tys(a)) == a, "y/v identification round trip");
    c.check(siso_to_tys(poisson_bracket(a, b)) == poisson_bracket(siso_to_tys(a), siso_to_tys(b)),
            "y/v identification respects the Poisson bracket");
  }
}

void verify_hom(VerifyCtx& c) {
  const int T = c.trials > 0 ? c.trials : 60;
  for (Variant var : {Variant::W, Variant::Wm1}) {
    for (int t = 0; t < T; ++t) {
      const int n = c.rint(0, 5);
      WittElement a = c.rwitt(var), b = c.rwitt(var);
      c.check(psi_apply(witt_bracket(a, b), n) ==
                  commutator(psi_apply(a, n), psi_apply(b, n)),
              "psi preserves the bracket");
    }
    // associated graded of the first-order realization = Poisson realization
    for (int t = 0; t < T / 2 + 1; ++t) {
      const int n = c.rint(0, 4);
      WittElement a = c.rwitt(var), b = c.rwitt(var);
      EnvElement u = multiply(witt_to_env(a), witt_to_env(b));
      EnvElement lhs = tn_shadow_to_tys(associated_graded_symbol(psi_apply(u, n)));
      EnvElement rhs = siso_to_tys(phi_apply(associated_graded_symbol(u), n));
      c.check(lhs == rhs, "graded psi = phi");
    }
    // factoring through smaller truncations
    const int lo = var == Variant::W ? -6 : -1;
    for (int np = 1; np <= 5; ++np)
      for (int n = 0; n < np; ++n)
        for (int i = lo; i <= 6; ++i) {
          WittElement e = WittElement::e(var, i);
          c.check(truncate_vs(psi_apply(e, np), {n}) == psi_apply(e, n),
                  "psi factors through the truncation");
        }
  }
  for (int m = 1; m <= 4; ++m) {
    for (int i = 0; i < 2 * m; ++i)
      for (int j = i + 1; j < 2 * m; ++j) {
        GnElement a = GnElement::basis(2 * m, i), b = GnElement::basis(2 * m, j);
        c.check(phiweyl_apply(gn_bracket(a, b), m) ==
                    commutator(phiweyl_apply(a, m), phiweyl_apply(b, m)),
                "Weyl realization preserves the bracket");
      }
  }
}

void verify_pbw(VerifyCtx& c) {
  const int T = c.trials > 0 ? c.trials : 40;
  const Algebra uw = Algebra::UW(Variant::W);
  std::vector<BasisIndex> pool;
  for (int i = -4; i <= 4; ++i) pool.push_back(BasisIndex::e(i));
  for (int t = 0; t < T; ++t) {
    EnvElement a = c.rword(uw, pool, 2, 2, 1), b = c.rword(uw, pool, 2, 2, 1),
               x = c.rword(uw, pool, 2, 2, 1);
    c.check(multiply(multiply(a, b), x) == multiply(a, multiply(b, x)), "associativity");
  }
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) {
      EnvElement a = EnvElement::letter(uw, BasisIndex::e(i));
      EnvElement b = EnvElement::letter(uw, BasisIndex::e(j));
      c.check(commutator(a, b) ==
                  witt_to_env(witt_bracket(WittElement::e(Variant::W, i),
                                           WittElement::e(Variant::W, j))),
              "normal ordering matches the bracket");
    }
  const Algebra sw = Algebra::SW(Variant::W);
  for (int t = 0; t < T; ++t) {
    EnvElement a = c.rword(sw, pool, 3, 2), b = c.rword(sw, pool, 3, 2);
    c.check(multiply(a, b) == multiply(b, a), "symmetric algebra commutativity");
  }
  const Algebra an = Algebra::AnAlg({1}, true, true);
  for (int k = -4; k <= 4; ++k) {
    EnvElement d = EnvElement::letter(an, BasisIndex::dt());
    EnvElement tk = power(EnvElement::letter(an, BasisIndex::t()), k);
    EnvElement tk1 = power(EnvElement::letter(an, BasisIndex::t()), k - 1) * Rat(k);
    c.check(commutator(d, tk) == tk1, "localized Weyl relation");
  }
}

// psi/psibar are defined on the centerless quotient; push Vir through it.
WittElement vir_or_self(const WittElement& a) {
  return a.variant == Variant::Vir ? vir_project(a) : a;
}

void verify_module(VerifyCtx& c) {
  const int T = c.trials > 0 ? c.trials : 12;
  for (const auto& [var, text] : fixtures()) {
    LocalFunction chi = parse_localfn(var, text);
    Module mod(chi);
    const bool obstructed = chi.twist_obstructed();
    // presentation scalars on one-point fixtures
    if (mod.slots() == 1) {
      for (int j = mod.m(0); j <= mod.n(0) + 2; ++j) {
        ModuleVector got = mod.act(mod.u_elem(0, j), mod.vacuum());
        c.check(got == mod.vacuum() * mod.sigma(0, j), "presentation scalar");
      }
    }
    // the action is a Lie action
    for (int t = 0; t < T; ++t) {
      WittElement a = c.rwitt(var), b = c.rwitt(var);
      ModExps e = mod.zero_exps();
      for (auto& slot : e)
        for (auto& k : slot) k = c.rint(0, 2);
      ModuleVector v = mod.basis(e);
      ModuleVector lhs = mod.act(witt_bracket(a, b), v);
      ModuleVector rhs = mod.act(a, mod.act(b, v)) - mod.act(b, mod.act(a, v));
      c.check(lhs == rhs, "module action respects the bracket");
      // first-order model intertwiner
      ModuleVector tv = theta_L(mod, v);
      c.check(theta_L(mod, mod.act(a, v)) ==
                  lmodel_act(mod, psi_multi_apply(mod.ns(), vir_or_self(a)), tv),
              "first-order model intertwiner");
      if (mod.totally_even()) {
        c.check(theta_N(mod, mod.act(a, v)) ==
                    nmodel_act(mod, psibar_multi_apply(mod.ns(), vir_or_self(a)), theta_N(mod, v)),
                "Weyl model intertwiner");
      }
      // reduction to the generator; small exponent windows keep the degree of
      // the clearing polynomials (and so the cost of re-acting Y) tame
      if (!obstructed) {
        ModExps re = mod.zero_exps();
        int budget = mod.slots() > 1 || mod.n(0) >= 4 ? 2 : 3;
        const int cap = budget == 2 ? 1 : 2;
        for (auto& slot : re)
          for (auto& k : slot)
            if (budget > 0 && c.rint(0, 1)) {
              k = c.rint(1, cap);
              budget -= 1;
            }
        ModuleVector w = mod.basis(re) + mod.basis(mod.zero_exps()) * c.rrat();
        if (!w.is_zero()) {
          GeneratorReduction r = reduce_to_generator(mod, w);
          c.check(r.c != 0 && mod.act(r.y, w) == mod.vacuum() * r.c, "cyclic generation");
        }
      }
    }
    if (obstructed) {
      bool threw = false;
      try {
        reduce_to_generator(mod, mod.vacuum());
      } catch (const TwistObstruction&) {
        threw = true;
      }
      c.check(threw, "obstructed reduction rejected");
      // invariant subspace: nothing comes back down to the vacuum line
      for (int t = 0; t < T; ++t) {
        WittElement a = c.rwitt(var);
        ModuleVector v = mod.basis({{c.rint(1, 3)}});
        bool hits_vacuum = false;
        for (const auto& [e, coeff] : mod.act(a, v).terms)
          if (e == mod.zero_exps()) hits_vacuum = true;
        c.check(!hits_vacuum, "obstructed fixture has an invariant subspace");
      }
    }
  }
}

void verify_orbit(VerifyCtx& c) {
  const int T = c.trials > 0 ? c.trials : 60;
  for (int t = 0; t < T; ++t) {
    const int n = c.rint(1, 6);
    std::vector<Rat> gc, hc;
    for (int i = 0; i < n; ++i) {
      gc.push_back(i == 0 ? c.rrat_nonzero(4) : c.rrat(4));
      hc.push_back(i == 0 ? c.rrat_nonzero(4) : c.rrat(4));
    }
    GroupElement g(n, gc), h(n, hc);
    std::vector<Rat> xi;
    for (int i = 0; i < n; ++i) xi.push_back(c.rrat());
    if (xi[n - 1] == 0) xi[n - 1] = Rat(1);
    c.check(group_matrix(group_compose(g, h)) == group_matrix(g) * group_matrix(h),
            "jet composition is a homomorphism");
    c.check(act_on_dual(group_compose(g, h), xi) == act_on_dual(h, act_on_dual(g, xi)),
            "dual action composes");
    c.check(orbit_equal(xi, act_on_dual(g, xi)), "the action preserves orbits");
    c.check(orbit_dimension(xi) == orbit_dimension(act_on_dual(g, xi)),
            "the action preserves the form rank");
  }
  for (int t = 0; t < T; ++t) {
    const int n = c.rint(1, 6);
    std::vector<Rat> xi;
    for (int i = 0; i < n; ++i) xi.push_back(c.rrat());
    if (xi[n - 1] == 0) xi[n - 1] = Rat(1);
    ReduceResult r = orbit_reduce(xi);
    c.check(act_on_dual(r.witness, xi) == r.xi, "reduction witness");
    for (int i = 0; i < n; ++i) {
      const bool keep = i == n - 1 || (n % 2 == 1 && i == (n - 1) / 2);
      if (!keep) c.check(r.xi[i] == 0, "normal form support");
    }
    c.check(r.xi[n - 1] == xi[n - 1], "top coordinate preserved");
    c.check(orbit_dimension(xi) == (n % 2 == 0 ? n : n - 1), "form rank by parity");
  }
  for (int n = 1; n <= 8; ++n)
    for (int j = 0; j < n; ++j) {
      std::vector<Rat> xi, sigma(static_cast<size_t>(n), Rat(0));
      for (int i = 0; i < n; ++i) xi.push_back(c.rrat());
      sigma[static_cast<size_t>(j)] = c.rrat_nonzero(4);
      c.check(tangent_check(xi, sigma), "infinitesimal action matches the jet action");
    }
}

void verify_dixmier(VerifyCtx& c) {
  const int T = c.trials > 0 ? c.trials : 4;
  // agreement of annihilator tests along a pseudo-orbit
  for (int t = 0; t < T; ++t) {
    LocalFunction chi = parse_localfn(Variant::W, t % 2 == 0 ? "1:0,0,1" : "1:2,0,3,1");
    auto bars = chi.project_to_gn();
    std::vector<std::vector<Rat>> moved;
    for (const auto& bar : bars) {
      const int n = static_cast<int>(bar.size());
      std::vector<Rat> gc;
      for (int i = 0; i < n; ++i) gc.push_back(i == 0 ? c.rrat_nonzero(3) : c.rrat(3));
      moved.push_back(act_on_dual(GroupElement(n, gc), bar));
    }
    LocalFunction eta = lift_from_gn(chi.variant, chi.points(), moved);
    c.check(pseudo_orbit_equal(chi, eta), "moved lift stays on the pseudo-orbit");
    Module m1(chi), m2(eta);
    const auto ns = chi.orders();
    std::vector<EnvElement> samples;
    int sup = 3;
    for (int n : ns) sup = std::max(sup, n + 1);
    for (const auto& u : slice_kernel(chi.variant, ns, sup, 3, 0)) samples.push_back(u);
    c.check(samples.size() >= 3, "slice supplies kernel elements");
    const Algebra uw = Algebra::UW(chi.variant);
    std::vector<BasisIndex> pool;
    for (int i = -3; i <= 3; ++i) pool.push_back(BasisIndex::e(i));
    for (int k = 0; k < 6; ++k) samples.push_back(c.rword(uw, pool, 3, 2));
    for (const auto& u : samples)
      c.check(annihilates(m1, u) == annihilates(m2, u),
              "annihilator membership depends only on the pseudo-orbit");
  }
  // an exhibited annihilator element, re-verified by the module action
  LocalFunction chi = parse_localfn(Variant::W, "1:0,0,1");
  Module mod(chi);
  auto kernel = slice_kernel(Variant::W, {2}, 3, 2, 0);
  c.check(!kernel.empty(), "kernel slice is nonempty");
  if (!kernel.empty()) {
    const EnvElement& u = kernel.front();
    c.check(annihilates(mod, u), "kernel slice element annihilates");
    for (int k = 0; k <= 6 && c.fails == 0; ++k) {
      ModuleVector v = mod.basis({{k % 3, k / 3}});
      c.check(mod.act(u, v).is_zero(), "annihilator kills basis vectors");
    }
  }
}

int run_verify(const std::string& suite, unsigned long long seed, int trials, int window) {
  std::vector<std::pair<std::string, void (*)(VerifyCtx&)>> suites = {
      {"jacobi", verify_jacobi},   {"poisson", verify_poisson}, {"hom", verify_hom},
      {"pbw", verify_pbw},         {"module", verify_module},   {"orbit", verify_orbit},
      {"dixmier", verify_dixmier},
  };
  int checks = 0, fails = 0;
  bool matched = false;
  for (const auto& [name, fn] : suites) {
    if (suite != "all" && suite != name) continue;
    matched = true;
    VerifyCtx c{std::mt19937_64(seed ^ std::hash<std::string>{}(name)), trials, window};
    c.seed = seed;
    fn(c);
    checks += c.checks;
    fails += c.fails;
    std::cout << name << ": " << (c.fails == 0 ? "ok" : "FAILED") << " (" << c.checks
              << " checks)" << "\n";
  }
  if (!matched) throw ParseError("unknown verify suite '" + suite + "'");
  if (g_json) std::cout << Json{{"checks", checks}, {"fails", fails}}.dump(2) << "\n";
  return fails == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic calculus for one-variable vector-field algebras: brackets, "
               "realizations, induced modules, and jet-group orbits"};
  app.require_subcommand(1);

  std::string alg_s = "W";
  unsigned long long seed = 1;
  int trials = 0;
  int window = 6;
  app.add_flag("--json", g_json, "machine-readable JSON output");
  app.add_option("--algebra", alg_s, "algebra spec (default W; see docs/syntax.md)");
  app.add_option("--seed", seed, "seed for sampled verification");
  app.add_option("--trials", trials, "sample count override for verification");
  app.add_option("--degree-window", window, "index window for sampled elements");

  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  // bracket
  std::string br_a, br_b;
  {
    CLI::App* s = sub(&app, "bracket", "Lie bracket (variants) or commutator/Poisson bracket");
    s->add_option("a", br_a, "left operand")->required();
    s->add_option("b", br_b, "right operand")->required();
    s->callback([&] {
      if (is_variant_name(alg_s)) {
        Variant v = parse_variant(alg_s);
        emit(witt_bracket(parse_witt(v, br_a), parse_witt(v, br_b)));
      } else {
        Algebra a = parse_algebra(alg_s);
        EnvElement x = parse_env(a, br_a), y = parse_env(a, br_b);
        emit(a.commutative ? poisson_bracket(x, y) : commutator(x, y));
      }
    });
  }

  // normal-form
  std::string nf_e;
  {
    CLI::App* s = sub(&app, "normal-form", "canonical ordered form of a word");
    s->add_option("expr", nf_e, "expression")->required();
    s->callback([&] { emit(parse_env(parse_algebra(alg_s), nf_e)); });
  }

  // phi / psi / psibar
  std::string mp_e, mp_orders;
  int mp_order = -1;
  {
    CLI::App* s = sub(&app, "phi", "Poisson realization in the y coordinates");
    s->add_option("expr", mp_e, "vector field")->required();
    s->add_option("--order", mp_order, "truncation order n")->required();
    s->callback([&] {
      Variant v = variant_arg(alg_s);
      WittElement w = parse_witt(v, mp_e);
      if (v == Variant::Vir) w = vir_project(w);
      emit(phi_apply(w, mp_order));
    });
  }
  {
    CLI::App* s = sub(&app, "psi", "first-order realization");
    s->add_option("expr", mp_e, "vector field")->required();
    s->add_option("--order", mp_order, "truncation order n");
    s->add_option("--orders", mp_orders, "per-point orders n1,n2,...");
    s->callback([&] {
      Variant v = variant_arg(alg_s);
      WittElement w = parse_witt(v, mp_e);
      if (v == Variant::Vir) w = vir_project(w);
      if (!mp_orders.empty())
        emit(psi_multi_apply(parse_int_vector(mp_orders), w));
      else if (mp_order >= 0)
        emit(psi_apply(w, mp_order));
      else
        throw ParseError("psi needs --order or --orders");
    });
  }
  {
    CLI::App* s = sub(&app, "psibar", "realization in the localized Weyl algebra");
    s->add_option("expr", mp_e, "vector field")->required();
    s->add_option("--order", mp_order, "even truncation order n = 2m");
    s->add_option("--orders", mp_orders, "per-point even orders");
    s->callback([&] {
      Variant v = variant_arg(alg_s);
      WittElement w = parse_witt(v, mp_e);
      if (v == Variant::Vir) w = vir_project(w);
      if (!mp_orders.empty())
        emit(psibar_multi_apply(parse_int_vector(mp_orders), w));
      else if (mp_order >= 0)
        emit(psibar_multi_apply({mp_order}, w));
      else
        throw ParseError("psibar needs --order or --orders");
    });
  }

  // phiweyl
  std::string pw_e;
  int pw_m = 1;
  {
    CLI::App* s = sub(&app, "phiweyl", "Weyl realization of the even-width truncation");
    s->add_option("expr", pw_e, "word in v(i), i < 2m")->required();
    s->add_option("--m", pw_m, "half-width m")->required();
    s->callback([&] {
      Algebra gn = Algebra::UGnAlg({2 * pw_m});
      emit(phiweyl_apply(parse_env(gn, pw_e), pw_m));
    });
  }

  // coproduct
  std::string cp_e;
  int cp_power = 2;
  {
    CLI::App* s = sub(&app, "coproduct", "iterated coproduct into a tensor power");
    s->add_option("expr", cp_e, "expression")->required();
    s->add_option("--power", cp_power, "number of tensor factors")->required();
    s->callback([&] { emit(coproduct_power(parse_env(parse_algebra(alg_s), cp_e), cp_power)); });
  }

  // localfn
  std::string lf_chi, lf_chi2, lf_expr, lf_modulus, lf_extras;
  {
    CLI::App* s = sub(&app, "localfn", "jet functionals");
    s->require_subcommand(1);
    CLI::App* ev = sub(s, "eval", "evaluate on a vector field");
    ev->add_option("chi", lf_chi, "x:a0,a1,...;x2:...")->required();
    ev->add_option("expr", lf_expr, "vector field")->required();
    ev->callback([&] {
      Variant v = variant_arg(alg_s);
      emit_rat(parse_localfn(v, lf_chi).evaluate(parse_witt(v, lf_expr)));
    });
    CLI::App* od = sub(s, "order", "per-point orders");
    od->add_option("chi", lf_chi)->required();
    od->callback([&] {
      LocalFunction chi = parse_localfn(variant_arg(alg_s), lf_chi);
      if (g_json) {
        std::cout << Json(chi.orders()).dump() << "\n";
      } else {
        std::string out;
        for (int n : chi.orders()) out += (out.empty() ? "" : ",") + std::to_string(n);
        std::cout << (out.empty() ? "0" : out) << "\n";
      }
    });
    CLI::App* tw = sub(s, "twist", "half-density correction");
    tw->add_option("chi", lf_chi)->required();
    tw->callback([&] { emit(parse_localfn(variant_arg(alg_s), lf_chi).twist()); });
    CLI::App* pj = sub(s, "project", "per-point covectors on the truncations");
    pj->add_option("chi", lf_chi)->required();
    pj->callback([&] { emit(dixmier_descriptor(parse_localfn(variant_arg(alg_s), lf_chi))); });
    CLI::App* pl = sub(s, "polarization", "test a candidate (default: the standard one)");
    pl->add_option("chi", lf_chi)->required();
    pl->add_option("--modulus", lf_modulus, "roots as x:mult;x:mult");
    pl->add_option("--extras", lf_extras, "extra vector fields, ';'-separated");
    pl->callback([&] {
      Variant v = variant_arg(alg_s);
      LocalFunction chi = parse_localfn(v, lf_chi);
      PolarizationCandidate cand =
          lf_modulus.empty() ? canonical_polarization(chi) : PolarizationCandidate{};
      if (!lf_modulus.empty()) {
        std::string cur;
        for (char ch : lf_modulus + ";") {
          if (ch != ';') {
            cur += ch;
            continue;
          }
          if (cur.empty()) continue;
          const size_t colon = cur.find(':');
          if (colon == std::string::npos)
            throw ParseError("--modulus entries are root:multiplicity");
          const Rat root = parse_rat(cur.substr(0, colon));
          const std::vector<int> mult = parse_int_vector(cur.substr(colon + 1));
          if (mult.size() != 1) throw ParseError("--modulus entries are root:multiplicity");
          cand.modulus.push_back({root, mult[0]});
          cur.clear();
        }
      }
      if (!lf_extras.empty()) {
        std::string cur;
        for (char ch : lf_extras + ";") {
          if (ch == ';') {
            if (!cur.empty()) cand.extras.push_back(parse_witt(v, cur));
            cur.clear();
          } else {
            cur += ch;
          }
        }
      }
      PolarizationCheck r = is_polarization(cand, chi);
      if (g_json)
        std::cout << Json{{"result", polarization_check_name(r)}}.dump(2) << "\n";
      else
        std::cout << polarization_check_name(r) << "\n";
      if (r != PolarizationCheck::Ok) g_exit = 1;
    });
    CLI::App* oe = sub(s, "orbit-equal", "same pseudo-orbit");
    oe->add_option("chi", lf_chi)->required();
    oe->add_option("eta", lf_chi2)->required();
    oe->callback([&] {
      Variant v = variant_arg(alg_s);
      emit_bool(pseudo_orbit_equal(parse_localfn(v, lf_chi), parse_localfn(v, lf_chi2)));
    });
  }

  // orbit
  std::string ob_xi, ob_eta;
  int ob_n = 0;
  auto parse_cov = [&ob_n](const std::string& txt) {
    std::vector<Rat> xi = parse_rat_vector(txt);
    if (ob_n != 0 && ob_n != static_cast<int>(xi.size()))
      throw ParseError("--n disagrees with the covector length");
    return xi;
  };
  {
    CLI::App* s = sub(&app, "orbit", "coadjoint orbits of the jet group");
    s->require_subcommand(1);
    CLI::App* rd = sub(s, "reduce", "canonical representative + witness");
    rd->add_option("--n", ob_n, "dimension (optional, checked)");
    rd->add_option("xi", ob_xi, "covector xi_0,...,xi_{n-1}")->required();
    rd->callback([&] { emit(orbit_reduce(parse_cov(ob_xi))); });
    CLI::App* eq = sub(s, "equal", "same orbit over the algebraic closure");
    eq->add_option("--n", ob_n, "dimension (optional, checked)");
    eq->add_option("xi", ob_xi)->required();
    eq->add_option("eta", ob_eta)->required();
    eq->callback([&] { emit_bool(orbit_equal(parse_cov(ob_xi), parse_cov(ob_eta))); });
    CLI::App* dm = sub(s, "dim", "rank of the Kostant-Kirillov form");
    dm->add_option("--n", ob_n, "dimension (optional, checked)");
    dm->add_option("xi", ob_xi)->required();
    dm->callback([&] {
      int d = orbit_dimension(parse_cov(ob_xi));
      if (g_json)
        std::cout << Json{{"result", d}}.dump(2) << "\n";
      else
        std::cout << d << "\n";
    });
    CLI::App* cl = sub(s, "closure", "is the orbit of eta in the closure of the orbit of xi?");
    cl->add_option("--n", ob_n, "dimension (optional, checked)");
    cl->add_option("eta", ob_eta)->required();
    cl->add_option("xi", ob_xi)->required();
    cl->callback([&] { emit_bool(closure_leq(parse_cov(ob_eta), parse_cov(ob_xi))); });
  }

  // group
  std::string gp_g, gp_xi, gp_sigma;
  int gp_n = 0;
  {
    CLI::App* s = sub(&app, "group", "the unipotent jet group");
    s->require_subcommand(1);
    CLI::App* mx = sub(s, "matrix", "matrix on the truncated algebra");
    mx->add_option("--n", gp_n, "dimension (optional, checked)");
    mx->add_option("g", gp_g, "jet coefficients c1,...,cn")->required();
    mx->callback([&] {
      auto cvec = parse_rat_vector(gp_g);
      GroupElement g(static_cast<int>(cvec.size()), cvec);
      if (gp_n != 0 && gp_n != g.n) throw ParseError("--n disagrees with the jet length");
      emit(group_matrix(g));
    });
    CLI::App* ac = sub(s, "act", "dual (coadjoint) action on a covector");
    ac->add_option("--n", gp_n, "dimension (optional, checked)");
    ac->add_option("g", gp_g)->required();
    ac->add_option("xi", gp_xi)->required();
    ac->callback([&] {
      auto cvec = parse_rat_vector(gp_g);
      auto xi = parse_rat_vector(gp_xi);
      GroupElement g(static_cast<int>(cvec.size()), cvec);
      if (xi.size() != cvec.size()) throw SizeMismatch("jet and covector lengths differ");
      auto out = act_on_dual(g, xi);
      if (g_json)
        std::cout << to_json(out).dump(2) << "\n";
      else {
        std::string txt;
        for (const auto& r : out) txt += (txt.empty() ? "" : ",") + rat_str(r);
        std::cout << txt << "\n";
      }
    });
    CLI::App* tc = sub(s, "tangent-check", "jet action vs infinitesimal action");
    tc->add_option("--n", gp_n, "dimension (optional, checked)");
    tc->add_option("xi", gp_xi)->required();
    tc->add_option("sigma", gp_sigma, "direction coefficients sigma_1,...")->required();
    tc->callback([&] {
      bool ok = tangent_check(parse_rat_vector(gp_xi), parse_rat_vector(gp_sigma));
      emit_bool(ok);
      if (!ok) g_exit = 1;
    });
  }

  // module
  std::string md_chi, md_expr, md_vec, md_model = "L";
  {
    CLI::App* s = sub(&app, "module", "induced modules");
    s->require_subcommand(1);
    CLI::App* ac = sub(s, "act", "act on a module vector (default: the vacuum)");
    ac->add_option("chi", md_chi)->required();
    ac->add_option("expr", md_expr, "vector field or enveloping word")->required();
    ac->add_option("vec", md_vec, "module vector (default [0,...])");
    ac->callback([&] {
      Module mod(parse_localfn(variant_arg(alg_s), md_chi));
      ModuleVector v = md_vec.empty() ? mod.vacuum() : parse_module_vector(mod, md_vec);
      emit(mod.act(parse_env_or_witt(mod.variant(), md_expr), v));
    });
    CLI::App* rd = sub(s, "reduce", "solve Y v = c * vacuum");
    rd->add_option("chi", md_chi)->required();
    rd->add_option("vec", md_vec)->required();
    rd->callback([&] {
      Module mod(parse_localfn(variant_arg(alg_s), md_chi));
      GeneratorReduction r = reduce_to_generator(mod, parse_module_vector(mod, md_vec));
      if (g_json)
        std::cout << to_json(r).dump(2) << "\n";
      else
        std::cout << "y = " << r.y.str() << "\nc = " << rat_str(r.c) << "\n";
    });
    CLI::App* th = sub(s, "check-theta", "intertwiner check on a vector");
    th->add_option("chi", md_chi)->required();
    th->add_option("expr", md_expr, "vector field")->required();
    th->add_option("vec", md_vec, "module vector (default [0,...])");
    th->add_option("--model", md_model, "L (first-order) or N (Weyl)");
    th->callback([&] {
      Variant var = variant_arg(alg_s);
      Module mod(parse_localfn(var, md_chi));
      ModuleVector v = md_vec.empty() ? mod.vacuum() : parse_module_vector(mod, md_vec);
      WittElement w = parse_witt(var, md_expr);
      WittElement wproj = var == Variant::Vir ? vir_project(w) : w;
      bool ok;
      if (md_model == "N")
        ok = theta_N(mod, mod.act(w, v)) ==
             nmodel_act(mod, psibar_multi_apply(mod.ns(), wproj), theta_N(mod, v));
      else if (md_model == "L")
        ok = theta_L(mod, mod.act(w, v)) ==
             lmodel_act(mod, psi_multi_apply(mod.ns(), wproj), theta_L(mod, v));
      else
        throw ParseError("--model must be L or N");
      emit_bool(ok);
      if (!ok) g_exit = 1;
    });
  }

  // ann
  {
    CLI::App* s = sub(&app, "ann", "annihilator membership");
    s->require_subcommand(1);
    CLI::App* ts = sub(s, "test", "does the element annihilate the induced module?");
    ts->add_option("chi", md_chi)->required();
    ts->add_option("expr", md_expr, "vector field or enveloping word")->required();
    ts->callback([&] {
      Module mod(parse_localfn(variant_arg(alg_s), md_chi));
      emit_bool(annihilates(mod, parse_env_or_witt(mod.variant(), md_expr)));
    });
  }

  // verify
  std::string vf_suite;
  {
    CLI::App* s = sub(&app, "verify", "sampled verification suites");
    s->add_option("suite", vf_suite,
                  "jacobi | poisson | hom | pbw | module | orbit | dixmier | all")
        ->required();
    s->callback([&] { g_exit = run_verify(vf_suite, seed, trials, window); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return g_exit;
}
