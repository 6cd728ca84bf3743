#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "witt/coadjoint.hpp"
#include "witt/json_io.hpp"
#include "witt/modules.hpp"
#include "witt/morphisms.hpp"
#include "witt/parse.hpp"

using namespace witt;

namespace {

std::mt19937_64 rng(611);
int rint(int lo, int hi) { return lo + int(rng() % std::uint64_t(hi - lo + 1)); }
Rat rrat() { return Rat(rint(-6, 6), rint(1, 3)); }
Rat rrat_nz() {
  Rat r = rrat();
  return r == 0 ? Rat(1) : r;
}

struct Fixture {
  Variant var;
  std::string chi;
};

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> fx = {
      {Variant::W, "1:0,0,1"},          // 0: order 2, even
      {Variant::Wm1, "1:1,2"},          // 1: order 1
      {Variant::Wm1, "1:3,1/2"},        // 2: order 1, corrected coefficient vanishes
      {Variant::W, "2:0,0,0,1"},        // 3: order 3
      {Variant::Wm1, "1:0,0,0,0,0,1"},  // 4: order 5
      {Variant::W, "1:2,0,3,1"},        // 5: order 3
      {Variant::Wm1, "0:0,0,1,0,1"},    // 6: order 4 at the boundary point
      {Variant::W, "1:0,0,1;2:0,0,1"},  // 7: two points, both order 2
      {Variant::Wm1, "1:0,2;3:0,0,0,1"},  // 8: two points, orders 1 and 3
      {Variant::Vir, "1:0,0,1"},        // 9: central extension, order 2
  };
  return fx;
}

Module make(int i) { return Module(parse_localfn(fixtures()[i].var, fixtures()[i].chi)); }

// Small random vector in the adapted-monomial basis: total exponent budget 2
// for the heavier handles (several points or order >= 4), 3 otherwise, so that
// re-verifying a reduction by the module action stays cheap.
ModExps small_key(const Module& mod) {
  int budget = (mod.slots() > 1 || mod.n(0) >= 4) ? 2 : 3;
  const int cap = budget == 2 ? 1 : 2;
  ModExps e = mod.zero_exps();
  for (auto& slot : e)
    for (int& k : slot) {
      if (budget == 0) break;
      if (rng() % 2 == 0) continue;
      k = rint(1, cap);
      budget -= k;
      if (budget < 0) {
        k += budget;
        budget = 0;
      }
    }
  return e;
}

ModuleVector small_vector(const Module& mod) {
  ModuleVector v = mod.basis(small_key(mod)) * rrat_nz();
  if (rng() % 2 == 0) v = v + mod.basis(small_key(mod)) * rrat();
  if (v.is_zero()) v = mod.vacuum();
  return v;
}

WittElement small_witt(Variant var) {
  const int lo = var == Variant::Wm1 ? 0 : -2;
  LaurentPoly f;
  for (int i = 0, n = rint(1, 2); i < n; ++i) f += LaurentPoly::term(rint(lo, 4), rrat());
  if (f.is_zero()) f = LaurentPoly::t(1);
  return WittElement(var, f);
}

WittElement act_variant_elem(const Module& mod) {
  WittElement w = small_witt(mod.wvariant());
  if (mod.variant() == Variant::Vir && rng() % 2 == 0)
    return WittElement(Variant::Vir, w.f, rrat());
  return w;
}

WittElement strip_center(const Module& mod, const WittElement& w) {
  return w.variant == Variant::Vir ? vir_project(w) : w;
}

}  // namespace

TEST_CASE("handles and accessors") {
  Module m0 = make(0);
  CHECK(m0.slots() == 1);
  CHECK(m0.n(0) == 2);
  CHECK(m0.m(0) == 1);
  CHECK(m0.x(0) == 1);
  CHECK(m0.ns() == std::vector<int>{2});
  CHECK(m0.totally_even());
  CHECK(m0.variant() == Variant::W);
  CHECK(m0.wvariant() == Variant::W);
  CHECK(m0.zero_exps() == ModExps{{0, 0}});
  CHECK(m0.vacuum().str() == "1*[0,0]");

  Module m4 = make(4);
  CHECK(m4.n(0) == 5);
  CHECK(m4.m(0) == 2);
  CHECK_FALSE(m4.totally_even());
  CHECK(m4.zero_exps() == ModExps{{0, 0, 0}});

  Module m6 = make(6);
  CHECK(m6.n(0) == 4);
  CHECK(m6.m(0) == 2);
  CHECK(m6.x(0) == 0);
  CHECK(m6.totally_even());

  Module m7 = make(7);
  CHECK(m7.slots() == 2);
  CHECK(m7.ns() == std::vector<int>{2, 2});
  CHECK(m7.totally_even());
  CHECK(m7.zero_exps() == ModExps{{0, 0}, {0, 0}});

  Module m8 = make(8);
  CHECK(m8.ns() == std::vector<int>{1, 3});
  CHECK_FALSE(m8.totally_even());
  CHECK(m8.zero_exps() == ModExps{{0}, {0, 0}});

  Module m9 = make(9);
  CHECK(m9.variant() == Variant::Vir);
  CHECK(m9.wvariant() == Variant::W);
  CHECK(m9.totally_even());

  // the corrected functional drives the presentation scalars
  CHECK(m0.sigma(0, 1) == 2);
  CHECK(m0.sigma(0, 2) == 0);
  CHECK(m0.sigma(0, 5) == 0);
  Module m1 = make(1);
  CHECK(m1.sigma(0, 0) == Rat(3, 2));  // order-1 slot carries the -1/2 shift
  CHECK(m1.sigma(0, 1) == 0);
  Module m2 = make(2);
  CHECK(m2.sigma(0, 0) == 0);  // the shift cancels the coefficient entirely
  CHECK(m2.lmodel_scalar(0, 0) == 1);
  CHECK(m1.lmodel_scalar(0, 0) == Rat(5, 2));
  CHECK(m0.lmodel_scalar(0, 1) == 2);  // no extra shift once m >= 1

  CHECK(m0.u_elem(0, 1).str() == "(t^2 - 2*t + 1) d");
  CHECK(m0.u_elem(0, -1).str() == "(1) d");

  CHECK_THROWS_AS(Module(LocalFunction(Variant::W, {})), SizeMismatch);
  CHECK_THROWS_AS(m0.basis(ModExps{{0, 0}, {0, 0}}), SizeMismatch);
  CHECK_THROWS_AS(m0.basis(ModExps{{0, 0, 0}}), SizeMismatch);
  CHECK_THROWS_AS(m0.basis(ModExps{{-1, 0}}), NegativeExponent);
}

TEST_CASE("vector arithmetic, parse, and json") {
  Module m7 = make(7);
  ModuleVector a = m7.basis({{0, 1}, {0, 0}}) * 2 - m7.basis({{1, 0}, {0, 1}});
  CHECK(a.str() == "2*[0,1|0,0] + -1*[1,0|0,1]");
  CHECK(parse_module_vector(m7, a.str()) == a);
  CHECK(parse_module_vector(m7, "2*[0,1|0,0] - [1,0|0,1]") == a);
  CHECK((a - a).is_zero());
  CHECK((a - a).str() == "0");
  CHECK((a * 0).is_zero());
  CHECK(a + a == a * 2);

  const Json j = to_json(a);
  CHECK(j["terms"].size() == 2);

  Module m0 = make(0);
  CHECK(parse_module_vector(m0, "[2,1]") == m0.basis({{2, 1}}));
  CHECK_THROWS_AS(parse_module_vector(m0, "[2,1,0]"), SizeMismatch);
}

TEST_CASE("window elements act on the vacuum by the corrected scalar") {
  // single-point handles: every u_j with j >= m is a window element
  for (int i : {0, 1, 3, 4, 5, 6, 9}) {
    Module mod = make(i);
    for (int j = mod.m(0); j <= mod.n(0) + 2; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(mod.act(mod.u_elem(0, j), mod.vacuum()) == mod.vacuum() * mod.sigma(0, j));
    }
    // commutators of window elements act by zero on the vacuum
    WittElement c = witt_bracket(mod.u_elem(0, mod.m(0)), mod.u_elem(0, mod.m(0) + 1));
    CHECK(mod.act(strip_center(mod, c), mod.vacuum()) ==
          mod.vacuum() * mod.sigma(0, 2 * mod.m(0) + 1));
  }
  // two-point handle: products of the per-point windows
  Module m7 = make(7);
  WittElement u = WittElement(
      Variant::W, LaurentPoly::binom_power(Rat(1), 2) * LaurentPoly::binom_power(Rat(2), 3));
  Rat expect(0);
  for (int d = 0; d < 2; ++d) expect += m7.chi_prime_eval(d, u.f);
  CHECK(m7.act(u, m7.vacuum()) == m7.vacuum() * expect);
}

TEST_CASE("action laws") {
  for (int i : {0, 1, 3, 7, 9}) {
    Module mod = make(i);
    for (int trial = 0; trial < 6; ++trial) {
      CAPTURE(i);
      CAPTURE(trial);
      WittElement a = small_witt(mod.wvariant());
      WittElement b = small_witt(mod.wvariant());
      if (mod.variant() == Variant::Vir && rng() % 2 == 0) {
        a = WittElement(Variant::Vir, a.f, rrat());
        b = WittElement(Variant::Vir, b.f, rrat());
      }
      ModuleVector v = small_vector(mod);
      ModuleVector lhs = mod.act(witt_bracket(a, b), v);
      ModuleVector rhs = mod.act(a, mod.act(b, v)) - mod.act(b, mod.act(a, v));
      CHECK(lhs == rhs);
    }
    // enveloping words act associatively
    const Algebra A = Algebra::UW(mod.wvariant());
    std::vector<BasisIndex> pool;
    for (int k = (mod.wvariant() == Variant::Wm1 ? -1 : -2); k <= 3; ++k)
      pool.push_back(BasisIndex::e(k));
    for (int trial = 0; trial < 4; ++trial) {
      Monomial wa, wb;
      wa.push_back({pool[size_t(rint(0, int(pool.size()) - 1))], 1});
      wb.push_back({pool[size_t(rint(0, int(pool.size()) - 1))], rint(1, 2)});
      EnvElement ua(A), ub(A);
      ua.add_term(wa, rrat_nz());
      ub.add_term(wb, rrat_nz());
      ModuleVector v = small_vector(mod);
      CHECK(mod.act(multiply(ua, ub), v) == mod.act(ua, mod.act(ub, v)));
    }
  }

  // the center acts by zero and Vir actions factor through the projection
  Module m9 = make(9);
  WittElement zonly(Variant::Vir, LaurentPoly(), Rat(5));
  CHECK(m9.act(zonly, m9.basis({{1, 1}})).is_zero());
  WittElement w(Variant::Vir, LaurentPoly::t(3) - LaurentPoly::t(0), Rat(7, 2));
  ModuleVector v = m9.basis({{2, 0}});
  CHECK(m9.act(w, v) == m9.act(vir_project(w), v));

  // variant guards
  Module m0 = make(0);
  CHECK_THROWS_AS(m0.act(WittElement::e(Variant::Wm1, 1), m0.vacuum()), VariantMismatch);
  CHECK_THROWS_AS(m0.act(EnvElement::unit(Algebra::SnAlg(2, true)), m0.vacuum()),
                  AlgebraMismatch);
}

TEST_CASE("restriction to the polynomial subalgebra matches") {
  Module full = make(0);
  Module restricted(parse_localfn(Variant::Wm1, "1:0,0,1"));
  for (int i = -1; i <= 4; ++i) {
    for (const ModExps& key : {ModExps{{0, 0}}, ModExps{{1, 2}}, ModExps{{2, 1}}}) {
      CAPTURE(i);
      ModuleVector lhs = full.act(WittElement::e(Variant::W, i), full.basis(key));
      ModuleVector rhs = restricted.act(WittElement::e(Variant::Wm1, i), restricted.basis(key));
      CHECK(lhs.terms == rhs.terms);
    }
  }
}

TEST_CASE("two-point action is the sum of the one-point actions") {
  Module m7 = make(7);
  Module c0(parse_localfn(Variant::W, "1:0,0,1"));
  Module c1(parse_localfn(Variant::W, "2:0,0,1"));
  for (int i = -2; i <= 2; ++i) {
    for (const ModExps& key : {ModExps{{0, 0}, {0, 0}}, ModExps{{1, 1}, {0, 2}}}) {
      CAPTURE(i);
      ModuleVector expect;
      for (const auto& [k0, cc] :
           c0.act(WittElement::e(Variant::W, i), c0.basis({key[0]})).terms)
        expect.add(ModExps{k0[0], key[1]}, cc);
      for (const auto& [k1, cc] :
           c1.act(WittElement::e(Variant::W, i), c1.basis({key[1]})).terms)
        expect.add(ModExps{key[0], k1[0]}, cc);
      CHECK(m7.act(WittElement::e(Variant::W, i), m7.basis(key)) == expect);
    }
  }
}

TEST_CASE("deep-window vanishing and the leading scalars") {
  // one-point handles: q a unit near the point, u_{q,j} = q*(t-x)^{j+1} d
  for (int i : {0, 1, 3, 5, 6}) {
    Module mod = make(i);
    const int n = mod.n(0);
    const Rat x = mod.x(0);
    LaurentPoly q(rrat_nz());
    q += LaurentPoly::binom_power(x, 1) * rrat();
    q += LaurentPoly::binom_power(x, 3) * rrat();
    if (mod.wvariant() == Variant::W && rng() % 2 == 0)
      q = q + LaurentPoly::term(-1, rrat());  // Laurent multipliers are fine away from 0
    auto uq = [&](int j) {
      return WittElement(mod.wvariant(), q * LaurentPoly::binom_power(x, j + 1));
    };
    // leading scalars a_{q,i} on the vacuum, top one pinned to n! a_n q(x)
    for (int k = 0; k < mod.m(0); ++k) {
      CAPTURE(i);
      CAPTURE(k);
      Rat aqk = mod.chi_prime_eval(0, uq(n - 1 - k).f);
      CHECK(mod.act(uq(n - 1 - k), mod.vacuum()) == mod.vacuum() * aqk);
      if (k == 0 && n > 1) {
        Rat top = mod.chi().comps[0].alpha.back();
        CHECK(aqk == Rat(factorial(n)) * top * q.evaluate(x));
        CHECK(aqk != 0);
      }
    }
    // beyond the order: zero on the vacuum and on words with no lowering letter
    for (int j = 1; j <= 2; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(mod.act(uq(n - 1 + j), mod.vacuum()).is_zero());
      ModExps word = mod.zero_exps();
      word[0][1 % (mod.m(0) + 1)] = 2;
      if (mod.m(0) > 0) {
        CHECK(mod.act(uq(n - 1 + j), mod.basis(word)).is_zero());
        ModExps word2 = mod.zero_exps();
        word2[0][mod.m(0)] = 1;
        CHECK(mod.act(uq(n - 1 + j), mod.basis(word2)).is_zero());
      }
      // each lowering letter costs one extra power of the window
      for (int km1 = 1; km1 <= 2; ++km1) {
        ModExps low = mod.zero_exps();
        low[0][0] = km1;
        if (mod.m(0) > 0) low[0][1] = 1;
        CHECK(mod.act(uq(n - 1 + j + km1), mod.basis(low)).is_zero());
      }
    }
  }

  // two-point handle: the multiplier must vanish deeply at the other point
  Module m7 = make(7);
  for (int d = 0; d < 2; ++d) {
    const Rat x = m7.x(d);
    const Rat other = m7.x(1 - d);
    LaurentPoly q = LaurentPoly::binom_power(other, m7.n(1 - d) + 2) * rrat_nz();
    auto uq = [&](int j) {
      return WittElement(Variant::W, q * LaurentPoly::binom_power(x, j + 1));
    };
    Rat aq0 = m7.chi_prime_eval(d, uq(m7.n(d) - 1).f);
    CHECK(m7.act(uq(m7.n(d) - 1), m7.vacuum()) == m7.vacuum() * aq0);
    CHECK(aq0 != 0);
    ModExps low = m7.zero_exps();
    low[1 - d][0] = 1;
    CHECK(m7.act(uq(m7.n(d) + 1), m7.basis(low)).is_zero());
  }
}

TEST_CASE("reduction to the cyclic generator") {
  Module m0 = make(0);

  auto r0 = reduce_to_generator(m0, m0.basis({{0, 1}}));
  CHECK(r0.c == 2);
  CHECK(m0.act(r0.y, m0.basis({{0, 1}})) == m0.vacuum() * 2);

  auto r1 = reduce_to_generator(m0, m0.basis({{1, 0}}));
  CHECK(r1.c == -6);
  CHECK(r1.y == witt_to_env(m0.u_elem(0, 2)));

  CHECK(m0.act(m0.u_elem(0, 3), m0.basis({{2, 0}})) == m0.vacuum() * 24);

  CHECK_THROWS_AS(reduce_to_generator(m0, ModuleVector()), ZeroVector);
  Module m2 = make(2);
  CHECK_THROWS_AS(reduce_to_generator(m2, m2.basis({{1}})), TwistObstruction);

  for (int i : {0, 1, 3, 4, 5, 6, 7, 8, 9}) {
    Module mod = make(i);
    const int trials = mod.slots() > 1 ? 2 : 3;
    for (int trial = 0; trial < trials; ++trial) {
      CAPTURE(i);
      CAPTURE(trial);
      ModuleVector v = small_vector(mod);
      GeneratorReduction r = reduce_to_generator(mod, v);
      REQUIRE(r.c != 0);
      CHECK(mod.act(r.y, v) == mod.vacuum() * r.c);
    }
  }
}

TEST_CASE("the obstructed handle has an invariant subspace") {
  Module m2 = make(2);
  for (int i = -1; i <= 5; ++i) {
    for (int k = 1; k <= 3; ++k) {
      CAPTURE(i);
      CAPTURE(k);
      ModuleVector out = m2.act(WittElement::e(Variant::Wm1, i), m2.basis({{k}}));
      for (const auto& [key, c] : out.terms) CHECK(key[0][0] >= 1);
    }
  }
}

TEST_CASE("first-order transport") {
  Module m0 = make(0);
  CHECK(theta_L(m0, m0.vacuum()) == lmodel_vacuum(m0));
  ModuleVector v = m0.act(m0.u_elem(0, 1), m0.basis({{0, 1}}));
  ModuleVector expect;
  expect.add({{0, 0}}, -4);
  expect.add({{0, 1}}, 2);
  CHECK(theta_L(m0, v) == expect);

  for (int i : {0, 1, 3, 7, 9}) {
    Module mod = make(i);
    for (int trial = 0; trial < 5; ++trial) {
      CAPTURE(i);
      CAPTURE(trial);
      WittElement a = strip_center(mod, act_variant_elem(mod));
      ModuleVector w = small_vector(mod);
      ModuleVector lhs = theta_L(mod, mod.act(a, w));
      ModuleVector rhs = lmodel_act(mod, psi_multi_apply(mod.ns(), a), theta_L(mod, w));
      CHECK(lhs == rhs);
    }
  }

  Module m7 = make(7);
  CHECK_THROWS_AS(lmodel_act(m7, EnvElement::unit(Algebra::UW(Variant::W)), lmodel_vacuum(m7)),
                  AlgebraMismatch);
}

TEST_CASE("second-order transport for totally even handles") {
  Module m0 = make(0);
  const Algebra An = Algebra::AnAlg({1}, true, true);
  EnvElement s0(An), d0(An);
  s0.add_term({{BasisIndex::s(0), 1}}, Rat(1));
  d0.add_term({{BasisIndex::d(0), 1}}, Rat(1));
  CHECK(nmodel_act(m0, s0, nmodel_vacuum(m0)) == nmodel_vacuum(m0) * 2);
  ModuleVector d0vac;
  d0vac.add({{0, 1}}, 1);
  CHECK(nmodel_act(m0, d0, nmodel_vacuum(m0)) == d0vac);
  EnvElement em1 = witt_to_env(WittElement::e(Variant::W, -1));
  ModuleVector dvac;
  dvac.add({{1, 0}}, 1);
  CHECK(nmodel_act(m0, psibar_multi_apply({2}, em1), nmodel_vacuum(m0)) == dvac);
  CHECK(theta_N(m0, m0.vacuum()) == nmodel_vacuum(m0));
  CHECK(theta_N(m0, m0.basis({{1, 0}})) == dvac);

  for (int i : {0, 6, 7, 9}) {
    Module mod = make(i);
    for (int trial = 0; trial < 4; ++trial) {
      CAPTURE(i);
      CAPTURE(trial);
      WittElement a = strip_center(mod, act_variant_elem(mod));
      ModuleVector w = small_vector(mod);
      ModuleVector lhs = theta_N(mod, mod.act(a, w));
      ModuleVector rhs = nmodel_act(mod, psibar_multi_apply(mod.ns(), a), theta_N(mod, w));
      CHECK(lhs == rhs);
    }
  }

  Module m3 = make(3);
  CHECK_THROWS_AS(nmodel_vacuum(m3), NotTotallyEven);
  CHECK_THROWS_AS(theta_N(m3, m3.vacuum()), NotTotallyEven);
}

TEST_CASE("annihilator membership") {
  Module m0 = make(0);
  const Algebra AW = Algebra::UW(Variant::W);
  CHECK_FALSE(annihilates(m0, parse_env(AW, "e[-1]")));
  CHECK(annihilates(m0, EnvElement(AW)));

  auto kernel = slice_kernel(Variant::W, {2}, 3, 2, 0);
  REQUIRE(kernel.size() == 1);
  CHECK(kernel.front().str() ==
        "e[-3]*e[3] + -6*e[-2]*e[2] + 15*e[-1]*e[1] + -6*e[0] + -10*e[0]^2");
  CHECK(psi_multi_apply({2}, kernel.front()).is_zero());
  CHECK(annihilates(m0, kernel.front()));
  for (int k0 = 0; k0 <= 2; ++k0)
    for (int k1 = 0; k1 <= 2; ++k1) {
      CAPTURE(k0);
      CAPTURE(k1);
      CHECK(m0.act(kernel.front(), m0.basis({{k0, k1}})).is_zero());
    }

  // the same element annihilates the centrally extended handle, and the
  // center itself acts by zero
  Module m9 = make(9);
  CHECK(annihilates(m9, kernel.front()));
  const Algebra AV = Algebra::UW(Variant::Vir);
  CHECK(annihilates(m9, parse_env(AV, "z")));
  CHECK_FALSE(annihilates(m9, parse_env(AV, "e[-1] + z")));

  // odd-order handle: membership goes through the finite grid criterion
  Module m1 = make(1);
  const Algebra AP = Algebra::UW(Variant::Wm1);
  EnvElement witness = multiply(parse_env(AP, "e[0]"), parse_env(AP, "e[0]")) -
                       multiply(parse_env(AP, "e[-1]"), parse_env(AP, "e[1]")) +
                       parse_env(AP, "e[0]") - EnvElement::scalar(AP, Rat(15, 4));
  CHECK(annihilates(m1, witness));
  for (int k = 0; k <= 3; ++k) CHECK(m1.act(witness, m1.basis({{k}})).is_zero());
  CHECK_FALSE(annihilates(m1, witness + EnvElement::scalar(AP, Rat(1))));
  CHECK_FALSE(annihilates(m1, parse_env(AP, "e[0]")));

  CHECK_THROWS_AS(annihilates(m0, EnvElement::unit(Algebra::SnAlg(2, true))), AlgebraMismatch);
  CHECK_THROWS_AS(annihilates(m0, parse_env(AP, "e[0]")), VariantMismatch);
}

TEST_CASE("grid evaluation of truncated-current coefficients") {
  Module m3 = make(3);  // order 3, so one surviving lowering letter
  const Algebra G3 = Algebra::UGnAlg({3});
  EnvElement v2(G3);
  v2.add_term({{BasisIndex::v(0, 2), 1}}, Rat(1));
  CHECK(annihilator_grid_value(m3, v2, {0}) == EnvElement::scalar(G3, Rat(6)));
  EnvElement expect(G3);
  expect.add_term({}, Rat(-12));
  expect.add_term({{BasisIndex::v(0, 0), 1}}, Rat(6));
  CHECK(annihilator_grid_value(m3, v2, {1}) == expect);

  EnvElement v1(G3);
  v1.add_term({{BasisIndex::v(0, 1), 1}}, Rat(1));
  CHECK(annihilator_grid_value(m3, v1, {0}).is_zero());  // the scalar for v_1 vanishes here

  CHECK_THROWS_AS(annihilator_grid_value(m3, v2, {0, 0}), SizeMismatch);
  CHECK_THROWS_AS(annihilator_grid_value(m3, EnvElement::unit(Algebra::UW(Variant::W)), {0}),
                  AlgebraMismatch);
}

TEST_CASE("graded kernel slices") {
  CHECK(slice_kernel(Variant::W, {2}, 3, 3, 0).size() == 3);
  CHECK(slice_kernel(Variant::W, {3}, 4, 2, 0).size() == 1);
  auto k3 = slice_kernel(Variant::W, {3}, 4, 3, 0);
  CHECK(k3.size() == 4);
  for (const auto& u : k3) CHECK(psi_multi_apply({3}, u).is_zero());

  // order-3 kernel elements annihilate the matching induced modules
  Module m3 = make(3);
  Module m5 = make(5);
  CHECK(annihilates(m3, k3.front()));
  CHECK(annihilates(m5, k3.front()));

  // the polynomial variant has no weight-zero kernel in this window
  CHECK(slice_kernel(Variant::Wm1, {1}, 4, 3, 0).empty());
  CHECK(slice_kernel(Variant::W, {4}, 3, 2, 0).empty());
  CHECK_THROWS_AS(slice_kernel(Variant::Vir, {2}, 3, 2, 0), VariantMismatch);
}

TEST_CASE("annihilators only depend on the pseudo-orbit") {
  LocalFunction chi = parse_localfn(Variant::W, "1:0,0,1");
  Module m0(chi);
  // move the jet coordinates by a unipotent jet change and lift back
  std::vector<std::vector<Rat>> bar = chi.project_to_gn();
  GroupElement g(2, {Rat(1), Rat(3, 2)});
  LocalFunction eta = lift_from_gn(Variant::W, chi.points(), {act_on_dual(g, bar[0])});
  REQUIRE(pseudo_orbit_equal(chi, eta));
  Module m1(eta);
  auto kernel = slice_kernel(Variant::W, {2}, 3, 2, 0);
  REQUIRE(!kernel.empty());
  const Algebra AW = Algebra::UW(Variant::W);
  std::vector<EnvElement> samples = {kernel.front(), parse_env(AW, "e[-1]"),
                                     parse_env(AW, "e[0]*e[1]"),
                                     multiply(parse_env(AW, "e[-2]"), kernel.front())};
  for (const auto& u : samples) CHECK(annihilates(m0, u) == annihilates(m1, u));
}

TEST_CASE("windowed annihilator comparison for the exceptional order-1 pair") {
  CHECK(primreplace_window_check(Variant::W, Rat(1), Rat(3), Rat(7), 2, 2, 6));
  // a window that is too shallow cannot separate the spurious solutions
  CHECK_FALSE(primreplace_window_check(Variant::W, Rat(1), Rat(3), Rat(7), 2, 2, 3));
}
