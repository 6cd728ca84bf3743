#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "witt/env.hpp"

using namespace witt;

namespace {

std::mt19937_64 rng(73);
int rint(int lo, int hi) { return lo + int(rng() % std::uint64_t(hi - lo + 1)); }
Rat rrat() { return Rat(rint(-7, 7), rint(1, 3)); }

// Independent straightening for U(W)/U(Vir) words of e letters: repeatedly
// resolve a *randomly chosen* adjacent inversion, so agreement with the
// library across many runs exercises confluence of the rewriting.
using NaiveKey = std::pair<std::vector<int>, int>;  // (sorted e-word, z power)

void naive_straighten(Variant var, std::vector<int> word, int zp, const Rat& coeff,
                      std::map<NaiveKey, Rat>& out) {
  std::vector<size_t> inversions;
  for (size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i] > word[i + 1]) inversions.push_back(i);
  if (inversions.empty()) {
    out[{word, zp}] += coeff;
    return;
  }
  const size_t i = inversions[rng() % inversions.size()];
  const int a = word[i], b = word[i + 1];
  std::vector<int> swapped = word;
  std::swap(swapped[i], swapped[i + 1]);
  naive_straighten(var, swapped, zp, coeff, out);
  std::vector<int> merged = word;
  merged.erase(merged.begin() + long(i));
  merged[i] = a + b;
  naive_straighten(var, merged, zp, coeff * Rat(b - a), out);
  if (var == Variant::Vir && a + b == 0) {
    std::vector<int> dropped = word;
    dropped.erase(dropped.begin() + long(i), dropped.begin() + long(i) + 2);
    naive_straighten(var, dropped, zp + 1, coeff * Rat(2 * (a * a * a - a)), out);
  }
}

EnvElement from_naive(const Algebra& alg, const std::map<NaiveKey, Rat>& m) {
  EnvElement out(alg);
  for (const auto& [key, c] : m) {
    if (c == 0) continue;
    Monomial mono;
    if (key.second > 0) mono.push_back({BasisIndex::z(), key.second});
    for (size_t i = 0; i < key.first.size();) {
      size_t j = i;
      while (j < key.first.size() && key.first[j] == key.first[i]) ++j;
      mono.push_back({BasisIndex::e(key.first[i]), int(j - i)});
      i = j;
    }
    out.add_term(mono, c);
  }
  return out;
}

EnvElement relem(const Algebra& alg, const std::vector<BasisIndex>& pool, int terms, int len,
                 int maxexp) {
  EnvElement out(alg);
  for (int i = 0; i < terms; ++i) {
    Monomial w;
    for (int j = 0, L = rint(0, len); j < L; ++j)
      w.push_back({pool[rng() % pool.size()], rint(1, maxexp)});
    out = out + normal_order(alg, w) * rrat();
  }
  return out;
}

// A canonical PBW word of e letters with ascending indices.
Monomial rmono(int maxlen) {
  std::vector<int> idx;
  for (int i = 0, L = rint(1, maxlen); i < L; ++i) idx.push_back(rint(-3, 3));
  std::sort(idx.begin(), idx.end());
  Monomial m;
  for (size_t i = 0; i < idx.size();) {
    size_t j = i;
    while (j < idx.size() && idx[j] == idx[i]) ++j;
    m.push_back({BasisIndex::e(idx[i]), int(j - i)});
    i = j;
  }
  return m;
}

}  // namespace

TEST_CASE("straightening agrees with an independent rewriter") {
  for (Variant var : {Variant::W, Variant::Wm1, Variant::Vir}) {
    const Algebra alg = Algebra::UW(var);
    const int lo = var == Variant::Wm1 ? -1 : -4;
    for (int t = 0; t < 80; ++t) {
      std::vector<int> word;
      for (int i = 0, L = rint(1, 5); i < L; ++i) word.push_back(rint(lo, 4));
      int zp = var == Variant::Vir ? rint(0, 1) : 0;
      Monomial input;
      for (int w : word) input.push_back({BasisIndex::e(w), 1});
      if (zp) input.insert(input.begin() + long(rng() % (input.size() + 1)),
                           {BasisIndex::z(), 1});
      std::map<NaiveKey, Rat> acc;
      naive_straighten(var, word, zp, Rat(1), acc);
      CHECK(normal_order(alg, input) == from_naive(alg, acc));
    }
  }
}

TEST_CASE("normal order is idempotent on canonical words") {
  const Algebra uw = Algebra::UW(Variant::W);
  for (int t = 0; t < 30; ++t) {
    Monomial m = rmono(4);
    EnvElement a(uw);
    a.add_term(m, Rat(1));
    CHECK(normal_order(uw, m) == a);
  }
}

TEST_CASE("associativity") {
  struct Case {
    Algebra alg;
    std::vector<BasisIndex> pool;
  };
  std::vector<Case> cases;
  {
    Case c{Algebra::UW(Variant::Vir), {}};
    for (int i = -3; i <= 3; ++i) c.pool.push_back(BasisIndex::e(i));
    c.pool.push_back(BasisIndex::z());
    cases.push_back(c);
  }
  {
    Case c{Algebra::UGnAlg({4}), {}};
    for (int i = 0; i < 4; ++i) c.pool.push_back(BasisIndex::v(0, i));
    cases.push_back(c);
  }
  {
    Case c{Algebra::TnAlg({3}, true),
           {BasisIndex::t(), BasisIndex::dt(), BasisIndex::v(0, 0), BasisIndex::v(0, 1),
            BasisIndex::v(0, 2)}};
    cases.push_back(c);
  }
  {
    Case c{Algebra::AnAlg({2}, true, true),
           {BasisIndex::t(), BasisIndex::dt(), BasisIndex::s(0), BasisIndex::s(1),
            BasisIndex::d(0), BasisIndex::d(1)}};
    cases.push_back(c);
  }
  for (const Case& c : cases) {
    for (int t = 0; t < 25; ++t) {
      EnvElement a = relem(c.alg, c.pool, 2, 2, 2), b = relem(c.alg, c.pool, 2, 2, 2),
                 x = relem(c.alg, c.pool, 2, 2, 2);
      CHECK(multiply(multiply(a, b), x) == multiply(a, multiply(b, x)));
    }
  }
}

TEST_CASE("commutators reproduce the Lie brackets") {
  const Algebra uw = Algebra::UW(Variant::W);
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) {
      EnvElement lhs = commutator(EnvElement::letter(uw, BasisIndex::e(i)),
                                  EnvElement::letter(uw, BasisIndex::e(j)));
      CHECK(lhs == EnvElement::letter(uw, BasisIndex::e(i + j)) * Rat(j - i));
    }
  const Algebra uv = Algebra::UW(Variant::Vir);
  for (int i = -4; i <= 4; ++i) {
    EnvElement lhs = commutator(EnvElement::letter(uv, BasisIndex::e(i)),
                                EnvElement::letter(uv, BasisIndex::e(-i)));
    EnvElement rhs = EnvElement::letter(uv, BasisIndex::e(0)) * Rat(-2 * i) +
                     EnvElement::letter(uv, BasisIndex::z()) * Rat(2 * (i * i * i - i));
    CHECK(lhs == rhs);
    // the central letter commutes with everything
    std::vector<BasisIndex> pool;
    for (int k = -3; k <= 3; ++k) pool.push_back(BasisIndex::e(k));
    CHECK(commutator(EnvElement::letter(uv, BasisIndex::z()), relem(uv, pool, 2, 3, 2))
              .is_zero());
  }
  const Algebra ug = Algebra::UGnAlg({5});
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      EnvElement lhs = commutator(EnvElement::letter(ug, BasisIndex::v(0, i)),
                                  EnvElement::letter(ug, BasisIndex::v(0, j)));
      EnvElement rhs = i + j < 5
                           ? EnvElement::letter(ug, BasisIndex::v(0, i + j)) * Rat(j - i)
                           : EnvElement(ug);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("mixed tensor algebra relations") {
  const Algebra tn = Algebra::TnAlg({3}, true);
  EnvElement t = EnvElement::letter(tn, BasisIndex::t());
  EnvElement d = EnvElement::letter(tn, BasisIndex::dt());
  CHECK(commutator(d, t) == EnvElement::unit(tn));
  for (int i = 0; i < 3; ++i) {
    EnvElement vi = EnvElement::letter(tn, BasisIndex::v(0, i));
    CHECK(commutator(d, vi).is_zero());
    CHECK(commutator(t, vi).is_zero());
    for (int j = 0; j < 3; ++j) {
      EnvElement vj = EnvElement::letter(tn, BasisIndex::v(0, j));
      EnvElement rhs = i + j < 3 ? EnvElement::letter(tn, BasisIndex::v(0, i + j)) * Rat(j - i)
                                 : EnvElement(tn);
      CHECK(commutator(vi, vj) == rhs);
    }
  }
}

TEST_CASE("localized Weyl relations") {
  const Algebra an = Algebra::AnAlg({2}, true, true);
  EnvElement t = EnvElement::letter(an, BasisIndex::t());
  EnvElement d = EnvElement::letter(an, BasisIndex::dt());
  for (int k = -4; k <= 4; ++k)
    CHECK(commutator(d, power(t, k)) == power(t, k - 1) * Rat(k));
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      EnvElement lhs = commutator(EnvElement::letter(an, BasisIndex::d(j)),
                                  EnvElement::letter(an, BasisIndex::s(k)));
      CHECK(lhs == (j == k ? EnvElement::unit(an) : EnvElement(an)));
    }
  // cross pairs commute; powers differentiate
  CHECK(commutator(d, EnvElement::letter(an, BasisIndex::s(0))).is_zero());
  CHECK(commutator(EnvElement::letter(an, BasisIndex::d(1)), t).is_zero());
  CHECK(commutator(EnvElement::letter(an, BasisIndex::d(0)),
                   power(EnvElement::letter(an, BasisIndex::s(0)), 5)) ==
        power(EnvElement::letter(an, BasisIndex::s(0)), 4) * Rat(5));
  // only localized letters are invertible
  CHECK_THROWS_AS(power(EnvElement::letter(an, BasisIndex::s(0)), -1), NotInvertible);
  const Algebra uw = Algebra::UW(Variant::W);
  CHECK_THROWS_AS(power(EnvElement::letter(uw, BasisIndex::e(1)), -1), NotInvertible);
}

TEST_CASE("symmetric shadows commute and Poisson identities hold") {
  const Algebra sw = Algebra::SW(Variant::W);
  std::vector<BasisIndex> pool;
  for (int i = -3; i <= 3; ++i) pool.push_back(BasisIndex::e(i));
  for (int t = 0; t < 20; ++t) {
    EnvElement a = relem(sw, pool, 2, 3, 2), b = relem(sw, pool, 2, 3, 2),
               c = relem(sw, pool, 2, 2, 2);
    CHECK(multiply(a, b) == multiply(b, a));
    CHECK((poisson_bracket(a, b) + poisson_bracket(b, a)).is_zero());
    CHECK(poisson_bracket(a, multiply(b, c)) ==
          multiply(poisson_bracket(a, b), c) + multiply(b, poisson_bracket(a, c)));
    EnvElement jac = poisson_bracket(a, poisson_bracket(b, c)) +
                     poisson_bracket(b, poisson_bracket(c, a)) +
                     poisson_bracket(c, poisson_bracket(a, b));
    CHECK(jac.is_zero());
  }
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j)
      CHECK(poisson_bracket(EnvElement::letter(sw, BasisIndex::e(i)),
                            EnvElement::letter(sw, BasisIndex::e(j))) ==
            EnvElement::letter(sw, BasisIndex::e(i + j)) * Rat(j - i));
}

TEST_CASE("filtration and top symbols") {
  const Algebra uw = Algebra::UW(Variant::W);
  const Algebra an = Algebra::AnAlg({1}, false, false);
  CHECK(shadow(uw) == Algebra::SW(Variant::W));
  CHECK(filtration_degree(uw, {{BasisIndex::e(2), 3}, {BasisIndex::e(5), 1}}) == 4);
  CHECK(filtration_degree(an, {{BasisIndex::s(0), 5}, {BasisIndex::d(0), 2}}) == 2);
  for (int t = 0; t < 30; ++t) {
    // single canonical words: the top layer of the commutator is the Poisson
    // bracket of the top symbols
    Monomial ma = rmono(3), mb = rmono(3);
    EnvElement a(uw), b(uw);
    a.add_term(ma, Rat(1));
    b.add_term(mb, Rat(1));
    const int p = max_filtration_degree(a), q = max_filtration_degree(b);
    EnvElement comm = commutator(a, b);
    CHECK(max_filtration_degree(comm) <= p + q - 1);
    CHECK(symbol_at(comm, p + q - 1) ==
          poisson_bracket(associated_graded_symbol(a), associated_graded_symbol(b)));
  }
  // the top symbol of a canonical word is the same word in the commutative shadow
  EnvElement u(uw);
  u.add_term({{BasisIndex::e(-1), 1}, {BasisIndex::e(2), 2}}, Rat(3));
  u.add_term({{BasisIndex::e(0), 1}}, Rat(7));
  EnvElement top(shadow(uw));
  top.add_term({{BasisIndex::e(-1), 1}, {BasisIndex::e(2), 2}}, Rat(3));
  CHECK(associated_graded_symbol(u) == top);
  CHECK(max_filtration_degree(u) == 3);
  EnvElement low(shadow(uw));
  low.add_term({{BasisIndex::e(0), 1}}, Rat(7));
  CHECK(symbol_at(u, 1) == low);
}

TEST_CASE("weight grading") {
  const Algebra uw = Algebra::UW(Variant::W);
  EnvElement u(uw);
  u.add_term({{BasisIndex::e(-1), 1}, {BasisIndex::e(2), 1}}, Rat(1));
  u.add_term({{BasisIndex::e(0), 1}, {BasisIndex::e(1), 1}}, Rat(4));
  CHECK(w_weight(u) == 1);
  u.add_term({{BasisIndex::e(0), 1}}, Rat(1));
  CHECK(!w_weight(u).has_value());
  const Algebra an = Algebra::AnAlg({2}, true, true);
  EnvElement w = multiply(power(EnvElement::letter(an, BasisIndex::t()), 3),
                          multiply(EnvElement::letter(an, BasisIndex::s(0)),
                                   EnvElement::letter(an, BasisIndex::d(0))));
  CHECK(w_weight(w) == 3);
  CHECK(w_weight(EnvElement::unit(uw)) == 0);
}

TEST_CASE("letters outside an algebra are rejected") {
  CHECK_THROWS_AS(EnvElement::letter(Algebra::UGnAlg({3}), BasisIndex::v(0, 3)),
                  AlgebraMismatch);
  CHECK_THROWS_AS(EnvElement::letter(Algebra::UW(Variant::Wm1), BasisIndex::e(-2)),
                  AlgebraMismatch);
  CHECK_THROWS_AS(EnvElement::letter(Algebra::UW(Variant::W), BasisIndex::z()),
                  AlgebraMismatch);
  CHECK_THROWS_AS(EnvElement::letter(Algebra::SnAlg(2, true), BasisIndex::y(3)),
                  AlgebraMismatch);
  CHECK_THROWS_AS(multiply(EnvElement::unit(Algebra::UW(Variant::W)),
                           EnvElement::unit(Algebra::SW(Variant::W))),
                  AlgebraMismatch);
}
