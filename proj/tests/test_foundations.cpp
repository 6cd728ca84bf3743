#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "witt/jet.hpp"
#include "witt/laurent.hpp"
#include "witt/matrix.hpp"
#include "witt/rational.hpp"

using namespace witt;

TEST_CASE("rational helpers") {
  CHECK(rat_str(Rat(-3, 6)) == "-1/2");
  CHECK(rat_str(Rat(4)) == "4");
  CHECK(parse_rat("7/3") == Rat(7, 3));
  CHECK(parse_rat("-5") == Rat(-5));
  CHECK(parse_rat("-5/10") == Rat(-1, 2));
  CHECK_THROWS_AS(parse_rat("1/0"), NotInvertible);
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
  CHECK(binomial(Int(7), 3) == 35);
  CHECK(binomial(Int(-1), 3) == -1);
  CHECK(binomial(Int(-2), 2) == 3);
  CHECK(binomial(Int(3), 5) == 0);
  CHECK(rat_pow(Rat(2, 3), 3) == Rat(8, 27));
  CHECK(rat_pow(Rat(2), -2) == Rat(1, 4));
  CHECK_THROWS_AS(rat_pow(Rat(0), -1), EvalAtPole);
}

TEST_CASE("laurent polynomial arithmetic") {
  LaurentPoly p = LaurentPoly::t(2) * Rat(3) + LaurentPoly::t(-1) - LaurentPoly(Rat(5));
  CHECK(p.coeff(2) == 3);
  CHECK(p.coeff(-1) == 1);
  CHECK(p.coeff(0) == -5);
  CHECK(p.coeff(7) == 0);
  CHECK(p.min_exp() == -1);
  CHECK(p.max_exp() == 2);
  CHECK(p.has_negative_exponents());
  CHECK(p.str() == "3*t^2 - 5 + t^-1");

  LaurentPoly q = LaurentPoly::t() + LaurentPoly(Rat(1));
  CHECK((q * q).str() == "t^2 + 2*t + 1");
  CHECK(q.pow(3).coeff(1) == 3);
  CHECK((q - q).is_zero());
  CHECK((-q).coeff(0) == -1);
  CHECK(q.shifted(2).str() == "t^3 + t^2");
  CHECK(LaurentPoly::binom_power(Rat(1), 3).str() == "t^3 - 3*t^2 + 3*t - 1");
}

TEST_CASE("laurent calculus") {
  // d/dt of 3t^2 + t^-1 is 6t - t^-2
  LaurentPoly p = LaurentPoly::t(2) * Rat(3) + LaurentPoly::t(-1);
  CHECK(p.derivative().str() == "6*t - t^-2");
  CHECK(p.derivative().residue() == 0);
  CHECK((LaurentPoly::t(-1) * Rat(4)).residue() == 4);
  CHECK(p.evaluate(Rat(2)) == Rat(25, 2));
  CHECK_THROWS_AS(p.evaluate(Rat(0)), EvalAtPole);
  // divided Taylor coefficients of t^3 at x = 1: 1, 3, 3, 1
  LaurentPoly c = LaurentPoly::t(3);
  for (int k = 0; k <= 3; ++k) CHECK(c.taylor_coefficient(Rat(1), k) == binomial(Int(3), k));
  CHECK(c.taylor_coefficient(Rat(1), 4) == 0);
  // exact division by (t - x)
  LaurentPoly d = LaurentPoly::binom_power(Rat(2), 2);
  CHECK(d.divide_exact(Rat(2)).str() == "t - 2");
  CHECK_THROWS_AS(c.divide_exact(Rat(2)), NotDivisible);
}

TEST_CASE("taylor coefficients against the derivative definition") {
  std::mt19937_64 rng(11);
  auto rint = [&](int lo, int hi) { return lo + int(rng() % std::uint64_t(hi - lo + 1)); };
  for (int t = 0; t < 40; ++t) {
    LaurentPoly f;
    for (int i = 0; i < 3; ++i) f += LaurentPoly::term(rint(-3, 4), Rat(rint(-5, 5), rint(1, 3)));
    Rat x(rint(1, 4));
    for (int k = 0; k <= 3; ++k) {
      LaurentPoly g = f;
      for (int j = 0; j < k; ++j) g = g.derivative();
      CHECK(f.taylor_coefficient(x, k) * Rat(factorial(k)) == g.evaluate(x));
    }
  }
}

TEST_CASE("jets: composition, inverse, truncation") {
  // s(a) = a + a^2 up to order 4
  Jet s(4, {Rat(0), Rat(1), Rat(1)});
  Jet id = Jet::var(4);
  CHECK(s.compose(id) == s);
  // (1 + a)^{-1} = 1 - a + a^2 - a^3
  Jet u(4, {Rat(1), Rat(1)});
  Jet inv = u.inverse();
  CHECK(inv.c == std::vector<Rat>{Rat(1), Rat(-1), Rat(1), Rat(-1)});
  CHECK((u * inv).c == std::vector<Rat>{Rat(1), Rat(0), Rat(0), Rat(0)});
  CHECK_THROWS_AS(Jet(3).inverse(), NotInvertible);
  CHECK(s.derivative().c == std::vector<Rat>{Rat(1), Rat(2), Rat(0), Rat(0)});
  CHECK(s.pow(2).c == std::vector<Rat>{Rat(0), Rat(0), Rat(1), Rat(2)});
  CHECK(s.truncated(2).c == std::vector<Rat>{Rat(0), Rat(1)});
}

TEST_CASE("dual numbers differentiate") {
  // h^2 = 0: (3 + h)^2 = 9 + 6h
  DualNumber x(Rat(3), Rat(1));
  DualNumber y = x * x;
  CHECK(y.v == 9);
  CHECK(y.d == 6);
  DualNumber inv = x.inverse();
  CHECK(inv.v == Rat(1, 3));
  CHECK(inv.d == Rat(-1, 9));
  CHECK_THROWS_AS(DualNumber(Rat(0), Rat(1)).inverse(), NotInvertible);
  // jets over dual numbers compose too
  JetT<DualNumber> j(3);
  j[0] = DualNumber(Rat(1), Rat(0));
  j[1] = DualNumber(Rat(2), Rat(1));
  JetT<DualNumber> sq = j * j;
  CHECK(sq[1] == DualNumber(Rat(4), Rat(2)));
}

TEST_CASE("matrix rank, nullspace, span membership") {
  RatMatrix m(3, 3);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 1) = 1;
  m.at(2, 0) = 2;
  m.at(2, 1) = 5;  // row2 = 2*row0 + row1
  CHECK(m.rank() == 2);
  auto ns = m.nullspace();
  REQUIRE(ns.size() == 1);
  for (int i = 0; i < 3; ++i) {
    Rat acc = 0;
    for (int j = 0; j < 3; ++j) acc += m.at(i, j) * ns[0][j];
    CHECK(acc == 0);
  }
  CHECK(m.in_column_span({Rat(1), Rat(0), Rat(2)}));
  CHECK_FALSE(m.in_column_span({Rat(0), Rat(0), Rat(1)}));

  RatMatrix a = RatMatrix::identity(2);
  a.at(0, 1) = 3;
  RatMatrix b(2, 2);
  b.at(0, 0) = 2;
  b.at(1, 0) = 1;
  RatMatrix ab = a * b;
  CHECK(ab.at(0, 0) == 5);
  CHECK(ab.transpose().at(0, 1) == ab.at(1, 0));
  CHECK(a.apply({Rat(1), Rat(1)}) == std::vector<Rat>{Rat(4), Rat(1)});
}
