#pragma once

#include <string>
#include <vector>

#include "witt/coadjoint.hpp"
#include "witt/env.hpp"
#include "witt/errors.hpp"
#include "witt/lie.hpp"
#include "witt/localfn.hpp"
#include "witt/modules.hpp"

namespace witt {

// Raised on malformed command-line expressions; the CLI reports the code and
// exits with the usage status.
struct ParseError : Error {
  explicit ParseError(const std::string& msg = "") : Error("ParseError", msg) {}
};

// Algebra spec strings (see docs/syntax.md):
//   W | W-1 | Vir            enveloping algebra of the variant
//   SW | SW-1 | SVir         its symmetric shadow
//   g:n1,n2,...              truncated currents U(g_n1 (+) ...)
//   Sg:n1,...                their symmetric shadow
//   S[:VAR[:ymax]]           the y-coordinate Poisson algebra
//   TyS:VAR:n1,...           k[t^(+-1), y0] (x) S(g)
//   T:VAR:n1,...             the first-order realization target
//   A:VAR:m1,...             the Weyl realization target
Algebra parse_algebra(const std::string& s);

std::vector<Rat> parse_rat_vector(const std::string& s);
std::vector<int> parse_int_vector(const std::string& s);

// Linear expression in t, d, z, e(i): e.g. "(t^2-2t)d + 3z", "e(2) - e(-2)".
WittElement parse_witt(Variant var, const std::string& s);

// Word/sum expression in the letters of alg: e(i), z, t, D, y(i), v(i),
// v(slot,i), s(j), ds(j), with slot-qualified forms t(slot), D(slot), ...
EnvElement parse_env(const Algebra& alg, const std::string& s);

// Components separated by ';', each "x:alpha0,alpha1,...".
LocalFunction parse_localfn(Variant var, const std::string& s);

// Comma-separated jet coefficients c1..cn.
GroupElement parse_group(int n, const std::string& s);

// Sums of coeff*[k,...|k,...] basis keys, e.g. "2*[0,1|0] - [1,0|0]".
ModuleVector parse_module_vector(const Module& mod, const std::string& s);

}  // namespace witt
