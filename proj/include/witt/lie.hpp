#pragma once

#include <string>
#include <vector>

#include "witt/laurent.hpp"

namespace witt {

// The three vector-field Lie algebras handled throughout: the full algebra of
// Laurent vector fields W, its polynomial subalgebra bounded below at e_{-1},
// and the central extension Vir with one central generator z.
enum class Variant { W, Wm1, Vir };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& name);

// f(t) d/dt plus (for Vir) a central coefficient. Basis e_i = t^{i+1} d/dt.
struct WittElement {
  Variant variant = Variant::W;
  LaurentPoly f;
  Rat z = 0;

  WittElement() = default;
  WittElement(Variant var, LaurentPoly poly, Rat central = Rat(0));

  static WittElement e(Variant var, int i);  // basis element e_i
  static WittElement central(Rat coeff);     // coeff * z in Vir

  bool is_zero() const { return f.is_zero() && z == 0; }
  WittElement operator+(const WittElement& o) const;
  WittElement operator-(const WittElement& o) const;
  WittElement operator*(const Rat& s) const;
  bool operator==(const WittElement& o) const;

  std::string str() const;
};

WittElement witt_bracket(const WittElement& a, const WittElement& b);

// Vir -> W, forgetting the central coefficient.
WittElement vir_project(const WittElement& a);

// Truncated polynomial vector fields: coefficients of v_0..v_{n-1} where
// v_i is the class of t^{i+1} d/dt and v_{>=n} = 0.
struct GnElement {
  int n = 1;
  std::vector<Rat> c;

  GnElement() = default;
  GnElement(int n_, std::vector<Rat> coeffs);
  static GnElement basis(int n, int i);

  bool is_zero() const;
  GnElement operator+(const GnElement& o) const;
  GnElement operator*(const Rat& s) const;
  bool operator==(const GnElement& o) const { return n == o.n && c == o.c; }
};

GnElement gn_bracket(const GnElement& a, const GnElement& b);

// One base point of a coordinate split: order-m data at x uses the adapted
// directions (t-x)^{j+1} d/dt for j = -1..m-1.
struct SplitPoint {
  Rat x;
  int m = 0;
};

struct Coordinates {
  // c[d][j+1] is the coefficient of the adapted vector at point d, index j
  // (j runs -1..m_d-1, stored with offset 1).
  std::vector<std::vector<Rat>> c;
  WittElement remainder;  // lies in g(prod (t-x_d)^{m_d+1}); carries the z part
};

// Splits w against the points: w = sum c_{d,j} * adapted_vector(d,j) + remainder.
// For a single point the adapted vectors are exactly (t-x)^{j+1} d/dt; for
// several points the vector at point d carries the extra factor
// prod_{d'<d} (t-x_{d'})^{m_{d'}+1} accumulated by the iterated split.
Coordinates coordinates_at_points(const WittElement& w, const std::vector<SplitPoint>& points);

// The adapted direction used by coordinates_at_points (see above).
WittElement adapted_vector(Variant variant, const std::vector<SplitPoint>& points, int d, int j);

}  // namespace witt
