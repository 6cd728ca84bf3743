#include "witt/lie.hpp"

#include <sstream>

#include "witt/errors.hpp"

namespace witt {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::W: return "W";
    case Variant::Wm1: return "W-1";
    case Variant::Vir: return "Vir";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  if (name == "W") return Variant::W;
  if (name == "W-1" || name == "W>=-1" || name == "Wm1") return Variant::Wm1;
  if (name == "Vir") return Variant::Vir;
  throw VariantMismatch("unknown algebra variant '" + name + "'");
}

static void check_variant(Variant var, const LaurentPoly& f, const Rat& z) {
  if (var != Variant::Vir && z != 0)
    throw VariantMismatch("central coefficient outside Vir");
  if (var == Variant::Wm1 && f.has_negative_exponents())
    throw VariantMismatch("negative exponents in the bounded-below variant");
}

WittElement::WittElement(Variant var, LaurentPoly poly, Rat central)
    : variant(var), f(std::move(poly)), z(std::move(central)) {
  check_variant(variant, f, z);
}

WittElement WittElement::e(Variant var, int i) {
  return WittElement(var, LaurentPoly::t(i + 1));
}

WittElement WittElement::central(Rat coeff) {
  return WittElement(Variant::Vir, LaurentPoly(), std::move(coeff));
}

WittElement WittElement::operator+(const WittElement& o) const {
  if (variant != o.variant) throw VariantMismatch("adding across variants");
  return WittElement(variant, f + o.f, z + o.z);
}

WittElement WittElement::operator-(const WittElement& o) const {
  return *this + (o * Rat(-1));
}

WittElement WittElement::operator*(const Rat& s) const {
  return WittElement(variant, f * s, z * s);
}

bool WittElement::operator==(const WittElement& o) const {
  return variant == o.variant && f == o.f && z == o.z;
}

std::string WittElement::str() const {
  std::ostringstream os;
  if (f.is_zero() && z == 0) return "0";
  if (!f.is_zero()) os << "(" << f.str() << ") d";
  if (z != 0) {
    if (!f.is_zero()) os << " + ";
    os << rat_str(z) << " z";
  }
  return os.str();
}

WittElement witt_bracket(const WittElement& a, const WittElement& b) {
  if (a.variant != b.variant) throw VariantMismatch("bracket across variants");
  LaurentPoly fg = a.f * b.f.derivative() - a.f.derivative() * b.f;
  Rat central = 0;
  if (a.variant == Variant::Vir) {
    // cocycle: residue of f' g'' - f'' g'
    LaurentPoly w = a.f.derivative() * b.f.derivative().derivative() -
                    a.f.derivative().derivative() * b.f.derivative();
    central = w.residue();
  }
  return WittElement(a.variant, std::move(fg), central);
}

WittElement vir_project(const WittElement& a) {
  if (a.variant != Variant::Vir) throw VariantMismatch("projection defined on Vir only");
  return WittElement(Variant::W, a.f);
}

GnElement::GnElement(int n_, std::vector<Rat> coeffs) : n(n_), c(std::move(coeffs)) {
  if (static_cast<int>(c.size()) != n) throw SizeMismatch("coefficient vector length != n");
}

GnElement GnElement::basis(int n, int i) {
  GnElement g(n, std::vector<Rat>(n, Rat(0)));
  g.c[i] = 1;
  return g;
}

bool GnElement::is_zero() const {
  for (auto& v : c)
    if (v != 0) return false;
  return true;
}

GnElement GnElement::operator+(const GnElement& o) const {
  if (n != o.n) throw SizeMismatch("adding across different n");
  GnElement r = *this;
  for (int i = 0; i < n; ++i) r.c[i] += o.c[i];
  return r;
}

GnElement GnElement::operator*(const Rat& s) const {
  GnElement r = *this;
  for (auto& v : r.c) v *= s;
  return r;
}

GnElement gn_bracket(const GnElement& a, const GnElement& b) {
  if (a.n != b.n) throw SizeMismatch("bracket across different n");
  GnElement r(a.n, std::vector<Rat>(a.n, Rat(0)));
  for (int i = 0; i < a.n; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < a.n; ++j) {
      if (b.c[j] == 0 || i + j >= a.n) continue;
      r.c[i + j] += Rat(j - i) * a.c[i] * b.c[j];
    }
  }
  return r;
}

static void check_points(Variant variant, const std::vector<SplitPoint>& points) {
  for (size_t i = 0; i < points.size(); ++i) {
    if (variant != Variant::Wm1 && points[i].x == 0)
      throw EvalAtPole("base point 0 is not allowed for this variant");
    for (size_t j = i + 1; j < points.size(); ++j)
      if (points[i].x == points[j].x) throw DuplicatePoint("repeated base point " + rat_str(points[i].x));
  }
}

WittElement adapted_vector(Variant variant, const std::vector<SplitPoint>& points, int d, int j) {
  LaurentPoly q(Rat(1));
  for (int e = 0; e < d; ++e)
    q = q * LaurentPoly::binom_power(points[e].x, points[e].m + 1);
  q = q * LaurentPoly::binom_power(points[d].x, j + 1);
  return WittElement(variant, q);
}

Coordinates coordinates_at_points(const WittElement& w, const std::vector<SplitPoint>& points) {
  check_points(w.variant, points);
  Coordinates out;
  LaurentPoly h = w.f;  // current cofactor: remainder-so-far = q_d * h
  for (auto& pt : points) {
    std::vector<Rat> coords(pt.m + 1);
    for (int k = 0; k <= pt.m; ++k) coords[k] = h.taylor_coefficient(pt.x, k);
    out.c.push_back(coords);
    for (int k = 0; k <= pt.m; ++k)
      h = h - LaurentPoly::binom_power(pt.x, k) * coords[k];
    for (int k = 0; k <= pt.m; ++k) h = h.divide_exact(pt.x);
  }
  LaurentPoly rem = h;
  for (auto& pt : points) rem = rem * LaurentPoly::binom_power(pt.x, pt.m + 1);
  Variant rv = w.variant;
  out.remainder = WittElement(rv, rem, w.z);
  return out;
}

}  // namespace witt
