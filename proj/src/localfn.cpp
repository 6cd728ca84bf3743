#include "witt/localfn.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "witt/coadjoint.hpp"
#include "witt/errors.hpp"
#include "witt/matrix.hpp"

namespace witt {

namespace {

Variant working_variant(Variant v) { return v == Variant::Vir ? Variant::W : v; }

Rat eval_component(const std::vector<Rat>& alpha, const Rat& x, const LaurentPoly& f) {
  Rat acc = 0;
  for (int k = 0; k < static_cast<int>(alpha.size()); ++k) {
    if (alpha[k] == 0) continue;
    acc += alpha[k] * Rat(factorial(k)) * f.taylor_coefficient(x, k);
  }
  return acc;
}

}  // namespace

LocalFunction::LocalFunction(Variant var, std::vector<LocalComponent> components) : variant(var) {
  for (auto& comp : components) {
    while (!comp.alpha.empty() && comp.alpha.back() == 0) comp.alpha.pop_back();
    if (comp.alpha.empty()) continue;
    if (comp.alpha.size() == 1) comp.alpha.push_back(0);
    if (comp.x == 0 && variant != Variant::Wm1)
      throw EvalAtPole("base point 0 is only available for the polynomial variant");
    comps.push_back(comp);
  }
  std::sort(comps.begin(), comps.end(),
            [](const LocalComponent& a, const LocalComponent& b) { return a.x < b.x; });
  for (std::size_t d = 1; d < comps.size(); ++d)
    if (comps[d - 1].x == comps[d].x) throw DuplicatePoint("repeated base point " + rat_str(comps[d].x));
}

std::vector<Rat> LocalFunction::points() const {
  std::vector<Rat> xs;
  for (const auto& c : comps) xs.push_back(c.x);
  return xs;
}

std::vector<int> LocalFunction::orders() const {
  std::vector<int> ns;
  for (const auto& c : comps) ns.push_back(c.order());
  return ns;
}

Rat LocalFunction::evaluate(const WittElement& w) const {
  if (w.variant != variant) throw VariantMismatch("local function and argument variants differ");
  Rat acc = 0;  // the central part of Vir arguments contributes nothing
  for (const auto& comp : comps) acc += eval_component(comp.alpha, comp.x, w.f);
  return acc;
}

std::vector<Rat> LocalFunction::alpha_prime(int d) const {
  std::vector<Rat> a = comps[d].alpha;
  if (comps[d].half() == 0) a[1] -= Rat(1) / 2;
  return a;
}

LocalFunction LocalFunction::twist() const {
  std::vector<LocalComponent> out;
  for (int d = 0; d < static_cast<int>(comps.size()); ++d)
    out.push_back({comps[d].x, alpha_prime(d)});
  return LocalFunction(variant, std::move(out));
}

bool LocalFunction::twist_obstructed() const {
  for (const auto& comp : comps)
    if (comp.half() == 0 && comp.alpha[1] == Rat(1) / 2) return true;
  return false;
}

std::vector<std::vector<Rat>> LocalFunction::project_to_gn() const {
  std::vector<std::vector<Rat>> out;
  for (int d = 0; d < static_cast<int>(comps.size()); ++d) {
    const int n = comps[d].order();
    std::vector<Rat> ap = alpha_prime(d);
    std::vector<Rat> xi(n);
    for (int i = 0; i < n; ++i) xi[i] = Rat(factorial(i + 1)) * ap[i + 1];
    out.push_back(std::move(xi));
  }
  return out;
}

std::string LocalFunction::str() const {
  std::ostringstream os;
  os << variant_name(variant) << ":";
  bool first = true;
  for (const auto& comp : comps) {
    if (!first) os << " + ";
    first = false;
    os << "chi{" << rat_str(comp.x) << ";";
    for (std::size_t k = 0; k < comp.alpha.size(); ++k) {
      if (k) os << ",";
      os << rat_str(comp.alpha[k]);
    }
    os << "}";
  }
  if (first) os << "0";
  return os.str();
}

LocalFunction lift_from_gn(Variant var, const std::vector<Rat>& xs,
                           const std::vector<std::vector<Rat>>& xis) {
  if (xs.size() != xis.size()) throw SizeMismatch("one base point per covector required");
  std::vector<LocalComponent> comps;
  for (std::size_t d = 0; d < xs.size(); ++d) {
    const int n = static_cast<int>(xis[d].size());
    if (n < 1) throw SizeMismatch("empty covector");
    std::vector<Rat> alpha(n + 1, Rat(0));
    for (int i = 0; i < n; ++i) alpha[i + 1] = xis[d][i] / Rat(factorial(i + 1));
    if (n == 1) alpha[1] += Rat(1) / 2;  // undo the half-density correction
    comps.push_back({xs[d], std::move(alpha)});
  }
  return LocalFunction(var, std::move(comps));
}

std::string polarization_check_name(PolarizationCheck c) {
  switch (c) {
    case PolarizationCheck::Ok:
      return "Ok";
    case PolarizationCheck::NotASubalgebra:
      return "NotASubalgebra";
    case PolarizationCheck::NotIsotropic:
      return "NotIsotropic";
    case PolarizationCheck::WrongCodimension:
      return "WrongCodimension";
  }
  return "?";
}

PolarizationCandidate canonical_polarization(const LocalFunction& chi) {
  PolarizationCandidate cand;
  for (const auto& comp : chi.comps) cand.modulus.push_back({comp.x, comp.half() + 1});
  return cand;
}

namespace {

struct QuotientContext {
  Variant wvar;
  std::vector<SplitPoint> points;
  RatMatrix extras;  // columns: quotient coordinates of the extra spanning vectors
  int dim = 0;       // quotient dimension sum of multiplicities
};

std::vector<Rat> quotient_coords(const QuotientContext& q, const WittElement& w) {
  Coordinates co = coordinates_at_points(w, q.points);
  std::vector<Rat> flat;
  for (const auto& row : co.c)
    for (const auto& v : row) flat.push_back(v);
  return flat;
}

bool member(const QuotientContext& q, const WittElement& w) {
  std::vector<Rat> b = quotient_coords(q, w);
  bool all_zero = true;
  for (const auto& v : b)
    if (v != 0) all_zero = false;
  if (all_zero) return true;
  return q.extras.in_column_span(b);
}

}  // namespace

PolarizationCheck is_polarization(const PolarizationCandidate& cand, const LocalFunction& chi) {
  const Variant wvar = working_variant(chi.variant);
  QuotientContext q;
  q.wvar = wvar;
  for (const auto& [x, k] : cand.modulus) {
    if (k < 1) throw SizeMismatch("multiplicities must be positive");
    q.points.push_back({x, k - 1});
    q.dim += k;
  }
  for (std::size_t i = 0; i < cand.modulus.size(); ++i) {
    if (cand.modulus[i].first == 0 && wvar != Variant::Wm1)
      throw EvalAtPole("root 0 is only available for the polynomial variant");
    for (std::size_t j = i + 1; j < cand.modulus.size(); ++j)
      if (cand.modulus[i].first == cand.modulus[j].first)
        throw DuplicatePoint("repeated root " + rat_str(cand.modulus[i].first));
  }

  LaurentPoly mod(Rat(1));
  for (const auto& [x, k] : cand.modulus) mod = mod * LaurentPoly::binom_power(x, k);

  std::vector<WittElement> extras;
  for (const auto& e : cand.extras) {
    if (e.variant != chi.variant) throw VariantMismatch("extra vector variant differs");
    extras.push_back(chi.variant == Variant::Vir ? vir_project(e) : e);
  }

  q.extras = RatMatrix(q.dim, static_cast<int>(extras.size()));
  for (int j = 0; j < static_cast<int>(extras.size()); ++j) {
    std::vector<Rat> col = quotient_coords(q, extras[j]);
    for (int i = 0; i < q.dim; ++i) q.extras.at(i, j) = col[i];
  }

  // Window of spanning vectors: t^r M d/dt plus the extras.
  std::vector<WittElement> window;
  const int deg = mod.is_zero() ? 0 : mod.max_exp();
  const int lo = wvar == Variant::W ? -4 : 0;
  for (int r = lo; r <= deg + 4; ++r)
    window.push_back(WittElement(wvar, mod * LaurentPoly::t(r)));
  for (const auto& e : extras) window.push_back(e);

  for (std::size_t i = 0; i < window.size(); ++i)
    for (std::size_t j = i + 1; j < window.size(); ++j) {
      WittElement br = witt_bracket(window[i], window[j]);
      if (!member(q, br)) return PolarizationCheck::NotASubalgebra;
    }

  // Isotropy of B_chi; the evaluation ignores any central part, matching the
  // convention that the functional vanishes on the center.
  LocalFunction chi_w(wvar, chi.comps);
  for (std::size_t i = 0; i < window.size(); ++i)
    for (std::size_t j = i + 1; j < window.size(); ++j) {
      WittElement br = witt_bracket(window[i], window[j]);
      if (chi_w.evaluate(br) != 0) return PolarizationCheck::NotIsotropic;
    }

  int expected = 0;
  for (const auto& comp : chi.comps) expected += comp.half() + 1;
  if (q.dim - q.extras.rank() != expected) return PolarizationCheck::WrongCodimension;

  return PolarizationCheck::Ok;
}

Rat twist_rho(const LocalFunction& chi, const WittElement& w) {
  if (w.variant != chi.variant) throw VariantMismatch("argument variant differs");
  const Variant wvar = working_variant(chi.variant);
  WittElement wp = chi.variant == Variant::Vir ? vir_project(w) : w;

  std::vector<SplitPoint> points;
  for (const auto& comp : chi.comps) points.push_back({comp.x, comp.half()});

  Coordinates own = coordinates_at_points(wp, points);
  for (const auto& row : own.c)
    for (const auto& v : row)
      if (v != 0) throw NotInPolarization("argument is not in the standard polarization");

  Rat trace = 0;
  for (int d = 0; d < static_cast<int>(points.size()); ++d) {
    for (int j = -1; j < points[d].m; ++j) {
      WittElement basis = adapted_vector(wvar, points, d, j);
      Coordinates co = coordinates_at_points(witt_bracket(wp, basis), points);
      trace += co.c[d][j + 1];
    }
  }
  return trace / 2;
}

bool pseudo_orbit_equal(const LocalFunction& a, const LocalFunction& b) {
  if (a.variant != b.variant) throw VariantMismatch("variants differ");
  auto tags = [](const LocalFunction& chi) {
    std::vector<std::tuple<int, int, Rat>> out;
    auto bars = chi.project_to_gn();
    for (int d = 0; d < static_cast<int>(chi.comps.size()); ++d) {
      const int n = chi.comps[d].order();
      if (n % 2 == 0) {
        out.push_back({n, 0, Rat(0)});
      } else if (n == 1) {
        out.push_back({n, 1, bars[d][0]});
      } else {
        const int m = (n - 1) / 2;
        auto red = orbit_reduce(bars[d]);
        out.push_back({n, 2, red.xi[m] * red.xi[m] / red.xi[n - 1]});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return tags(a) == tags(b);
}

std::string DixmierDescriptor::str() const {
  std::ostringstream os;
  os << variant_name(variant) << "; n=(";
  for (std::size_t d = 0; d < ns.size(); ++d) {
    if (d) os << ",";
    os << ns[d];
  }
  os << "); chibar=[";
  for (std::size_t d = 0; d < chibar.size(); ++d) {
    if (d) os << " | ";
    for (std::size_t i = 0; i < chibar[d].size(); ++i) {
      if (i) os << ",";
      os << rat_str(chibar[d][i]);
    }
  }
  os << "]; " << (totally_even ? "totally even" : "not totally even");
  return os.str();
}

DixmierDescriptor dixmier_descriptor(const LocalFunction& chi) {
  DixmierDescriptor d;
  d.variant = chi.variant;
  d.ns = chi.orders();
  d.chibar = chi.project_to_gn();
  d.totally_even = !chi.comps.empty();
  for (int n : d.ns)
    if (n % 2 != 0) d.totally_even = false;
  return d;
}

}  // namespace witt
