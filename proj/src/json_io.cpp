#include "witt/json_io.hpp"

namespace witt {

Json to_json(const Rat& r) { return rat_str(r); }

Json to_json(const std::vector<Rat>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(to_json(r));
  return a;
}

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return Json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

Json to_json(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& [exp, c] : p.coeffs()) terms.push_back(Json{{"exp", exp}, {"coeff", to_json(c)}});
  return terms;
}

Json to_json(const WittElement& w) {
  Json j{{"variant", variant_name(w.variant)}, {"f", to_json(w.f)}, {"str", w.str()}};
  if (w.variant == Variant::Vir) j["z"] = to_json(w.z);
  return j;
}

namespace {

Json letter_json(const BasisIndex& b) {
  std::string kind;
  int index = b.idx;
  switch (b.kind) {
    case Kind::E:
      kind = "e";
      break;
    case Kind::Z:
      kind = "z";
      break;
    case Kind::V:
      kind = "v";
      break;
    case Kind::Y:
      kind = "y";
      break;
    case Kind::S:
      kind = b.idx == 0 ? "t" : "s";
      if (b.idx != 0) index = b.idx - 1;
      break;
    case Kind::D:
      kind = b.idx == 0 ? "D" : "ds";
      if (b.idx != 0) index = b.idx - 1;
      break;
  }
  return Json{{"kind", kind}, {"slot", b.slot}, {"index", index}};
}

}  // namespace

Json to_json(const EnvElement& u) {
  Json terms = Json::array();
  for (const auto& [mono, c] : u.terms) {
    Json word = Json::array();
    for (const auto& [b, p] : mono) {
      Json l = letter_json(b);
      l["power"] = p;
      word.push_back(l);
    }
    terms.push_back(Json{{"coeff", to_json(c)}, {"word", word}});
  }
  return Json{{"algebra", u.alg.name()}, {"terms", terms}, {"str", u.str()}};
}

Json to_json(const LocalFunction& chi) {
  Json comps = Json::array();
  for (const auto& c : chi.comps)
    comps.push_back(Json{{"x", to_json(c.x)}, {"alpha", to_json(c.alpha)}});
  return Json{{"variant", variant_name(chi.variant)}, {"components", comps}, {"str", chi.str()}};
}

Json to_json(const GroupElement& g) {
  return Json{{"n", g.n}, {"c", to_json(g.c)}, {"str", g.str()}};
}

Json to_json(const ModuleVector& v) {
  Json terms = Json::array();
  for (const auto& [exps, c] : v.terms) {
    Json e = Json::array();
    for (const auto& slot : exps) e.push_back(slot);
    terms.push_back(Json{{"coeff", to_json(c)}, {"exps", e}});
  }
  return Json{{"terms", terms}, {"str", v.str()}};
}

Json to_json(const GeneratorReduction& r) {
  return Json{{"y", to_json(r.y)}, {"c", to_json(r.c)}};
}

Json to_json(const ReduceResult& r) {
  return Json{{"xi", to_json(r.xi)}, {"witness", to_json(r.witness)}};
}

Json to_json(const DixmierDescriptor& d) {
  Json bars = Json::array();
  for (const auto& b : d.chibar) bars.push_back(to_json(b));
  return Json{{"variant", variant_name(d.variant)},
              {"orders", d.ns},
              {"chibar", bars},
              {"totally_even", d.totally_even}};
}

}  // namespace witt
