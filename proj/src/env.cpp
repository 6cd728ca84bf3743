#include "witt/env.hpp"

#include <algorithm>
#include <sstream>

#include "witt/errors.hpp"

namespace witt {

Rat dcoeff(int i, int j);  // defined with the morphism family

namespace {

std::string join_blocks(const std::vector<int>& b) {
  std::string out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(b[i]);
  }
  return out;
}

}  // namespace

std::string Algebra::name() const {
  switch (base) {
    case Base::UWitt: {
      std::string s = (commutative ? "S(" : "U(") + variant_name(variant) + ")";
      if (slots > 1) s += "^" + std::to_string(slots);
      return s;
    }
    case Base::UGn:
      return (commutative ? "S(g(" : "U(g(") + join_blocks(blocks) + "))";
    case Base::Sn:
      return "P[t,y" + std::string(y_max < 0 ? "" : "<=" + std::to_string(y_max)) + "]";
    case Base::TyS:
      return "TyS(" + join_blocks(blocks) + ")";
    case Base::Tn:
      return "T(" + join_blocks(blocks) + ")";
    case Base::An:
      return "A(" + join_blocks(blocks) + (an_has_t ? ";t" : "") + ")";
  }
  return "?";
}

void Algebra::validate_letter(const BasisIndex& b) const {
  const bool slot_ok = b.slot >= 0 && b.slot < slots;
  switch (base) {
    case Base::UWitt:
      if (b.kind == Kind::E && slot_ok) {
        if (variant == Variant::Wm1 && b.idx < -1) throw AlgebraMismatch("index below -1 in " + name());
        return;
      }
      if (b.kind == Kind::Z && slot_ok && b.idx == 0 && variant == Variant::Vir) return;
      break;
    case Base::UGn:
      if (b.kind == Kind::V && slot_ok && b.idx >= 0 &&
          (blocks[b.slot] < 0 || b.idx < blocks[b.slot]))
        return;
      break;
    case Base::Sn:
      if (b.slot == 0 && b.kind == Kind::S && b.idx == 0) return;
      if (b.slot == 0 && b.kind == Kind::Y && b.idx >= 0 && (y_max < 0 || b.idx <= y_max)) return;
      break;
    case Base::TyS:
      if (b.slot == 0 && b.kind == Kind::S && b.idx == 0) return;
      if (b.slot == 0 && b.kind == Kind::Y && b.idx == 0) return;
      if (b.kind == Kind::V && slot_ok && b.idx >= 0 &&
          (blocks[b.slot] < 0 || b.idx < blocks[b.slot]))
        return;
      break;
    case Base::Tn:
      if (slot_ok && (b.kind == Kind::S || b.kind == Kind::D) && b.idx == 0) return;
      if (b.kind == Kind::V && slot_ok && b.idx >= 0 &&
          (blocks[b.slot] < 0 || b.idx < blocks[b.slot]))
        return;
      break;
    case Base::An:
      if (slot_ok && (b.kind == Kind::S || b.kind == Kind::D)) {
        if (b.idx == 0) {
          if (an_has_t) return;
        } else if (b.idx >= 1 && (blocks[b.slot] < 0 || b.idx - 1 < blocks[b.slot])) {
          return;
        }
      }
      break;
  }
  throw AlgebraMismatch("letter " + letter_str(*this, b) + " not available in " + name());
}

bool Algebra::letter_localized(const BasisIndex& b) const {
  return t_localized && b.kind == Kind::S && b.idx == 0;
}

bool Algebra::weyl_pair(const BasisIndex& hi, const BasisIndex& lo) const {
  if (hi.slot != lo.slot || hi.kind != Kind::D || lo.kind != Kind::S || hi.idx != lo.idx)
    return false;
  return base == Base::Tn || base == Base::An;
}

Algebra::BracketResult Algebra::bracket_letters(const BasisIndex& x, const BasisIndex& y) const {
  if (x == y) return {};
  if (y > x) {
    BracketResult r = bracket_letters(y, x);
    for (auto& [b, c] : r.terms) c = -c;
    r.scalar = -r.scalar;
    return r;
  }
  // Below, x > y in the letter order.
  BracketResult r;
  if (x.slot != y.slot) return r;
  switch (base) {
    case Base::UWitt: {
      if (x.kind == Kind::E && y.kind == Kind::E) {
        const int i = x.idx, j = y.idx;
        if (j - i != 0) r.terms.push_back({BasisIndex::e(i + j, x.slot), Rat(j - i)});
        if (variant == Variant::Vir && i + j == 0) {
          Rat c = Rat(2) * Rat(Int(i) * i * i - i);
          if (c != 0) r.terms.push_back({BasisIndex::z(x.slot), c});
        }
      }
      return r;  // anything against z is zero
    }
    case Base::UGn:
    case Base::Tn: {
      if (x.kind == Kind::V && y.kind == Kind::V) {
        const int i = x.idx, j = y.idx;
        if (j - i != 0 && (blocks[x.slot] < 0 || i + j < blocks[x.slot]))
          r.terms.push_back({BasisIndex::v(x.slot, i + j), Rat(j - i)});
      } else if (base == Base::Tn && x.kind == Kind::D && y.kind == Kind::S) {
        r.scalar = 1;  // normally routed through the canonical-commutation rule
      }
      return r;
    }
    case Base::An: {
      if (x.kind == Kind::D && y.kind == Kind::S && x.idx == y.idx) r.scalar = 1;
      return r;
    }
    case Base::Sn: {
      if (x.kind == Kind::Y && y.kind == Kind::S) {
        if (x.idx == 0) r.scalar = 1;  // {y0, t} = 1
        return r;
      }
      if (x.kind == Kind::Y && y.kind == Kind::Y) {
        const int i = x.idx, j = y.idx;
        if (j >= 1 && i >= 1) {
          Rat c = dcoeff(i, j);
          if (c != 0 && (y_max < 0 || i + j - 1 <= y_max))
            r.terms.push_back({BasisIndex::y(i + j - 1), c});
        }
        return r;
      }
      return r;
    }
    case Base::TyS: {
      if (x.kind == Kind::Y && y.kind == Kind::S && x.idx == 0 && y.idx == 0) {
        r.scalar = 1;  // {y0, t} = 1
        return r;
      }
      if (x.kind == Kind::V && y.kind == Kind::V) {
        const int i = x.idx, j = y.idx;
        if (j - i != 0 && (blocks[x.slot] < 0 || i + j < blocks[x.slot]))
          r.terms.push_back({BasisIndex::v(x.slot, i + j), Rat(j - i)});
      }
      return r;
    }
  }
  return r;
}

int Algebra::letter_weight(const BasisIndex& b) const {
  switch (base) {
    case Base::UWitt:
      return b.kind == Kind::E ? b.idx : 0;
    case Base::UGn:
      return b.idx;
    case Base::Sn:
      return b.kind == Kind::S ? 1 : b.idx - 1;
    case Base::TyS:
      if (b.kind == Kind::S) return 1;
      if (b.kind == Kind::Y) return -1;
      return b.idx;
    case Base::Tn:
      if (b.kind == Kind::S) return 1;
      if (b.kind == Kind::D) return -1;
      return b.idx;
    case Base::An: {
      if (b.idx == 0) return b.kind == Kind::S ? 1 : -1;
      const int w = blocks[b.slot] + (b.idx - 1);
      return b.kind == Kind::S ? w : -w;
    }
  }
  return 0;
}

int Algebra::letter_filtration(const BasisIndex& b) const {
  switch (b.kind) {
    case Kind::S:
      return 0;
    case Kind::D:
      return 1;
    case Kind::Y:
    case Kind::V:
    case Kind::Z:
    case Kind::E:
      return 1;
  }
  return 0;
}

EnvElement EnvElement::scalar(const Algebra& a, const Rat& c) {
  EnvElement u(a);
  if (c != 0) u.terms[{}] = c;
  return u;
}

EnvElement EnvElement::letter(const Algebra& a, const BasisIndex& b, int exp) {
  a.validate_letter(b);
  if (exp == 0) return unit(a);
  if (exp < 0 && !a.letter_localized(b))
    throw NegativeExponent("negative power of " + letter_str(a, b));
  EnvElement u(a);
  u.terms[{{b, exp}}] = 1;
  return u;
}

bool EnvElement::is_scalar(Rat* value) const {
  if (terms.empty()) {
    if (value) *value = 0;
    return true;
  }
  if (terms.size() == 1 && terms.begin()->first.empty()) {
    if (value) *value = terms.begin()->second;
    return true;
  }
  return false;
}

void EnvElement::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

EnvElement EnvElement::operator+(const EnvElement& o) const {
  if (alg != o.alg) throw AlgebraMismatch("adding elements of " + alg.name() + " and " + o.alg.name());
  EnvElement r = *this;
  for (const auto& [m, c] : o.terms) r.add_term(m, c);
  return r;
}

EnvElement EnvElement::operator-(const EnvElement& o) const {
  if (alg != o.alg) throw AlgebraMismatch("subtracting elements of " + alg.name() + " and " + o.alg.name());
  EnvElement r = *this;
  for (const auto& [m, c] : o.terms) r.add_term(m, -c);
  return r;
}

EnvElement EnvElement::operator*(const Rat& s) const {
  EnvElement r(alg);
  if (s == 0) return r;
  for (const auto& [m, c] : terms) r.terms[m] = c * s;
  return r;
}

std::string letter_str(const Algebra& alg, const BasisIndex& b) {
  (void)alg;
  std::string s;
  switch (b.kind) {
    case Kind::E:
      s = "e[" + std::to_string(b.idx) + "]";
      break;
    case Kind::Z:
      s = "z";
      break;
    case Kind::V:
      return "v(" + std::to_string(b.slot) + "," + std::to_string(b.idx) + ")";
    case Kind::Y:
      return "y" + std::to_string(b.idx);
    case Kind::S:
      s = b.idx == 0 ? "t" : "s" + std::to_string(b.idx - 1);
      break;
    case Kind::D:
      s = b.idx == 0 ? "d" : "d" + std::to_string(b.idx - 1);
      break;
  }
  if (b.slot != 0) s += "@" + std::to_string(b.slot);
  return s;
}

std::string EnvElement::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) os << " + ";
    first = false;
    if (m.empty()) {
      os << rat_str(c);
      continue;
    }
    if (c == -1)
      os << "-";
    else if (c != 1)
      os << rat_str(c) << "*";
    bool fl = true;
    for (const auto& [b, e] : m) {
      if (!fl) os << "*";
      fl = false;
      os << letter_str(alg, b);
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

namespace {

// Rewrites words to the canonical ordered form, memoizing intermediate words.
class Normalizer {
 public:
  explicit Normalizer(const Algebra& a) : alg_(a) {}

  std::map<Monomial, Rat> normalize(const Monomial& word) {
    for (const auto& [b, e] : word) {
      alg_.validate_letter(b);
      if (e < 0 && !alg_.letter_localized(b))
        throw NegativeExponent("negative power of " + letter_str(alg_, b));
    }
    return run(word);
  }

 private:
  static void add_into(std::map<Monomial, Rat>& dst, const std::map<Monomial, Rat>& src,
                       const Rat& f) {
    if (f == 0) return;
    for (const auto& [m, c] : src) {
      Rat& slot = dst[m];
      slot += c * f;
      if (slot == 0) dst.erase(m);
    }
  }

  // Merge adjacent equal letters and drop zero exponents.
  Monomial clean(const Monomial& w) const {
    Monomial st;
    for (const auto& le : w) {
      if (le.second == 0) continue;
      if (!st.empty() && st.back().first == le.first) {
        st.back().second += le.second;
        if (st.back().second == 0) st.pop_back();
      } else {
        st.push_back(le);
      }
    }
    return st;
  }

  std::map<Monomial, Rat> run(const Monomial& word) {
    Monomial st = clean(word);

    if (alg_.commutative) {
      std::map<BasisIndex, int> acc;
      for (const auto& [b, e] : st) {
        acc[b] += e;
      }
      Monomial m;
      for (const auto& [b, e] : acc)
        if (e != 0) m.push_back({b, e});
      return {{m, Rat(1)}};
    }

    if (auto it = memo_.find(st); it != memo_.end()) return it->second;

    for (std::size_t i = 0; i + 1 < st.size(); ++i) {
      const auto [a, p] = st[i];
      const auto [b, q] = st[i + 1];
      if (!(b < a)) continue;

      Monomial prefix(st.begin(), st.begin() + i);
      Monomial suffix(st.begin() + i + 2, st.end());
      std::map<Monomial, Rat> result;

      if (alg_.weyl_pair(a, b)) {
        // a^p b^q = a^{p-1} b^q a + q a^{p-1} b^{q-1}
        Monomial w1 = prefix;
        w1.push_back({a, p - 1});
        w1.push_back({b, q});
        w1.push_back({a, 1});
        w1.insert(w1.end(), suffix.begin(), suffix.end());
        Monomial w2 = prefix;
        w2.push_back({a, p - 1});
        w2.push_back({b, q - 1});
        w2.insert(w2.end(), suffix.begin(), suffix.end());
        result = run(w1);
        add_into(result, run(w2), Rat(q));
        memo_[st] = result;
        return result;
      }

      auto br = alg_.bracket_letters(a, b);
      if (br.terms.empty() && br.scalar == 0) {
        // Commuting letters: swap in place and rescan.
        Monomial sw = prefix;
        sw.push_back({b, q});
        sw.push_back({a, p});
        sw.insert(sw.end(), suffix.begin(), suffix.end());
        result = run(sw);
        memo_[st] = result;
        return result;
      }

      // a^p b^q = a^{p-1} b a b^{q-1} + a^{p-1} [a,b] b^{q-1}
      Monomial w1 = prefix;
      w1.push_back({a, p - 1});
      w1.push_back({b, 1});
      w1.push_back({a, 1});
      w1.push_back({b, q - 1});
      w1.insert(w1.end(), suffix.begin(), suffix.end());
      result = run(w1);
      for (const auto& [cb, cc] : br.terms) {
        Monomial w2 = prefix;
        w2.push_back({a, p - 1});
        w2.push_back({cb, 1});
        w2.push_back({b, q - 1});
        w2.insert(w2.end(), suffix.begin(), suffix.end());
        add_into(result, run(w2), cc);
      }
      if (br.scalar != 0) {
        Monomial w3 = prefix;
        w3.push_back({a, p - 1});
        w3.push_back({b, q - 1});
        w3.insert(w3.end(), suffix.begin(), suffix.end());
        add_into(result, run(w3), br.scalar);
      }
      memo_[st] = result;
      return result;
    }

    std::map<Monomial, Rat> result{{st, Rat(1)}};
    memo_[st] = result;
    return result;
  }

  const Algebra& alg_;
  std::map<Monomial, std::map<Monomial, Rat>> memo_;
};

}  // namespace

EnvElement normal_order(const Algebra& alg, const Monomial& word) {
  Normalizer nz(alg);
  EnvElement out(alg);
  for (const auto& [m, c] : nz.normalize(word)) out.add_term(m, c);
  return out;
}

EnvElement multiply(const EnvElement& a, const EnvElement& b) {
  if (a.alg != b.alg)
    throw AlgebraMismatch("multiplying elements of " + a.alg.name() + " and " + b.alg.name());
  Normalizer nz(a.alg);
  EnvElement out(a.alg);
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      Monomial w = ma;
      w.insert(w.end(), mb.begin(), mb.end());
      const Rat f = ca * cb;
      for (const auto& [m, c] : nz.normalize(w)) out.add_term(m, c * f);
    }
  }
  return out;
}

EnvElement power(const EnvElement& a, int k) {
  if (k == 0) return EnvElement::unit(a.alg);
  if (k < 0) {
    if (a.terms.size() != 1) throw NotInvertible("cannot invert " + a.str());
    const auto& [m, c] = *a.terms.begin();
    for (const auto& [b, e] : m) {
      (void)e;
      if (!a.alg.letter_localized(b)) throw NotInvertible("cannot invert " + a.str());
    }
    Monomial mm;
    for (const auto& [b, e] : m) mm.push_back({b, e * k});
    EnvElement out(a.alg);
    out.add_term(mm, rat_pow(c, k));
    return out;
  }
  EnvElement out = EnvElement::unit(a.alg);
  EnvElement base = a;
  int e = k;
  while (e > 0) {
    if (e & 1) out = multiply(out, base);
    base = (e >>= 1) > 0 ? multiply(base, base) : base;
  }
  return out;
}

EnvElement commutator(const EnvElement& a, const EnvElement& b) {
  return multiply(a, b) - multiply(b, a);
}

EnvElement poisson_bracket(const EnvElement& a, const EnvElement& b) {
  if (a.alg != b.alg)
    throw AlgebraMismatch("bracketing elements of " + a.alg.name() + " and " + b.alg.name());
  const Algebra& alg = a.alg;
  const bool ok = alg.commutative &&
                  (alg.base == Algebra::Base::UWitt || alg.base == Algebra::Base::UGn ||
                   alg.base == Algebra::Base::Sn || alg.base == Algebra::Base::TyS);
  if (!ok) throw NotPoisson("no Poisson structure on " + alg.name());

  Normalizer nz(alg);
  EnvElement out(alg);
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      for (std::size_t i = 0; i < ma.size(); ++i) {
        for (std::size_t j = 0; j < mb.size(); ++j) {
          const auto& [x, p] = ma[i];
          const auto& [y, q] = mb[j];
          auto br = alg.bracket_letters(x, y);
          if (br.terms.empty() && br.scalar == 0) continue;
          const Rat f = ca * cb * p * q;
          Monomial rest;
          for (std::size_t k = 0; k < ma.size(); ++k)
            rest.push_back({ma[k].first, static_cast<int>(k) == static_cast<int>(i)
                                             ? ma[k].second - 1
                                             : ma[k].second});
          for (std::size_t k = 0; k < mb.size(); ++k)
            rest.push_back({mb[k].first, static_cast<int>(k) == static_cast<int>(j)
                                             ? mb[k].second - 1
                                             : mb[k].second});
          for (const auto& [cbx, cc] : br.terms) {
            Monomial w = rest;
            w.push_back({cbx, 1});
            for (const auto& [m, c] : nz.normalize(w)) out.add_term(m, c * f * cc);
          }
          if (br.scalar != 0)
            for (const auto& [m, c] : nz.normalize(rest)) out.add_term(m, c * f * br.scalar);
        }
      }
    }
  }
  return out;
}

int filtration_degree(const Algebra& alg, const Monomial& m) {
  int d = 0;
  for (const auto& [b, e] : m) d += alg.letter_filtration(b) * e;
  return d;
}

int max_filtration_degree(const EnvElement& u) {
  int d = 0;
  for (const auto& [m, c] : u.terms) {
    (void)c;
    d = std::max(d, filtration_degree(u.alg, m));
  }
  return d;
}

Algebra shadow(const Algebra& a) {
  Algebra s = a;
  s.commutative = true;
  return s;
}

EnvElement symbol_at(const EnvElement& u, int d) {
  EnvElement out(shadow(u.alg));
  for (const auto& [m, c] : u.terms)
    if (filtration_degree(u.alg, m) == d) out.add_term(m, c);
  return out;
}

EnvElement associated_graded_symbol(const EnvElement& u) {
  return symbol_at(u, max_filtration_degree(u));
}

std::optional<int> w_weight(const EnvElement& u) {
  std::optional<int> w;
  for (const auto& [m, c] : u.terms) {
    (void)c;
    int d = 0;
    for (const auto& [b, e] : m) d += u.alg.letter_weight(b) * e;
    if (!w)
      w = d;
    else if (*w != d)
      return std::nullopt;
  }
  return w;
}

EnvElement apply_hom(const EnvElement& u, const Algebra& target,
                     const std::function<EnvElement(const BasisIndex&)>& gen) {
  EnvElement out(target);
  for (const auto& [m, c] : u.terms) {
    EnvElement acc = EnvElement::unit(target);
    for (const auto& [b, e] : m) acc = multiply(acc, power(gen(b), e));
    out = out + acc * c;
  }
  return out;
}

}  // namespace witt
