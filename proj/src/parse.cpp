#include "witt/parse.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace witt {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

struct Token {
  enum Type { Num, Ident, Sym, End } type = End;
  std::string text;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Num, s.substr(i, j - i)});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i)});
      i = j;
      continue;
    }
    static const std::string syms = "+-*^()[],|;:/=@";
    if (syms.find(c) == std::string::npos)
      throw ParseError(std::string("unexpected character '") + c + "'");
    out.push_back({Token::Sym, std::string(1, c)});
    ++i;
  }
  out.push_back({Token::End, ""});
  return out;
}

// A value in the small expression language. Which kinds can appear depends on
// the entry point: vector-field expressions use Scalar/Poly/WittV, algebra
// words use Scalar/EnvV, module vectors use Scalar/ModV.
struct Val {
  enum K { Scalar, Poly, WittV, EnvV, ModV } k = Scalar;
  Rat r;
  LaurentPoly p;
  WittElement w;
  EnvElement u;
  ModuleVector mv;

  static Val scalar(Rat x) {
    Val v;
    v.k = Scalar;
    v.r = std::move(x);
    return v;
  }
};

class Parser {
 public:
  enum class Mode { Witt, Env, Module };

  Parser(Mode mode, std::string text) : mode_(mode), toks_(lex(text)) {}

  Variant var = Variant::W;           // Witt mode
  const Algebra* alg = nullptr;       // Env mode
  const Module* mod = nullptr;        // Module mode

  Val parse() {
    Val v = expr();
    if (peek().type != Token::End) throw ParseError("trailing input at '" + peek().text + "'");
    return v;
  }

 private:
  Mode mode_;
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek(int ahead = 0) const {
    size_t i = pos_ + static_cast<size_t>(ahead);
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept_sym(const std::string& s) {
    if (peek().type == Token::Sym && peek().text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_sym(const std::string& s) {
    if (!accept_sym(s)) throw ParseError("expected '" + s + "', got '" + peek().text + "'");
  }

  int integer() {
    bool neg = accept_sym("-");
    if (!neg) accept_sym("+");
    if (peek().type != Token::Num) throw ParseError("expected an integer, got '" + peek().text + "'");
    long long v = 0;
    for (char c : take().text) {
      v = v * 10 + (c - '0');
      if (v > 1000000000LL) throw ParseError("integer too large");
    }
    return static_cast<int>(neg ? -v : v);
  }

  Val expr() {
    Val v = term();
    while (true) {
      if (accept_sym("+")) {
        v = add(v, term(), false);
      } else if (accept_sym("-")) {
        v = add(v, term(), true);
      } else {
        break;
      }
    }
    return v;
  }

  Val term() {
    bool neg = false;
    while (true) {
      if (accept_sym("-"))
        neg = !neg;
      else if (!accept_sym("+"))
        break;
    }
    Val v = powed();
    while (true) {
      if (accept_sym("*")) {
        v = mul(v, powed());
      } else if (peek().type == Token::Ident ||
                 (peek().type == Token::Sym && (peek().text == "(" || peek().text == "["))) {
        v = mul(v, powed());  // juxtaposition
      } else {
        break;
      }
    }
    if (neg) v = mul(Val::scalar(Rat(-1)), v);
    return v;
  }

  Val powed() {
    Val v = atom();
    while (accept_sym("^")) {
      int k = integer();
      v = pw(v, k);
    }
    return v;
  }

  Val atom() {
    const Token& t = peek();
    if (t.type == Token::Num) {
      std::string numtext = take().text;
      if (peek().type == Token::Sym && peek().text == "/" && peek(1).type == Token::Num)
        numtext += take().text + take().text;
      return Val::scalar(parse_rat(numtext));
    }
    if (t.type == Token::Sym && t.text == "(") {
      take();
      Val v = expr();
      expect_sym(")");
      return v;
    }
    if (t.type == Token::Sym && t.text == "[" && mode_ == Mode::Module) return mod_key();
    if (t.type == Token::Ident) return ident_atom(take().text);
    throw ParseError("unexpected token '" + t.text + "'");
  }

  std::vector<int> args() {
    std::vector<int> out;
    expect_sym("(");
    out.push_back(integer());
    while (accept_sym(",")) out.push_back(integer());
    expect_sym(")");
    return out;
  }

  Val ident_atom(const std::string& name) {
    if (mode_ == Mode::Witt) return witt_atom(name);
    if (mode_ == Mode::Env) return env_atom(name);
    throw ParseError("unexpected name '" + name + "' in a module vector");
  }

  Val witt_atom(const std::string& name) {
    Val v;
    if (name == "t") {
      v.k = Val::Poly;
      v.p = LaurentPoly::t();
      return v;
    }
    if (name == "d") {
      v.k = Val::WittV;
      v.w = WittElement(var, LaurentPoly(Rat(1)));
      return v;
    }
    if (name == "z") {
      if (var != Variant::Vir) throw VariantMismatch("the central letter z needs Vir");
      v.k = Val::WittV;
      v.w = WittElement::central(Rat(1));
      return v;
    }
    if (name == "e") {
      auto a = args();
      if (a.size() != 1) throw ParseError("e takes one index");
      v.k = Val::WittV;
      v.w = WittElement::e(var, a[0]);
      return v;
    }
    throw ParseError("unknown name '" + name + "' in a vector-field expression");
  }

  // Letters: e[i] / e(i), z, t, d / D (the t-derivative), y<k>, v(i) /
  // v(slot,i), s<j> / s(j), d<j> / ds(j) (the s_j-derivative); any letter may
  // carry a trailing @slot.
  Val env_atom(const std::string& name) {
    size_t base_len = name.size();
    while (base_len > 0 && std::isdigit(static_cast<unsigned char>(name[base_len - 1])))
      --base_len;
    const std::string base = name.substr(0, base_len);
    const std::string digits = name.substr(base_len);
    const bool has_digits = !digits.empty();
    int suffix = 0;
    for (char c : digits) {
      suffix = suffix * 10 + (c - '0');
      if (suffix > 1000000) throw ParseError("index too large in '" + name + "'");
    }

    auto one_or_two = [&](int& slot, int& idx) {
      auto a = args();
      if (a.size() == 1) {
        slot = 0;
        idx = a[0];
      } else if (a.size() == 2) {
        slot = a[0];
        idx = a[1];
      } else {
        throw ParseError(base + " takes (index) or (slot, index)");
      }
    };

    BasisIndex b;
    if (base == "e" && !has_digits) {
      int i;
      if (accept_sym("[")) {
        i = integer();
        expect_sym("]");
      } else {
        auto a = args();
        if (a.size() != 1) throw ParseError("e takes one index");
        i = a[0];
      }
      b = BasisIndex::e(i);
    } else if (base == "z" && !has_digits) {
      b = BasisIndex::z();
    } else if (base == "t" && !has_digits) {
      b = BasisIndex::t();
    } else if ((base == "d" || base == "D") && !has_digits &&
               !(peek().type == Token::Sym && peek().text == "(")) {
      b = BasisIndex::dt();
    } else if ((base == "d" || base == "ds") && has_digits) {
      b = BasisIndex::d(suffix);
    } else if (base == "ds" && !has_digits) {
      auto a = args();
      if (a.size() != 1) throw ParseError("ds takes one index");
      b = BasisIndex::d(a[0]);
    } else if (base == "s") {
      if (has_digits) {
        b = BasisIndex::s(suffix);
      } else {
        auto a = args();
        if (a.size() != 1) throw ParseError("s takes one index");
        b = BasisIndex::s(a[0]);
      }
    } else if (base == "y") {
      if (has_digits) {
        b = BasisIndex::y(suffix);
      } else {
        auto a = args();
        if (a.size() != 1) throw ParseError("y takes one index");
        b = BasisIndex::y(a[0]);
      }
    } else if (base == "v" && !has_digits) {
      int slot, idx;
      one_or_two(slot, idx);
      b = BasisIndex::v(slot, idx);
    } else {
      throw ParseError("unknown letter '" + name + "'");
    }
    if (accept_sym("@")) b.slot = integer();
    Val v;
    v.k = Val::EnvV;
    v.u = EnvElement::letter(*alg, b);
    return v;
  }

  Val mod_key() {
    expect_sym("[");
    ModExps e;
    SlotExps cur;
    cur.push_back(integer());
    while (true) {
      if (accept_sym(",")) {
        cur.push_back(integer());
      } else if (accept_sym("|")) {
        e.push_back(cur);
        cur.clear();
        cur.push_back(integer());
      } else {
        break;
      }
    }
    expect_sym("]");
    e.push_back(cur);
    Val v;
    v.k = Val::ModV;
    v.mv = mod->basis(e);
    return v;
  }

  Val add(const Val& a, const Val& b, bool subtract) {
    Val bb = subtract ? mul(Val::scalar(Rat(-1)), b) : b;
    Val out;
    if (a.k == Val::Scalar && bb.k == Val::Scalar) return Val::scalar(a.r + bb.r);
    if ((a.k == Val::Scalar || a.k == Val::Poly) && (bb.k == Val::Scalar || bb.k == Val::Poly)) {
      out.k = Val::Poly;
      out.p = (a.k == Val::Poly ? a.p : LaurentPoly(a.r)) +
              (bb.k == Val::Poly ? bb.p : LaurentPoly(bb.r));
      return out;
    }
    if (a.k == Val::WittV && bb.k == Val::WittV) {
      out.k = Val::WittV;
      out.w = a.w + bb.w;
      return out;
    }
    if (a.k == Val::EnvV || bb.k == Val::EnvV) {
      auto prom = [](const Val& v, const Algebra& al) {
        return v.k == Val::EnvV ? v.u : EnvElement::scalar(al, v.r);
      };
      if ((a.k != Val::EnvV && a.k != Val::Scalar) || (bb.k != Val::EnvV && bb.k != Val::Scalar))
        throw ParseError("cannot add these operands");
      const Algebra& al = a.k == Val::EnvV ? a.u.alg : bb.u.alg;
      out.k = Val::EnvV;
      out.u = prom(a, al) + prom(bb, al);
      return out;
    }
    if (a.k == Val::ModV || bb.k == Val::ModV) {
      auto prom = [](const Val& v) {
        if (v.k == Val::ModV) return v.mv;
        if (v.k == Val::Scalar && v.r == 0) return ModuleVector();
        throw ParseError("cannot add a scalar to a module vector");
      };
      out.k = Val::ModV;
      out.mv = prom(a) + prom(bb);
      return out;
    }
    if ((a.k == Val::Scalar && a.r == 0) && bb.k == Val::WittV) return bb;
    if ((bb.k == Val::Scalar && bb.r == 0) && a.k == Val::WittV) return a;
    throw ParseError("cannot add these operands");
  }

  Val mul(const Val& a, const Val& b) {
    Val out;
    if (a.k == Val::Scalar && b.k == Val::Scalar) return Val::scalar(a.r * b.r);
    if (a.k == Val::Scalar || b.k == Val::Scalar) {
      const Rat& s = a.k == Val::Scalar ? a.r : b.r;
      const Val& v = a.k == Val::Scalar ? b : a;
      out.k = v.k;
      switch (v.k) {
        case Val::Poly:
          out.p = v.p * s;
          return out;
        case Val::WittV:
          out.w = v.w * s;
          return out;
        case Val::EnvV:
          out.u = v.u * s;
          return out;
        case Val::ModV:
          out.mv = v.mv * s;
          return out;
        default:
          break;
      }
    }
    if (a.k == Val::Poly && b.k == Val::Poly) {
      out.k = Val::Poly;
      out.p = a.p * b.p;
      return out;
    }
    if ((a.k == Val::Poly && b.k == Val::WittV) || (a.k == Val::WittV && b.k == Val::Poly)) {
      const LaurentPoly& p = a.k == Val::Poly ? a.p : b.p;
      const WittElement& w = a.k == Val::WittV ? a.w : b.w;
      if (w.z != 0) throw ParseError("cannot scale the central letter by a polynomial");
      out.k = Val::WittV;
      out.w = WittElement(w.variant, p * w.f);
      return out;
    }
    if (a.k == Val::EnvV && b.k == Val::EnvV) {
      out.k = Val::EnvV;
      out.u = multiply(a.u, b.u);
      return out;
    }
    if (a.k == Val::WittV && b.k == Val::WittV)
      throw ParseError("vector fields have no associative product here; use an enveloping algebra");
    throw ParseError("cannot multiply these operands");
  }

  Val pw(const Val& a, int k) {
    Val out;
    switch (a.k) {
      case Val::Scalar:
        return Val::scalar(rat_pow(a.r, k));
      case Val::Poly: {
        out.k = Val::Poly;
        if (k >= 0) {
          out.p = a.p.pow(k);
        } else {
          const auto& cs = a.p.coeffs();
          if (cs.size() != 1) throw NotInvertible("cannot invert a non-monomial polynomial");
          out.p = LaurentPoly::term(cs.begin()->first * k, rat_pow(cs.begin()->second, k));
        }
        return out;
      }
      case Val::EnvV:
        out.k = Val::EnvV;
        out.u = power(a.u, k);
        return out;
      default:
        throw ParseError("this operand cannot be raised to a power");
    }
  }
};

}  // namespace

Algebra parse_algebra(const std::string& spec) {
  const std::string s = trim(spec);
  auto parts = split(s, ':');
  for (auto& p : parts) p = trim(p);
  const std::string& head = parts[0];

  auto need = [&](size_t n) {
    if (parts.size() != n) throw ParseError("malformed algebra spec '" + s + "'");
  };
  auto var_of = [&](const std::string& v) { return parse_variant(v); };

  if (head == "W" || head == "W-1" || head == "Vir") {
    need(1);
    return Algebra::UW(var_of(head));
  }
  if (head == "SW" || head == "SW-1" || head == "SVir") {
    need(1);
    return Algebra::SW(var_of(head.substr(1)));
  }
  if (head == "g" || head == "Sg") {
    need(2);
    auto blocks = parse_int_vector(parts[1]);
    return head == "g" ? Algebra::UGnAlg(blocks) : Algebra::SGnAlg(blocks);
  }
  if (head == "S") {
    if (parts.size() == 1) return Algebra::SnAlg(-1, true);
    Variant v = var_of(parts[1]);
    if (v == Variant::Vir) throw ParseError("the Poisson algebra uses W or W-1");
    int ymax = -1;
    if (parts.size() == 3)
      ymax = parse_int_vector(parts[2]).at(0);
    else if (parts.size() != 2)
      throw ParseError("malformed algebra spec '" + s + "'");
    return Algebra::SnAlg(ymax, v == Variant::W);
  }
  if (head == "TyS" || head == "T" || head == "A") {
    need(3);
    Variant v = var_of(parts[1]);
    if (v == Variant::Vir) throw ParseError("'" + head + "' specs use W or W-1");
    auto blocks = parse_int_vector(parts[2]);
    const bool loc = v == Variant::W;
    if (head == "TyS") return Algebra::TySAlg(blocks, loc);
    if (head == "T") return Algebra::TnAlg(blocks, loc);
    return Algebra::AnAlg(blocks, true, loc);
  }
  throw ParseError("unknown algebra spec '" + s + "'");
}

std::vector<Rat> parse_rat_vector(const std::string& s) {
  std::vector<Rat> out;
  for (const auto& part : split(s, ',')) {
    const std::string p = trim(part);
    if (p.empty()) throw ParseError("empty entry in '" + s + "'");
    out.push_back(parse_rat(p));
  }
  return out;
}

std::vector<int> parse_int_vector(const std::string& s) {
  std::vector<int> out;
  for (const auto& r : parse_rat_vector(s)) {
    const Int num = boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1 || num > 1000000 || num < -1000000)
      throw ParseError("expected a small integer in '" + s + "'");
    out.push_back(static_cast<int>(num));
  }
  return out;
}

WittElement parse_witt(Variant var, const std::string& s) {
  Parser p(Parser::Mode::Witt, s);
  p.var = var;
  Val v = p.parse();
  if (v.k == Val::Scalar && v.r == 0) return WittElement(var, LaurentPoly());
  if (v.k != Val::WittV)
    throw ParseError("expected a vector-field expression (did you forget 'd'?)");
  return v.w;
}

EnvElement parse_env(const Algebra& alg, const std::string& s) {
  Parser p(Parser::Mode::Env, s);
  p.alg = &alg;
  Val v = p.parse();
  if (v.k == Val::Scalar) return EnvElement::scalar(alg, v.r);
  if (v.k != Val::EnvV) throw ParseError("expected an algebra expression");
  return v.u;
}

LocalFunction parse_localfn(Variant var, const std::string& s) {
  std::vector<LocalComponent> comps;
  for (const auto& part : split(s, ';')) {
    const std::string p = trim(part);
    if (p.empty()) continue;
    auto halves = split(p, ':');
    if (halves.size() != 2)
      throw ParseError("component '" + p + "' is not of the form x:alpha0,alpha1,...");
    comps.push_back({parse_rat(trim(halves[0])), parse_rat_vector(halves[1])});
  }
  return LocalFunction(var, std::move(comps));
}

GroupElement parse_group(int n, const std::string& s) {
  return GroupElement(n, parse_rat_vector(s));
}

ModuleVector parse_module_vector(const Module& mod, const std::string& s) {
  Parser p(Parser::Mode::Module, s);
  p.mod = &mod;
  Val v = p.parse();
  if (v.k == Val::Scalar && v.r == 0) return ModuleVector();
  if (v.k != Val::ModV) throw ParseError("expected a module vector");
  return v.mv;
}

}  // namespace witt
