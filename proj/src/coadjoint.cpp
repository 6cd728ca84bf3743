#include "witt/coadjoint.hpp"

#include <sstream>

#include "witt/errors.hpp"

namespace witt {

GroupElement::GroupElement(int n_, std::vector<Rat> coeffs) : n(n_), c(std::move(coeffs)) {
  if (n < 1) throw SizeMismatch("jet order must be at least 1");
  if (static_cast<int>(c.size()) != n) throw SizeMismatch("jet needs exactly n coefficients");
  if (c[0] == 0) throw NotInvertible("leading jet coefficient must be nonzero");
}

GroupElement GroupElement::identity(int n) {
  std::vector<Rat> c(n, Rat(0));
  c[0] = 1;
  return GroupElement(n, std::move(c));
}

GroupElement GroupElement::one_param(int n, int k, const Rat& alpha) {
  std::vector<Rat> c(n, Rat(0));
  c[0] = 1;
  if (k >= 1 && k < n) c[k] = alpha;  // a^{k+1} truncates away when k >= n
  return GroupElement(n, std::move(c));
}

std::string GroupElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < n; ++k) {
    if (c[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (c[k] != 1) os << rat_str(c[k]) << "*";
    os << "a";
    if (k > 0) os << "^" << (k + 1);
  }
  if (first) os << "0";
  return os.str();
}

namespace {

template <typename S>
JetT<S> jet_of(int n, const std::vector<S>& c) {
  JetT<S> s(n + 2);
  for (int k = 1; k <= n; ++k) s[k] = c[k - 1];
  return s;
}

// Columns of the action matrix over an arbitrary scalar ring.
template <typename S>
std::vector<std::vector<S>> matrix_columns(int n, const std::vector<S>& c) {
  JetT<S> s = jet_of<S>(n, c);
  JetT<S> inv = s.derivative().inverse();
  std::vector<std::vector<S>> cols(n);
  JetT<S> p = JetT<S>::constant(S(1), n + 2);
  for (int i = 0; i < n; ++i) {
    p = p * s;  // s^{i+1}
    JetT<S> q = p * inv;
    cols[i].resize(n);
    for (int r = 0; r < n; ++r) cols[i][r] = q[r + 1];
  }
  return cols;
}

void require_same_size(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size()) throw SizeMismatch("covector sizes differ");
}

Rat top_of(const std::vector<Rat>& xi) { return xi.empty() ? Rat(0) : xi.back(); }

}  // namespace

RatMatrix group_matrix(const GroupElement& g) {
  auto cols = matrix_columns<Rat>(g.n, g.c);
  RatMatrix m(g.n, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int r = 0; r < g.n; ++r) m.at(r, i) = cols[i][r];
  return m;
}

GroupElement group_compose(const GroupElement& g, const GroupElement& h) {
  if (g.n != h.n) throw SizeMismatch("jet orders differ");
  const int n = g.n;
  JetT<Rat> jg = jet_of<Rat>(n, g.c);
  JetT<Rat> jh = jet_of<Rat>(n, h.c);
  JetT<Rat> comp = jh.compose(jg);  // h(g(a))
  std::vector<Rat> c(n);
  for (int k = 1; k <= n; ++k) c[k - 1] = comp[k];
  return GroupElement(n, std::move(c));
}

std::vector<Rat> act_on_dual(const GroupElement& g, const std::vector<Rat>& xi) {
  if (static_cast<int>(xi.size()) != g.n) throw SizeMismatch("covector size differs from jet order");
  return group_matrix(g).transpose().apply(xi);
}

ReduceResult orbit_reduce(const std::vector<Rat>& xi) {
  const int n = static_cast<int>(xi.size());
  if (n < 1) throw SizeMismatch("empty covector");
  ReduceResult res{xi, GroupElement::identity(n)};
  if (n == 1) return res;
  if (top_of(xi) == 0) throw TopCoefficientZero("top coordinate must be nonzero to reduce");
  const Rat top = xi[n - 1];
  for (int k = 1; k <= n - 1; ++k) {
    const int target = n - 1 - k;
    const int slope = n - 1 - 2 * k;
    if (slope == 0) continue;  // unclearable middle coordinate (odd n)
    if (res.xi[target] == 0) continue;
    const Rat alpha = -res.xi[target] / (Rat(slope) * top);
    GroupElement step = GroupElement::one_param(n, k, alpha);
    res.xi = act_on_dual(step, res.xi);
    res.witness = group_compose(res.witness, step);
  }
  return res;
}

bool orbit_equal(const std::vector<Rat>& xi, const std::vector<Rat>& eta) {
  require_same_size(xi, eta);
  const int n = static_cast<int>(xi.size());
  if (n < 1) throw SizeMismatch("empty covector");
  if (n == 1) return xi == eta;
  if (top_of(xi) == 0 || top_of(eta) == 0)
    throw TopCoefficientZero("orbit comparison requires nonzero top coordinates");
  if (n % 2 == 0) return true;
  const int m = (n - 1) / 2;
  auto rx = orbit_reduce(xi);
  auto re = orbit_reduce(eta);
  // Remaining freedom is the dilation scaling coordinate i by lambda^i; the
  // ratio gamma^2 / beta of the two surviving coordinates classifies.
  Rat inv_x = rx.xi[m] * rx.xi[m] / rx.xi[n - 1];
  Rat inv_e = re.xi[m] * re.xi[m] / re.xi[n - 1];
  return inv_x == inv_e;
}

int orbit_dimension(const std::vector<Rat>& xi) {
  const int n = static_cast<int>(xi.size());
  RatMatrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j < n && i != j) r.at(i, j) = Rat(j - i) * xi[i + j];
  return r.rank();
}

bool closure_leq(const std::vector<Rat>& eta, const std::vector<Rat>& xi) {
  require_same_size(eta, xi);
  if (top_of(xi) == 0) throw TopCoefficientZero("reference orbit needs a nonzero top coordinate");
  if (top_of(eta) != 0 && orbit_equal(eta, xi)) return true;
  return orbit_dimension(eta) < orbit_dimension(xi);
}

bool tangent_check(const std::vector<Rat>& xi, const std::vector<Rat>& sigma) {
  const int n = static_cast<int>(xi.size());
  if (static_cast<int>(sigma.size()) != n) throw SizeMismatch("direction size differs");
  std::vector<DualNumber> c(n);
  c[0] = DualNumber(1, sigma[0]);
  for (int k = 2; k <= n; ++k) c[k - 1] = DualNumber(0, sigma[k - 1]);
  auto cols = matrix_columns<DualNumber>(n, c);
  // Value part must be the identity; the derivative part acts on xi.
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < n; ++r)
      if (cols[i][r].v != (i == r ? 1 : 0)) return false;
  for (int i = 0; i < n; ++i) {
    Rat lhs = 0;
    for (int j = 0; j < n; ++j) lhs += cols[i][j].d * xi[j];
    Rat rhs = 0;
    for (int j = 1; j <= n; ++j)
      if (i + j - 1 < n) rhs += sigma[j - 1] * Rat(i - j + 1) * xi[i + j - 1];
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace witt
