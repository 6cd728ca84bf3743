#pragma once

#include <vector>

#include "witt/rational.hpp"

namespace witt {

// Dense exact rational matrix, just large enough for the small linear-algebra
// needs here (ranks, nullspaces, membership tests); dimensions are tiny.
struct RatMatrix {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}

  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  RatMatrix operator*(const RatMatrix& o) const {
    RatMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        if (at(i, k) == 0) continue;
        for (int j = 0; j < o.cols; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
      }
    return r;
  }

  bool operator==(const RatMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  RatMatrix transpose() const {
    RatMatrix r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  std::vector<Rat> apply(const std::vector<Rat>& x) const {
    std::vector<Rat> y(rows, Rat(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) y[i] += at(i, j) * x[j];
    return y;
  }

  // Row-reduce a copy; returns the rank. If `reduced` is non-null it receives
  // the echelon form and `pivots` the pivot column of each nonzero row.
  int rank(RatMatrix* reduced = nullptr, std::vector<int>* pivots = nullptr) const {
    RatMatrix m = *this;
    std::vector<int> piv;
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
      int sel = -1;
      for (int i = r; i < rows; ++i)
        if (m.at(i, col) != 0) { sel = i; break; }
      if (sel < 0) continue;
      for (int j = 0; j < cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
      Rat inv = Rat(1) / m.at(r, col);
      for (int j = 0; j < cols; ++j) m.at(r, j) *= inv;
      for (int i = 0; i < rows; ++i) {
        if (i == r || m.at(i, col) == 0) continue;
        Rat f = m.at(i, col);
        for (int j = 0; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
      }
      piv.push_back(col);
      ++r;
    }
    if (reduced) *reduced = m;
    if (pivots) *pivots = piv;
    return r;
  }

  // Basis of the right nullspace {x : Ax = 0}, one column vector per entry.
  std::vector<std::vector<Rat>> nullspace() const {
    RatMatrix m;
    std::vector<int> piv;
    int r = rank(&m, &piv);
    std::vector<bool> is_pivot(cols, false);
    for (int p : piv) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (int col = 0; col < cols; ++col) {
      if (is_pivot[col]) continue;
      std::vector<Rat> v(cols, Rat(0));
      v[col] = 1;
      for (int i = 0; i < r; ++i) v[piv[i]] = -m.at(i, col);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // Is b in the column span? (exact membership test)
  bool in_column_span(const std::vector<Rat>& b) const {
    RatMatrix ext(rows, cols + 1);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) ext.at(i, j) = at(i, j);
      ext.at(i, cols) = b[i];
    }
    return ext.rank() == rank();
  }
};

}  // namespace witt
