#pragma once

// Dense exact linear algebra over a field F. F must be constructible from an
// int and support + - * / and equality.

#include <cstddef>
#include <utility>
#include <vector>

#include "flagnest/errors.hpp"

namespace flagnest::linalg {

template <class F>
using Vec = std::vector<F>;
template <class F>
using Mat = std::vector<std::vector<F>>;

template <class F>
bool is_zero(const F& x) {
  return x == F(0);
}

template <class F>
Mat<F> zeros(std::size_t rows, std::size_t cols) {
  return Mat<F>(rows, Vec<F>(cols, F(0)));
}

template <class F>
Mat<F> identity(std::size_t n) {
  Mat<F> m = zeros<F>(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = F(1);
  return m;
}

template <class F>
Mat<F> transpose(const Mat<F>& m) {
  if (m.empty()) return {};
  Mat<F> t = zeros<F>(m[0].size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

template <class F>
Mat<F> mul(const Mat<F>& a, const Mat<F>& b) {
  if (a.empty()) return {};
  std::size_t inner = a[0].size();
  if (inner != b.size()) throw PreconditionError("matrix shape mismatch");
  std::size_t cols = b.empty() ? 0 : b[0].size();
  Mat<F> c = zeros<F>(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

template <class F>
Vec<F> mul(const Mat<F>& a, const Vec<F>& v) {
  Vec<F> out(a.size(), F(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != v.size()) throw PreconditionError("matrix-vector shape mismatch");
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  }
  return out;
}

template <class F>
F dot(const Vec<F>& u, const Vec<F>& v) {
  F s(0);
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

/// Bilinear pairing u^T G v.
template <class F>
F pairing(const Mat<F>& g, const Vec<F>& u, const Vec<F>& v) {
  return dot(u, mul(g, v));
}

/// Reduces m in place to reduced row echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(Mat<F>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    F inv = F(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      F f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(Mat<F> m) {
  return rref(m).size();
}

template <class F>
F determinant(Mat<F> m) {
  std::size_t n = m.size();
  F det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m[p][c])) ++p;
    if (p == n) return F(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    F inv = F(1) / m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      F f = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

/// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
template <class F>
std::vector<Vec<F>> kernel(Mat<F> m, std::size_t cols) {
  if (!m.empty()) cols = m[0].size();
  std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec<F>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(cols, F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Columns of the basis matrix as row vectors, i.e. the vectors spanning a subspace.
template <class F>
std::size_t span_dim(const std::vector<Vec<F>>& vectors) {
  if (vectors.empty()) return 0;
  return rank(Mat<F>(vectors.begin(), vectors.end()));
}

template <class F>
bool in_span(const std::vector<Vec<F>>& basis, const Vec<F>& v) {
  std::vector<Vec<F>> ext = basis;
  ext.push_back(v);
  return span_dim(ext) == span_dim(basis);
}

/// True when span(a) is contained in span(b).
template <class F>
bool subspace_of(const std::vector<Vec<F>>& a, const std::vector<Vec<F>>& b) {
  std::vector<Vec<F>> ext = b;
  ext.insert(ext.end(), a.begin(), a.end());
  return span_dim(ext) == span_dim(b);
}

template <class F>
bool same_subspace(const std::vector<Vec<F>>& a, const std::vector<Vec<F>>& b) {
  return span_dim(a) == span_dim(b) && subspace_of(a, b);
}

/// Orthogonal complement of span(vectors) under the Gram matrix g.
template <class F>
std::vector<Vec<F>> orthogonal_complement(const Mat<F>& g, const std::vector<Vec<F>>& vectors) {
  Mat<F> rows;
  for (const auto& v : vectors) rows.push_back(mul(transpose(g), v));
  return kernel(rows, g.size());
}

/// Canonical basis of a subspace (nonzero rows of the rref).
template <class F>
std::vector<Vec<F>> canonical_basis(const std::vector<Vec<F>>& vectors) {
  if (vectors.empty()) return {};
  Mat<F> m(vectors.begin(), vectors.end());
  auto piv = rref(m);
  m.resize(piv.size());
  return m;
}

}  // namespace flagnest::linalg
