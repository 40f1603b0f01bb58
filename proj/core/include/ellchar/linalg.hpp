#pragma once

// Dense linear algebra over exact coefficient domains: the rationals,
// cyclotomic fields and finite fields.

#include <utility>
#include <vector>

#include "ellchar/cyclo.hpp"
#include "ellchar/fields.hpp"

namespace ellchar {

struct RationalDomain {
  using T = Rational;
  T zero() const { return 0; }
  T one() const { return 1; }
  T from_int(i64 n) const { return Rational(static_cast<long>(n)); }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const { return 1 / a; }
};

struct CycloDomain {
  using T = CycloNumber;
  i64 conductor = 1;
  T zero() const { return CycloNumber(Rational(0), conductor); }
  T one() const { return CycloNumber(Rational(1), conductor); }
  T from_int(i64 n) const { return CycloNumber(Rational(static_cast<long>(n)), conductor); }
  bool is_zero(const T& a) const { return a.is_zero(); }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const { return a.inverse(); }
};

struct FieldDomain {
  using T = FFCode;
  FieldPtr field;
  T zero() const { return 0; }
  T one() const { return 1; }
  T from_int(i64 n) const { return field->from_int(n); }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const { return field->add(a, b); }
  T sub(const T& a, const T& b) const { return field->sub(a, b); }
  T mul(const T& a, const T& b) const { return field->mul(a, b); }
  T neg(const T& a) const { return field->neg(a); }
  T inv(const T& a) const { return field->inv(a); }
};

template <class D>
using Matrix = std::vector<std::vector<typename D::T>>;

template <class D>
Matrix<D> zero_matrix(const D& dom, std::size_t rows, std::size_t cols) {
  return Matrix<D>(rows, std::vector<typename D::T>(cols, dom.zero()));
}

template <class D>
Matrix<D> identity(const D& dom, std::size_t n) {
  auto m = zero_matrix(dom, n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = dom.one();
  return m;
}

template <class D>
Matrix<D> multiply(const D& dom, const Matrix<D>& a, const Matrix<D>& b, std::size_t inner, std::size_t cols) {
  auto r = zero_matrix(dom, a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (dom.is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!dom.is_zero(b[k][j])) r[i][j] = dom.add(r[i][j], dom.mul(a[i][k], b[k][j]));
    }
  return r;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <class D>
std::vector<std::size_t> rref(const D& dom, Matrix<D>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && dom.is_zero(m[p][c])) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    auto inv = dom.inv(m[r][c]);
    for (std::size_t j = c; j < cols; ++j)
      if (!dom.is_zero(m[r][j])) m[r][j] = dom.mul(m[r][j], inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || dom.is_zero(m[i][c])) continue;
      auto f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!dom.is_zero(m[r][j])) m[i][j] = dom.sub(m[i][j], dom.mul(f, m[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

template <class D>
std::size_t rank(const D& dom, Matrix<D> m, std::size_t cols) {
  // Row echelon form without back substitution.
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && dom.is_zero(m[p][c])) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    auto inv = dom.inv(m[r][c]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (dom.is_zero(m[i][c])) continue;
      auto f = dom.mul(m[i][c], inv);
      for (std::size_t j = c; j < cols; ++j)
        if (!dom.is_zero(m[r][j])) m[i][j] = dom.sub(m[i][j], dom.mul(f, m[r][j]));
    }
    ++r;
  }
  return r;
}

/// Basis (as rows) of the right null space {x : m x = 0}.
template <class D>
Matrix<D> null_space(const D& dom, Matrix<D> m, std::size_t cols) {
  auto pivots = rref(dom, m, cols);
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  Matrix<D> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename D::T> v(cols, dom.zero());
    v[free] = dom.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = dom.neg(m[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class D>
Matrix<D> transpose(const D& dom, const Matrix<D>& m, std::size_t cols) {
  auto t = zero_matrix(dom, cols, m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace ellchar
