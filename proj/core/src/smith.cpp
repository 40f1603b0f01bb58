#include "ellchar/smith.hpp"

#include <cstdlib>

namespace ellchar {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<i64>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b, std::size_t inner) {
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix r(a.size(), std::vector<i64>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) r[i][j] = checked_add(r[i][j], checked_mul(a[i][k], b[k][j]));
    }
  return r;
}

namespace {

struct Work {
  IntMatrix a, u, v, vinv;
  std::size_t rows, cols;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& r : a) std::swap(r[i], r[j]);
    for (auto& r : v) std::swap(r[i], r[j]);
    std::swap(vinv[i], vinv[j]);
  }
  // row_i -= q * row_t
  void row_sub(std::size_t i, std::size_t t, i64 q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < cols; ++k) a[i][k] = checked_sub(a[i][k], checked_mul(q, a[t][k]));
    for (std::size_t k = 0; k < rows; ++k) u[i][k] = checked_sub(u[i][k], checked_mul(q, u[t][k]));
  }
  // col_j -= q * col_t
  void col_sub(std::size_t j, std::size_t t, i64 q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < rows; ++k) a[k][j] = checked_sub(a[k][j], checked_mul(q, a[k][t]));
    for (std::size_t k = 0; k < cols; ++k) v[k][j] = checked_sub(v[k][j], checked_mul(q, v[k][t]));
    for (std::size_t k = 0; k < cols; ++k) vinv[t][k] = checked_add(vinv[t][k], checked_mul(q, vinv[j][k]));
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  }
};

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a, std::size_t cols) {
  Work w{a, identity_matrix(a.size()), identity_matrix(cols), identity_matrix(cols), a.size(), cols};
  const std::size_t n = std::min(w.rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = w.rows, pj = cols;
      i64 best = 0;
      for (std::size_t i = t; i < w.rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          i64 x = std::llabs(w.a[i][j]);
          if (x != 0 && (best == 0 || x < best)) {
            best = x;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) goto done;
      if (pi != t) w.swap_rows(pi, t);
      if (pj != t) w.swap_cols(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < w.rows; ++i) {
        w.row_sub(i, t, floor_div(w.a[i][t], w.a[t][t]));
        if (w.a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        w.col_sub(j, t, floor_div(w.a[t][j], w.a[t][t]));
        if (w.a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility by the pivot on the trailing block.
      bool divisible = true;
      for (std::size_t i = t + 1; i < w.rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (w.a[i][j] % w.a[t][t] != 0) {
            w.row_sub(t, i, -1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (w.a[t][t] < 0) w.negate_row(t);
  }
done:
  SmithForm out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = w.a[i][i];
  out.u = std::move(w.u);
  out.v = std::move(w.v);
  out.vinv = std::move(w.vinv);
  return out;
}

LatticeAccumulator::LatticeAccumulator(std::size_t s, i64 n) : s_(s), h_(s, std::vector<i64>(s, 0)) {
  for (std::size_t i = 0; i < s; ++i) h_[i][i] = n;
}

void LatticeAccumulator::add(std::vector<i64> v) {
  for (std::size_t c = 0; c < s_; ++c) {
    auto& row = h_[c];
    i64 q = floor_div(v[c], row[c]);
    if (q != 0)
      for (std::size_t j = c; j < s_; ++j) v[j] = checked_sub(v[j], checked_mul(q, row[j]));
    if (v[c] == 0) continue;
    auto [g, x, y] = ext_gcd(row[c], v[c]);
    const i64 a = row[c] / g, b = v[c] / g;
    for (std::size_t j = c; j < s_; ++j) {
      i64 r = checked_add(checked_mul(x, row[j]), checked_mul(y, v[j]));
      i64 nv = checked_sub(checked_mul(a, v[j]), checked_mul(b, row[j]));
      row[j] = r;
      v[j] = nv;
    }
    if (row[c] < 0)
      for (std::size_t j = c; j < s_; ++j) row[j] = -row[j];
  }
  // Reduce entries above the diagonal.
  for (std::size_t c = s_; c-- > 0;)
    for (std::size_t i = 0; i < c; ++i) {
      i64 q = floor_div(h_[i][c], h_[c][c]);
      if (q != 0)
        for (std::size_t j = c; j < s_; ++j) h_[i][j] = checked_sub(h_[i][j], checked_mul(q, h_[c][j]));
    }
}

}  // namespace ellchar
