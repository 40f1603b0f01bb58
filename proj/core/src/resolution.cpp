#include "ellchar/chaincx.hpp"
#include "ellchar/error.hpp"

namespace ellchar {

namespace {

// a * k for k in F[A]^r, using the addition table of A.
std::vector<FFCode> translate(const std::vector<FFCode>& k, int a, const std::vector<std::vector<int>>& add) {
  const std::size_t n = add.size();
  std::vector<FFCode> out(k.size(), 0);
  for (std::size_t m = 0; m < k.size() / n; ++m)
    for (std::size_t u = 0; u < n; ++u) out[m * n + add[a][u]] = k[m * n + u];
  return out;
}

}  // namespace

GroupAlgebraResolution minimal_resolution(const FieldPtr& field, const FinAb& a, int length) {
  if (length < 0) throw InvalidArgument("minimal_resolution: negative length");
  FieldDomain dom{field};
  const std::size_t n = static_cast<std::size_t>(a.order());
  std::vector<std::vector<int>> add(n, std::vector<int>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      add[x][y] = static_cast<int>(a.index(a.add(a.element(static_cast<i64>(x)), a.element(static_cast<i64>(y)))));
  std::vector<int> gens;
  for (std::size_t i = 0; i < a.rank(); ++i) gens.push_back(static_cast<int>(a.index(a.generator(i))));

  GroupAlgebraResolution res{field, a, {1}, {{}}};
  // Kernel of the augmentation F[A] -> F.
  Matrix<FieldDomain> kernel;
  for (std::size_t x = 1; x < n; ++x) {
    std::vector<FFCode> v(n, 0);
    v[x] = dom.one();
    v[0] = dom.neg(dom.one());
    kernel.push_back(std::move(v));
  }
  for (int j = 1; j <= length; ++j) {
    const std::size_t dim = res.ranks.back() * n;
    // Generators of K modulo J K, J the augmentation ideal.
    Matrix<FieldDomain> span;
    for (const auto& k : kernel)
      for (int g : gens) {
        auto v = translate(k, g, add);
        for (std::size_t i = 0; i < dim; ++i) v[i] = dom.sub(v[i], k[i]);
        span.push_back(std::move(v));
      }
    std::size_t r = rank(dom, span, dim);
    std::vector<std::vector<FFCode>> picks;
    for (const auto& k : kernel) {
      span.push_back(k);
      std::size_t r2 = rank(dom, span, dim);
      if (r2 > r) {
        picks.push_back(k);
        r = r2;
      } else {
        span.pop_back();
      }
    }
    // F-matrix of d_j : F[A]^{picks} -> F[A]^{ranks[j-1]}; columns (m, u) = u * pick_m.
    const std::size_t cols = picks.size() * n;
    auto d = zero_matrix(dom, dim, cols);
    for (std::size_t m = 0; m < picks.size(); ++m)
      for (std::size_t u = 0; u < n; ++u) {
        auto col = translate(picks[m], static_cast<int>(u), add);
        for (std::size_t i = 0; i < dim; ++i) d[i][m * n + u] = col[i];
      }
    res.ranks.push_back(picks.size());
    res.boundaries.push_back(std::move(picks));
    kernel = cols == 0 ? Matrix<FieldDomain>{} : null_space(dom, d, cols);
  }
  return res;
}

}  // namespace ellchar
