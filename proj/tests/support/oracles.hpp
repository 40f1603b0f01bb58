#pragma once

// Brute-force reference computations used by the property tests. Nothing here
// calls back into the library's algorithms: fields are polynomial arithmetic
// modulo a searched irreducible, ranks come from naive elimination, and
// characters are evaluated numerically.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <vector>

#include "ellchar/chaincx.hpp"
#include "ellchar/cyclo.hpp"
#include "ellchar/ggroup.hpp"
#include "ellchar/torus.hpp"

namespace ellchar::oracle {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

inline cplx root(const RootOfUnity& z) {
  const double a = 2 * kPi * static_cast<double>(z.numerator()) / static_cast<double>(z.order());
  return {std::cos(a), std::sin(a)};
}

/// Numerical value of a cyclotomic number in the power basis of Q(zeta_N).
inline cplx value(const CycloNumber& x) {
  cplx s = 0;
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    const double c = x.coords()[i].get_d();
    s += c * root(RootOfUnity(static_cast<i64>(i), x.conductor()));
  }
  return s;
}

inline bool near(cplx a, cplx b, double tol = 1e-7) { return std::abs(a - b) < tol; }

/// (1/|G|) sum over elements of x(g) conj(y(g)).
inline cplx inner_product(const GClass& x, const GClass& y) {
  const int n = x.group->order();
  cplx s = 0;
  for (int g = 0; g < n; ++g) s += value(x.at(g)) * std::conj(value(y.at(g)));
  return s / static_cast<double>(n);
}

inline i64 ipow(i64 b, i64 e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline int valuation(i64 x, i64 p) {
  int v = 0;
  for (; x != 0 && x % p == 0; x /= p) ++v;
  return v;
}

// ------------------------------------------------------------------ fields

/// F_{p^k} as polynomials over F_p modulo the lexicographically first monic
/// irreducible of degree k, elements packed in base p.
class PolyField {
 public:
  PolyField(i64 p, int k) : p_(p), k_(k), size_(ipow(p, k)) {
    for (i64 code = size_; code < 2 * size_; ++code) {
      if (code / size_ != 1) continue;
      std::vector<i64> f = digits(code, k + 1);
      if (irreducible(f)) {
        modulus_ = f;
        break;
      }
    }
  }

  i64 size() const { return size_; }

  i64 add(i64 a, i64 b) const {
    auto x = digits(a, k_), y = digits(b, k_);
    for (int i = 0; i < k_; ++i) x[i] = (x[i] + y[i]) % p_;
    return pack(x);
  }

  i64 mul(i64 a, i64 b) const {
    auto x = digits(a, k_), y = digits(b, k_);
    std::vector<i64> z(static_cast<std::size_t>(2 * k_), 0);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p_;
    for (int d = 2 * k_ - 1; d >= k_; --d) {
      const i64 c = z[d];
      if (c == 0) continue;
      for (int i = 0; i <= k_; ++i) z[d - k_ + i] = ((z[d - k_ + i] - c * modulus_[i]) % p_ + p_) % p_;
    }
    z.resize(static_cast<std::size_t>(k_));
    return pack(z);
  }

  i64 pow(i64 a, i64 e) const {
    i64 r = 1;
    for (; e > 0; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }

 private:
  std::vector<i64> digits(i64 code, int len) const {
    std::vector<i64> d(static_cast<std::size_t>(len), 0);
    for (int i = 0; i < len; ++i, code /= p_) d[i] = code % p_;
    return d;
  }
  i64 pack(const std::vector<i64>& d) const {
    i64 code = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) code = code * p_ + d[i];
    return code;
  }
  // No monic factor of degree 1 .. deg/2.
  bool irreducible(const std::vector<i64>& f) const {
    const int deg = static_cast<int>(f.size()) - 1;
    for (int e = 1; 2 * e <= deg; ++e)
      for (i64 code = ipow(p_, e); code < 2 * ipow(p_, e); ++code) {
        std::vector<i64> r = f;
        const std::vector<i64> g = digits(code, e + 1);
        for (int d = deg; d >= e; --d) {
          const i64 c = r[d];
          if (c == 0) continue;
          for (int i = 0; i <= e; ++i) r[d - e + i] = ((r[d - e + i] - c * g[i]) % p_ + p_) % p_;
        }
        bool zero = true;
        for (int i = 0; i < e; ++i) zero = zero && r[i] == 0;
        if (zero) return false;
      }
    return true;
  }

  i64 p_;
  int k_;
  i64 size_;
  std::vector<i64> modulus_;
};

/// The unit group of F_{q^n}[x]/(x^h), enumerated by brute force.
struct TruncatedUnits {
  PolyField field;
  int h;
  std::vector<std::vector<i64>> units;

  TruncatedUnits(i64 p, int degree, int h_) : field(p, degree), h(h_) {
    const i64 fs = field.size();
    const i64 total = ipow(fs, h);
    for (i64 code = 0; code < total; ++code) {
      std::vector<i64> c(static_cast<std::size_t>(h));
      i64 x = code;
      for (int i = 0; i < h; ++i, x /= fs) c[i] = x % fs;
      if (c[0] != 0) units.push_back(c);
    }
  }

  std::vector<i64> mul(const std::vector<i64>& a, const std::vector<i64>& b) const {
    std::vector<i64> z(static_cast<std::size_t>(h), 0);
    for (int i = 0; i < h; ++i)
      for (int j = 0; i + j < h; ++j) z[i + j] = field.add(z[i + j], field.mul(a[i], b[j]));
    return z;
  }

  std::vector<i64> pow(std::vector<i64> a, i64 e) const {
    std::vector<i64> r(static_cast<std::size_t>(h), 0);
    r[0] = 1;
    for (; e > 0; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }

  /// #{u : u^k = 1}.
  i64 count_killed_by(i64 k) const {
    std::vector<i64> one(static_cast<std::size_t>(h), 0);
    one[0] = 1;
    i64 c = 0;
    for (const auto& u : units) c += pow(u, k) == one ? 1 : 0;
    return c;
  }
};

/// #{x in A : k x = 0} from invariant factors.
inline i64 count_killed_by(const FinAb& a, i64 k) {
  i64 c = 1;
  for (i64 d : a.invariant_factors()) c *= std::gcd(d, k);
  return c;
}

// ------------------------------------------------------------------ characters

inline i64 lift_fiber_size(i64 q, int n, i64 ell) { return ipow(ell, valuation(ipow(q, n) - 1, ell)); }

/// theta|_{T^1} has trivial stabilizer under Frobenius, tested on every element of T^1.
inline bool strongly_general(const TorusChar& theta) {
  const auto& t = *theta.torus;
  const AbSubgroup t1 = t.filtration_subgroup(1);
  std::vector<AbElem> elems;
  for (i64 i = 0; i < t1.group.order(); ++i) elems.push_back(t1.inclusion.apply(t1.group.element(i)));
  for (int k = 1; k < t.n(); ++k) {
    const AbHom fk = t.frobenius().power(k);
    bool moved = false;
    for (const auto& x : elems) moved = moved || !(theta.level_part(fk.apply(x)) == theta.level_part(x));
    if (!moved) return false;
  }
  return true;
}

// ------------------------------------------------------------------ linear algebra

inline std::size_t rank_mod(IntMatrix m, i64 p) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (auto& row : m)
    for (auto& v : row) v = ((v % p) + p) % p;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    i64 inv = 1;
    for (i64 e = p - 2, b = m[rank][c]; e > 0; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const i64 f = m[r][c] * inv % p;
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

using CMatrix = std::vector<std::vector<cplx>>;

inline std::size_t rank_complex(CMatrix m, double tol = 1e-8) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    for (std::size_t r = rank + 1; r < rows; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) < tol) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const cplx f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// dim H_i(C tensor F_p) for i = lo .. hi.
inline std::vector<std::size_t> homology_dims_mod(const PermComplex& c, i64 p) {
  std::vector<std::size_t> out;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const std::size_t in = i > c.lo() ? rank_mod(c.differential(i), p) : 0;
    const std::size_t outr = i < c.hi() ? rank_mod(c.differential(i + 1), p) : 0;
    out.push_back(c.size(i) - in - outr);
  }
  return out;
}

/// dim H_i of the theta-eigenspace of C tensor C (characteristic zero).
inline std::vector<std::size_t> isotypic_dims(const PermComplex& c, const AbChar& theta) {
  const FinAb& t = c.t();
  const i64 nt = t.order();
  auto projector = [&](int degree) {
    const std::size_t n = c.size(degree);
    CMatrix e(n, std::vector<cplx>(n, 0));
    for (i64 x = 0; x < nt; ++x) {
      const cplx w = std::conj(root(theta(t.element(x)))) / static_cast<double>(nt);
      for (std::size_t s = 0; s < n; ++s) e[static_cast<std::size_t>(c.act(degree, static_cast<int>(x), static_cast<int>(s)))][s] += w;
    }
    return e;
  };
  auto product = [](const IntMatrix& d, const CMatrix& e) {
    CMatrix out(d.size(), std::vector<cplx>(e.empty() ? 0 : e[0].size(), 0));
    for (std::size_t r = 0; r < d.size(); ++r)
      for (std::size_t k = 0; k < d[r].size(); ++k)
        if (d[r][k] != 0)
          for (std::size_t j = 0; j < e[k].size(); ++j) out[r][j] += static_cast<double>(d[r][k]) * e[k][j];
    return out;
  };
  std::vector<CMatrix> proj;
  for (int i = c.lo(); i <= c.hi(); ++i) proj.push_back(projector(i));
  std::vector<std::size_t> out;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const std::size_t slot = static_cast<std::size_t>(i - c.lo());
    const std::size_t dim = rank_complex(proj[slot]);
    const std::size_t in = i > c.lo() ? rank_complex(product(c.differential(i), proj[slot])) : 0;
    const std::size_t outr = i < c.hi() ? rank_complex(product(c.differential(i + 1), proj[slot + 1])) : 0;
    out.push_back(dim - in - outr);
  }
  return out;
}

/// Lefschetz number sum (-1)^i #{s in S_i : x s = s} of an element x of G x T.
inline i64 lefschetz(const PermComplex& c, int x) {
  i64 total = 0;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    i64 fixed = 0;
    for (std::size_t s = 0; s < c.size(i); ++s) fixed += c.act(i, x, static_cast<int>(s)) == static_cast<int>(s) ? 1 : 0;
    total += (i % 2 == 0 ? 1 : -1) * fixed;
  }
  return total;
}

}  // namespace ellchar::oracle

namespace ellchar {

inline void PrintTo(const GClass& c, std::ostream* os) { *os << c.str(); }
inline void PrintTo(const CycloNumber& x, std::ostream* os) { *os << x.str(); }
inline void PrintTo(const RootOfUnity& z, std::ostream* os) { *os << z.str(); }

}  // namespace ellchar
