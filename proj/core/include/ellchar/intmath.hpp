#pragma once

// Small exact integer helpers shared by the algebra modules.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "ellchar/error.hpp"

namespace ellchar {

using i64 = std::int64_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer multiplication overflow");
  return r;
}

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer addition overflow");
  return r;
}

inline i64 checked_sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow("integer subtraction overflow");
  return r;
}

/// Least nonnegative residue.
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

inline i64 powmod(i64 base, i64 e, i64 m) {
  i64 r = 1 % m;
  base = mod(base, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

inline i64 ipow(i64 base, i64 e) {
  i64 r = 1;
  for (i64 i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

inline i64 lcm_checked(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / std::gcd(a, b), b);
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
struct Bezout {
  i64 g, x, y;
};
inline Bezout ext_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline i64 invmod(i64 a, i64 m) {
  if (m == 1) return 0;
  auto [g, x, y] = ext_gcd(mod(a, m), m);
  (void)y;
  if (g != 1) throw InvalidArgument("invmod: not invertible");
  return mod(x, m);
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
  std::vector<std::pair<i64, int>> out;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Writes q = p^f; empty when q is not a prime power.
inline std::optional<std::pair<i64, int>> prime_power(i64 q) {
  if (q < 2) return std::nullopt;
  auto f = factorize(q);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

/// ell-adic valuation of a nonzero integer.
inline int valuation(i64 n, i64 ell) {
  if (n == 0) throw InvalidArgument("valuation of zero");
  int v = 0;
  while (n % ell == 0) {
    n /= ell;
    ++v;
  }
  return v;
}

inline i64 euler_phi(i64 n) {
  i64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

/// Multiplicative order of a modulo m; requires gcd(a, m) = 1.
inline i64 multiplicative_order(i64 a, i64 m) {
  if (m == 1) return 1;
  i64 ord = euler_phi(m);
  for (auto [p, e] : factorize(ord)) {
    for (int i = 0; i < e; ++i) {
      if (powmod(a, ord / p, m) == 1)
        ord /= p;
      else
        break;
    }
  }
  return ord;
}

inline std::vector<i64> divisors(i64 n) {
  std::vector<i64> d;
  for (i64 i = 1; i * i <= n; ++i) {
    if (n % i) continue;
    d.push_back(i);
    if (i * i != n) d.push_back(n / i);
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace ellchar
