#pragma once

// Exact roots of unity (modeled additively as Q/Z) and cyclotomic numbers.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ellchar/intmath.hpp"

namespace ellchar {

using Rational = mpq_class;

/// Renders a rational as "p/q" (always with an explicit denominator).
std::string rational_to_string(const Rational& r);
/// Parses "p/q" or "p".
Rational parse_rational(std::string_view s);
/// num / den in lowest terms.
Rational make_rational(i64 num, i64 den);

/// An element a/N of Q/Z, standing for the root of unity zeta_N^a.
///
/// Always stored reduced: 0 <= a < N and gcd(a, N) = 1, with 0 written 0/1.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(i64 numerator, i64 order);

  i64 numerator() const { return num_; }
  /// Multiplicative order of the root of unity (the reduced denominator).
  i64 order() const { return ord_; }
  bool is_identity() const { return num_ == 0; }

  friend RootOfUnity operator+(const RootOfUnity& a, const RootOfUnity& b);
  friend RootOfUnity operator-(const RootOfUnity& a, const RootOfUnity& b);
  RootOfUnity operator-() const;
  /// k-th power of the root of unity.
  friend RootOfUnity operator*(i64 k, const RootOfUnity& a);
  RootOfUnity& operator+=(const RootOfUnity& b) { return *this = *this + b; }

  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
  /// Orders by value of the fraction in [0, 1).
  friend std::strong_ordering operator<=>(const RootOfUnity& a, const RootOfUnity& b);

  std::string str() const;
  static RootOfUnity parse(std::string_view s);

 private:
  i64 num_ = 0;
  i64 ord_ = 1;
};

/// Splits x into its ell-power-order and ell'-order components; the parts add up to x.
std::pair<RootOfUnity, RootOfUnity> ell_split(const RootOfUnity& x, i64 ell);

/// The projection Q/Z -> (Q/Z)_{ell'} killing the ell-primary part.
RootOfUnity r_ell_project(const RootOfUnity& x, i64 ell);

/// The Teichmueller section on ell'-roots of unity. In the Q/Z model it is the
/// inclusion; roots whose order is divisible by ell are rejected.
RootOfUnity teich_section(const RootOfUnity& u, i64 ell);

/// An element of the cyclotomic field Q(zeta_N), stored in the power basis
/// 1, zeta, ..., zeta^{phi(N)-1}.
class CycloNumber {
 public:
  /// Zero in Q (conductor 1).
  CycloNumber();
  explicit CycloNumber(const Rational& r, i64 conductor = 1);
  explicit CycloNumber(i64 n) : CycloNumber(Rational(static_cast<long>(n))) {}
  CycloNumber(i64 conductor, std::vector<Rational> coords);

  /// The root of unity z, in Q(zeta_N) for N = conductor (defaults to z.order()).
  static CycloNumber root(const RootOfUnity& z, i64 conductor = 0);

  i64 conductor() const { return conductor_; }
  const std::vector<Rational>& coords() const { return coords_; }

  /// The same value written in Q(zeta_M); M must be a multiple of the conductor.
  CycloNumber embed(i64 m) const;
  /// The same value in the smallest Q(zeta_d) containing it.
  CycloNumber minimal() const;
  /// Writes the value in Q(zeta_d) if it lies there.
  std::optional<CycloNumber> restrict_to(i64 d) const;

  bool is_zero() const;
  std::optional<Rational> as_rational() const;

  /// The Galois automorphism zeta -> zeta^k, gcd(k, N) = 1.
  CycloNumber galois(i64 k) const;
  /// Complex conjugation.
  CycloNumber conj() const { return galois(-1); }
  CycloNumber inverse() const;

  friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator*(const Rational& r, const CycloNumber& a);
  CycloNumber operator-() const;
  CycloNumber& operator+=(const CycloNumber& b);
  CycloNumber& operator-=(const CycloNumber& b);

  /// Adds c * z in place (the workhorse of character sums).
  void add_root(const RootOfUnity& z, const Rational& c = 1);

  /// Value equality, comparing in the compositum.
  friend bool operator==(const CycloNumber& a, const CycloNumber& b);

  std::string str() const;

 private:
  i64 conductor_ = 1;
  std::vector<Rational> coords_;
};

/// Coefficients (constant term first) of the N-th cyclotomic polynomial.
const std::vector<i64>& cyclotomic_polynomial(i64 n);

}  // namespace ellchar
