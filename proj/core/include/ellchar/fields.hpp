#pragma once

// Finite fields F_{p^k} with table-driven arithmetic, Frobenius, discrete
// logarithms and the Teichmueller bijection onto ell'-roots of unity.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ellchar/cyclo.hpp"
#include "ellchar/intmath.hpp"

namespace ellchar {

/// Element code: the coefficients c_i of the polynomial representative
/// packed as sum c_i p^i. Zero is 0 and one is 1.
using FFCode = u32;

class FiniteField {
 public:
  i64 characteristic() const { return p_; }
  int degree() const { return k_; }
  /// Number of elements p^k.
  i64 size() const { return size_; }
  /// Monic modulus, constant term first.
  const std::vector<i64>& modulus() const { return modulus_; }
  FFCode generator() const { return gen_; }
  /// True for the cached default fields, whose generators are norm compatible
  /// across every tower F_{p^a} in F_{p^b}.
  bool tower_compatible() const { return compatible_; }

  FFCode add(FFCode a, FFCode b) const;
  FFCode sub(FFCode a, FFCode b) const { return add(a, neg(b)); }
  FFCode neg(FFCode a) const;
  FFCode mul(FFCode a, FFCode b) const {
    if (a == 0 || b == 0) return 0;
    u32 s = log_[a] + log_[b];
    if (s >= units_) s -= units_;
    return exp_[s];
  }
  FFCode inv(FFCode a) const;
  FFCode div(FFCode a, FFCode b) const { return mul(a, inv(b)); }
  FFCode pow(FFCode a, i64 e) const;
  /// The image of the integer n under Z -> F_p.
  FFCode from_int(i64 n) const { return static_cast<FFCode>(mod(n, p_)); }

  /// Discrete logarithm to the base generator(); x must be nonzero.
  i64 dlog(FFCode x) const;
  FFCode exp(i64 d) const { return exp_[static_cast<std::size_t>(mod(d, units_))]; }

  /// x -> x^{p^base_degree}; base_degree must divide degree().
  FFCode frobenius(FFCode x, int base_degree) const;
  /// The root of unity d/(p^k - 1) with x = generator()^d.
  RootOfUnity teich_lift(FFCode x) const;
  /// Inverse of teich_lift; the order of z must divide p^k - 1.
  FFCode teich_inverse(const RootOfUnity& z) const;
  /// Multiplicative order of a nonzero element.
  i64 element_order(FFCode x) const;

  std::vector<i64> coeffs(FFCode x) const;
  FFCode from_coeffs(const std::vector<i64>& c) const;
  /// Minimal polynomial of x over F_p, constant term first.
  std::vector<i64> minimal_polynomial(FFCode x) const;

  /// Image of x under the tower embedding sub -> this. Both fields must be
  /// tower compatible and sub.degree() must divide degree().
  FFCode embed_from(const FiniteField& sub, FFCode x) const;

  std::string str(FFCode x) const;

 private:
  friend std::shared_ptr<const FiniteField> build_field(i64, int, std::vector<i64>, bool);
  FiniteField() = default;

  i64 p_ = 2;
  int k_ = 1;
  i64 size_ = 2;
  u32 units_ = 1;
  std::vector<i64> modulus_;
  FFCode gen_ = 1;
  bool compatible_ = false;
  std::vector<u32> exp_;   // exp_[d] = g^d, d in [0, units)
  std::vector<u32> log_;   // log_[x] for x != 0
  std::vector<u32> zech_;  // zech_[d] = log(1 + g^d), or units_ when 1 + g^d = 0
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// Builds F_{p^k}. Without a modulus this returns the cached tower-compatible
/// default field, whose modulus is the least irreducible polynomial in code
/// order; with a modulus the generator is the least element of full order.
FieldPtr make_field(i64 p, int k, const std::optional<std::vector<i64>>& modulus = std::nullopt);

/// Rabin irreducibility test for a monic polynomial over F_p (constant term first).
bool is_irreducible(const std::vector<i64>& poly, i64 p);

/// An element bundled with its field.
struct FFElem {
  FieldPtr field;
  FFCode code = 0;

  friend FFElem operator+(const FFElem& a, const FFElem& b) { return {a.field, a.field->add(a.code, b.code)}; }
  friend FFElem operator*(const FFElem& a, const FFElem& b) { return {a.field, a.field->mul(a.code, b.code)}; }
  friend bool operator==(const FFElem& a, const FFElem& b) { return a.code == b.code && a.field == b.field; }
};

/// x^{q} with q = p^base_degree.
FFElem frobenius(const FFElem& x, int base_degree);
/// Teichmueller lift of a nonzero element.
RootOfUnity teich_lift(const FFElem& x);

}  // namespace ellchar
