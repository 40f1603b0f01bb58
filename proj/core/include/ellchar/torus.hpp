#pragma once

// The unit groups T_h = (F_{q^n}[w]/w^h)^x of the unramified degree-n
// extension in the equal-characteristic model, with Frobenius, the congruence
// filtration T^a, and smooth characters of T = L^x.

#include <memory>
#include <vector>

#include "ellchar/fgab.hpp"
#include "ellchar/fields.hpp"

namespace ellchar {

/// The split sequence 1 -> T^1_h -> T_h -> F_{q^n}^x -> 1.
struct SplitSES {
  AbSubgroup kernel;
  FinAb quotient;         ///< cyclic of order q^n - 1, identified with F_{q^n}^x via the generator
  AbHom projection;       ///< T_h -> quotient (residue, then discrete log)
  AbHom splitting;        ///< quotient -> T_h by Teichmueller representatives
  AbHom quotient_frobenius;
};

class TorusLevel {
 public:
  i64 q() const { return q_; }
  i64 p() const { return p_; }
  int f() const { return f_; }
  int n() const { return n_; }
  int h() const { return h_; }
  const FieldPtr& residue_field() const { return field_; }
  const FinAb& unit_group() const { return group_; }
  const AbHom& frobenius() const { return frob_; }

  /// Truncated power series are packed as sum c_i Q^i with Q = q^n and c_i field codes.
  u64 ring_size() const { return ring_size_; }
  std::vector<FFCode> unpack(u64 x) const;
  u64 pack(const std::vector<FFCode>& c) const;
  u64 ring_mul(u64 a, u64 b) const;
  u64 ring_frobenius(u64 a) const;
  bool is_unit(u64 x) const { return x % static_cast<u64>(residue_size_) != 0; }

  /// The structure map: coordinates of a unit in unit_group(), and back.
  AbElem coords(u64 unit) const;
  u64 unit(const AbElem& x) const;

  /// Generators of T^a_h (as group elements) for 1 <= a <= h.
  std::vector<AbElem> filtration_generators(int a) const;
  /// T^a_h with its inclusion into T_h.
  AbSubgroup filtration_subgroup(int a) const;
  SplitSES split_ses() const;

  /// Truncation T_h -> T_{h'} for a torus with the same (q, n) and h' <= h.
  AbHom projection_to(const TorusLevel& lower) const;

  /// Checks the stated invariants (orders, Frobenius^n = id, structure map on
  /// generators and a deterministic sample of products). Throws CheckFailed.
  void verify() const;

  friend bool operator==(const TorusLevel& a, const TorusLevel& b) {
    return a.q_ == b.q_ && a.n_ == b.n_ && a.h_ == b.h_;
  }

 private:
  friend std::shared_ptr<const TorusLevel> build_torus(i64 q, int n, int h);
  TorusLevel() = default;

  i64 q_ = 2, p_ = 2;
  int f_ = 1, n_ = 1, h_ = 1;
  i64 residue_size_ = 2;
  u64 ring_size_ = 2;
  FieldPtr field_;
  FinAb group_;
  AbHom frob_;
  std::vector<i64> index_of_code_;  // ring code -> group index, -1 for non-units
  std::vector<u64> code_of_index_;
  std::vector<std::vector<AbElem>> filtration_gens_;  // [a] for a in 1..h
};

using TorusPtr = std::shared_ptr<const TorusLevel>;

/// Builds T_h for L/K unramified of degree n over a residue field of size q.
TorusPtr build_torus(i64 q, int n, int h);

/// Coefficient characteristic: 0 for characteristic zero, otherwise ell.
struct Coefficient {
  i64 ell = 0;
  bool is_char0() const { return ell == 0; }
  friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

/// theta(varpi) = ell^valuation * unit.
struct UniformizerValue {
  Rational valuation = 0;
  RootOfUnity unit;
  friend bool operator==(const UniformizerValue& a, const UniformizerValue& b) {
    return a.valuation == b.valuation && a.unit == b.unit;
  }
};

/// A smooth character of T = L^x: its restriction to T_O factored through T_h
/// together with the value at the uniformizer.
struct TorusChar {
  TorusPtr torus;
  AbChar level_part;
  UniformizerValue uniformizer;
  Coefficient coeff;

  /// Throws CheckFailed if the invariants are violated.
  void validate() const;
  /// Pullback along T_{h'} -> T_h.
  TorusChar inflate(const TorusPtr& higher) const;
  /// theta o Frobenius.
  TorusChar frobenius_twist() const;
  bool is_integral() const { return uniformizer.valuation == 0; }

  friend bool operator==(const TorusChar& a, const TorusChar& b) {
    return *a.torus == *b.torus && a.level_part == b.level_part && a.uniformizer == b.uniformizer &&
           a.coeff == b.coeff;
  }
  friend bool operator<(const TorusChar& a, const TorusChar& b);
};

}  // namespace ellchar
