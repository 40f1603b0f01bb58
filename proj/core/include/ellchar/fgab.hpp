#pragma once

// Finite abelian groups in invariant-factor form, homomorphisms, characters,
// and the Smith-normal-form constructions (cokernels, subgroups, quotients).

#include <functional>
#include <string>
#include <vector>

#include "ellchar/cyclo.hpp"
#include "ellchar/smith.hpp"

namespace ellchar {

using AbElem = std::vector<i64>;

/// Z/d_1 x ... x Z/d_r with d_1 | d_2 | ... | d_r and every d_i >= 2.
class FinAb {
 public:
  FinAb() = default;
  explicit FinAb(std::vector<i64> invariant_factors);

  const std::vector<i64>& invariant_factors() const { return d_; }
  std::size_t rank() const { return d_.size(); }
  i64 order() const { return order_; }
  i64 exponent() const { return d_.empty() ? 1 : d_.back(); }

  AbElem zero() const { return AbElem(d_.size(), 0); }
  AbElem generator(std::size_t i) const;
  AbElem normalize(AbElem x) const;
  AbElem add(const AbElem& a, const AbElem& b) const;
  AbElem neg(const AbElem& a) const;
  AbElem scale(i64 k, const AbElem& a) const;
  i64 element_order(const AbElem& a) const;

  /// Mixed-radix index, first coordinate varying fastest.
  i64 index(const AbElem& x) const;
  AbElem element(i64 index) const;
  /// All elements in index order (subject to the enumeration cap).
  std::vector<AbElem> elements() const;

  friend bool operator==(const FinAb& a, const FinAb& b) { return a.d_ == b.d_; }
  std::string str() const;

 private:
  std::vector<i64> d_;
  i64 order_ = 1;
};

/// A homomorphism given by the images of the canonical generators.
struct AbHom {
  FinAb domain, codomain;
  std::vector<AbElem> images;

  static AbHom identity(const FinAb& a);
  AbElem apply(const AbElem& x) const;
  /// this o other (apply other first).
  AbHom compose(const AbHom& other) const;
  AbHom power(i64 k) const;
  /// Throws CheckFailed unless d_i * images[i] = 0 for every i.
  void validate() const;
  bool is_identity() const;
  bool is_injective() const;
  bool is_automorphism() const;
  friend bool operator==(const AbHom& a, const AbHom& b) {
    return a.domain == b.domain && a.codomain == b.codomain && a.images == b.images;
  }
};

/// A character A -> Q/Z given by its values on the canonical generators.
struct AbChar {
  FinAb domain;
  std::vector<RootOfUnity> values;

  static AbChar trivial(const FinAb& a);
  /// The character with values e_i / d_i.
  static AbChar from_exponents(const FinAb& a, const std::vector<i64>& e);
  std::vector<i64> exponents() const;

  RootOfUnity operator()(const AbElem& x) const;
  /// chi o phi.
  AbChar compose(const AbHom& phi) const;
  i64 order() const;
  bool is_trivial() const;
  /// Checks that the order of values[i] divides d_i.
  void validate() const;

  friend AbChar operator+(const AbChar& a, const AbChar& b);
  AbChar operator-() const;
  friend bool operator==(const AbChar& a, const AbChar& b) { return a.values == b.values && a.domain == b.domain; }
  friend bool operator<(const AbChar& a, const AbChar& b) { return a.exponents() < b.exponents(); }
};

/// Cokernel of a relation matrix (rows are relations among the columns).
struct Presentation {
  FinAb group;
  /// Column j of V restricted to the surviving coordinates: a generator
  /// coordinate vector x in Z^m maps to (x V)_j mod d_j.
  IntMatrix v;
  /// Rows of V^{-1}: preimages in Z^m of the canonical generators of `group`.
  IntMatrix lifts;
  /// Image of x in Z^m.
  AbElem project(const std::vector<i64>& x) const;
};

Presentation from_relations(const IntMatrix& relations, std::size_t generators);

/// A subgroup with its inclusion into the ambient group.
struct AbSubgroup {
  FinAb group;
  AbHom inclusion;
};

AbSubgroup subgroup(const FinAb& a, const std::vector<AbElem>& gens);
/// The quotient A/<gens> with its projection.
AbHom quotient(const FinAb& a, const std::vector<AbElem>& gens);
AbSubgroup kernel(const AbHom& f);
AbSubgroup image(const AbHom& f);

/// All characters, ordered lexicographically by exponent vector.
std::vector<AbChar> dual_enumerate(const FinAb& a);
/// The orbit {chi, chi o phi, chi o phi^2, ...}; phi must be an automorphism with phi^n = id.
std::vector<AbChar> char_orbit(const AbChar& chi, const AbHom& phi, i64 n);

/// Structure of a black-box finite abelian group generated by `num_gens`
/// generators acting on elements encoded as u64.
struct AbelianClosure {
  FinAb group;
  std::vector<u64> elements;          ///< breadth-first order from the identity
  std::vector<AbElem> coords;         ///< coordinates of elements[i] in `group`
  std::vector<AbElem> generator_coords;
};

AbelianClosure abelian_closure(u64 identity, std::size_t num_gens,
                               const std::function<u64(u64, std::size_t)>& times_generator);

}  // namespace ellchar
