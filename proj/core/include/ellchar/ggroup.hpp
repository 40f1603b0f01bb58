#pragma once

// Finite groups with conjugacy data, and Grothendieck-group classes represented
// by ordinary or Brauer class functions.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ellchar/cyclo.hpp"
#include "ellchar/fgab.hpp"
#include "ellchar/torus.hpp"

namespace ellchar {

class FinGroup;
using FinGroupPtr = std::shared_ptr<const FinGroup>;

/// A finite group on the elements 0, ..., order-1 with identity 0.
///
/// Groups up to Limits::table_order elements keep a full multiplication
/// table; larger ones keep the product function. Conjugacy classes are
/// numbered by their least element, so the identity class is class 0.
class FinGroup {
 public:
  using Product = std::function<int(int, int)>;

  /// Validates identity, inverses and associativity (Light's test on a generating set).
  static FinGroupPtr from_table(const std::vector<std::vector<int>>& table, std::string name = "");
  /// Closure of `gens` under an associative product on u64 codes.
  static FinGroupPtr from_codes(u64 identity, const std::vector<u64>& gens,
                                const std::function<u64(u64, u64)>& mul, std::string name = "");
  static FinGroupPtr from_permutations(const std::vector<std::vector<int>>& gens, std::string name = "");
  static FinGroupPtr cyclic(i64 n);
  /// Element indices are the FinAb mixed-radix indices.
  static FinGroupPtr abelian(const FinAb& a);
  /// Element (g, h) has index g * |H| + h; class (c, k) has index c * classes(H) + k.
  static FinGroupPtr direct_product(const FinGroupPtr& g, const FinGroupPtr& h);
  /// Trusted constructor from a product function (no associativity test).
  static FinGroupPtr from_product(int order, const Product& mul, std::vector<int> generators, std::string name = "");

  const std::string& name() const { return name_; }
  int order() const { return n_; }
  int mul(int a, int b) const {
    return table_.empty() ? product_(a, b) : table_[static_cast<std::size_t>(a) * n_ + b];
  }
  int inv(int a) const { return inverse_[a]; }
  int pow(int a, i64 k) const;
  int element_order(int a) const { return orders_[a]; }
  int exponent() const;
  const std::vector<int>& generators() const { return generators_; }
  /// Breadth-first tree over the generators: element = parent * generators()[parent_gen].
  int parent(int a) const { return parent_[a]; }
  int parent_gen(int a) const { return parent_gen_[a]; }

  int num_classes() const { return static_cast<int>(classes_.size()); }
  int class_of(int a) const { return class_of_[a]; }
  const std::vector<int>& class_elements(int c) const { return classes_[c]; }
  int class_size(int c) const { return static_cast<int>(classes_[c].size()); }
  int class_rep(int c) const { return classes_[c].front(); }
  int class_order(int c) const { return orders_[class_rep(c)]; }
  /// Classes of elements of order prime to ell, in class order.
  std::vector<int> regular_classes(i64 ell) const;
  /// Position of class c among regular_classes(ell), or -1.
  int regular_index(int c, i64 ell) const;

  bool is_abelian() const;
  /// Factors when built by direct_product.
  const FinGroupPtr& left_factor() const { return left_; }
  const FinGroupPtr& right_factor() const { return right_; }
  /// The FinAb when built by abelian().
  const FinAb* abelian_structure() const { return abelian_ ? &*abelian_ : nullptr; }

 private:
  FinGroup() = default;
  void finish(std::vector<int> generators);

  std::string name_;
  int n_ = 1;
  std::vector<std::uint16_t> table_;
  Product product_;
  std::vector<int> inverse_, orders_, generators_, parent_, parent_gen_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  FinGroupPtr left_, right_;
  std::optional<FinAb> abelian_;
};

/// H <= G with its own group structure and the embedding into G.
struct Subgroup {
  FinGroupPtr parent;
  FinGroupPtr group;
  std::vector<int> embedding;  ///< subgroup index -> parent index
  std::vector<int> members;    ///< sorted parent indices
  int index() const { return parent->order() / group->order(); }
};

Subgroup generate_subgroup(const FinGroupPtr& g, const std::vector<int>& gens);
/// Every subgroup, sorted by (order, members).
std::vector<Subgroup> all_subgroups(const FinGroupPtr& g);

/// GL_n over F_q[w]/w^h.
FinGroupPtr gl_truncated(i64 q, int n, int h);

/// A class in G_0(G, Lambda): values per conjugacy class (characteristic zero)
/// or per ell-regular class (mod ell), in regular_classes(ell) order.
struct GClass {
  FinGroupPtr group;
  Coefficient coeff;
  std::vector<CycloNumber> values;

  static GClass zero(const FinGroupPtr& g, Coefficient c);
  /// Class function built from a value per conjugacy class of G (restricted for mod ell).
  static GClass from_class_function(const FinGroupPtr& g, Coefficient c, const std::function<CycloNumber(int)>& at_class);
  /// Value at an element (for mod ell the element must be ell-regular).
  CycloNumber at(int element) const;
  CycloNumber at_class(int c) const;
  CycloNumber dimension() const { return values.at(0); }
  bool is_zero() const;
  /// Number of stored classes.
  std::size_t size() const { return values.size(); }

  friend GClass operator+(const GClass& a, const GClass& b);
  friend GClass operator-(const GClass& a, const GClass& b);
  friend GClass operator*(const Rational& r, const GClass& a);
  GClass operator-() const;
  friend bool operator==(const GClass& a, const GClass& b);
  std::string str() const;
};

/// Restriction to ell-regular classes.
GClass decomposition_map(const GClass& x, i64 ell);
/// Ind_H^G on class functions (either coefficient tag).
GClass induce(const Subgroup& h, const GClass& x);
/// Res^G_H.
GClass restrict_to(const Subgroup& h, const GClass& x);
/// (1/|G|) sum x(g) conj(y(g)), characteristic zero only.
CycloNumber inner_product(const GClass& x, const GClass& y);

/// The permutation character of G acting on G/H.
GClass permutation_class(const Subgroup& h, Coefficient c);
/// The regular class of G.
GClass regular_class(const FinGroupPtr& g, Coefficient c);
/// The trivial class of G.
GClass trivial_class(const FinGroupPtr& g, Coefficient c);
/// Linear characters of G (homomorphisms to Q/Z), via the abelianization.
std::vector<std::vector<RootOfUnity>> linear_characters(const FinGroupPtr& g);
/// The class of a linear character given by its value at every element.
GClass linear_class(const FinGroupPtr& g, const std::vector<RootOfUnity>& lambda);

/// The naive psi-isotypic part of a class on G x T (built by direct_product
/// with T = FinGroup::abelian): average of M(c, t) psi(t)^{-1} over T
/// (over T_{ell'} for mod ell).
GClass naive_isotypic(const GClass& m, const AbChar& psi);

/// Brauer character of a representation over F_{ell^k} given by matrices of
/// the generators of G (in generators() order). Throws CheckFailed when the
/// matrices do not define a representation. The dimension is read from the
/// matrices unless given (a group without generators needs it).
GClass brauer_character(const FinGroupPtr& g, const FieldPtr& field,
                        const std::vector<std::vector<std::vector<FFCode>>>& generator_matrices,
                        std::optional<std::size_t> dimension = std::nullopt);

/// Sum of the Teichmueller lifts of the eigenvalues (with multiplicity) of a
/// square matrix over F_{ell^k} whose order `order` is prime to ell.
CycloNumber brauer_trace(const FieldPtr& field, const std::vector<std::vector<FFCode>>& m, i64 order);

/// Smallest K divisible by k such that F_{ell^K} contains the m-th roots of unity.
int splitting_degree(i64 ell, int k, i64 m);

}  // namespace ellchar
