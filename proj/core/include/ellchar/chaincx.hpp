#pragma once

// Bounded chain complexes of permutation modules for a commuting G x T action
// (T abelian), their base change to coefficient fields, homology as classes
// in G_0, plain and derived T-isotypic parts, and Euler classes.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ellchar/ggroup.hpp"
#include "ellchar/linalg.hpp"
#include "ellchar/smith.hpp"

namespace ellchar {

/// Coefficients: the integers, a cyclotomic field Q(zeta_N), or F_{ell^k}.
struct CoeffSpec {
  enum class Kind { Integers, Cyclotomic, Finite };
  Kind kind = Kind::Integers;
  i64 conductor = 1;
  FieldPtr field;

  static CoeffSpec integers() { return {}; }
  static CoeffSpec cyclotomic(i64 n);
  static CoeffSpec finite(i64 ell, int k);

  /// Tag of the Grothendieck group the homology lands in (Integers -> characteristic zero).
  Coefficient coefficient() const;
  /// Whether the root of unity z exists in the coefficient field.
  bool realizes(const RootOfUnity& z) const;
  std::string str() const;
};

/// One (G x T)-orbit (G x T)/H, with H given by its sorted members in G x T.
struct Orbit {
  std::vector<int> stabilizer;
};

/// A bounded complex of permutation modules Z[S_i] with differentials
/// d_i : Z[S_i] -> Z[S_{i-1}] (homological grading).
///
/// Elements of G x T are indexed as g * |T| + t. The points of a term are
/// listed orbit by orbit; within an orbit (G x T)/H the cosets are numbered by
/// their least element.
class PermComplex {
 public:
  PermComplex(FinGroupPtr g, FinAb t, int lo, std::vector<std::vector<Orbit>> terms,
              std::vector<IntMatrix> differentials);

  const FinGroupPtr& g() const { return g_; }
  const FinAb& t() const { return t_; }
  const FinGroupPtr& t_group() const { return tg_; }
  const FinGroupPtr& gt() const { return gt_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  std::size_t length() const { return terms_.size(); }
  const std::vector<Orbit>& orbits(int degree) const { return terms_.at(slot(degree)); }
  std::size_t size(int degree) const;
  /// d_degree : C_degree -> C_{degree-1}, a size(degree-1) x size(degree) matrix.
  const IntMatrix& differential(int degree) const { return diffs_.at(slot(degree)); }

  /// Image of point s of the given term under x in G x T.
  int act(int degree, int x, int s) const;
  /// Orbit containing point s, and the position of s within the term.
  int orbit_of(int degree, int s) const;

  /// Checks d o d = 0 and equivariance. Throws CheckFailed with the failing degree.
  void verify() const;
  /// Every orbit has trivial stabilizer in T.
  bool is_t_free() const;
  /// Every T-stabilizer has order prime to ell.
  bool is_t_projective(i64 ell) const;

  /// The same complex placed in degrees lo + k, ..., hi + k.
  PermComplex shift(int k) const;

 private:
  std::size_t slot(int degree) const;
  struct TermData {
    std::vector<int> offsets;                // first point of each orbit
    std::vector<std::vector<int>> coset_of;  // per orbit: element of G x T -> coset number
    std::vector<std::vector<int>> reps;      // per orbit: coset number -> least element
    std::vector<int> point_orbit;
  };

  FinGroupPtr g_, tg_, gt_;
  FinAb t_;
  int lo_ = 0;
  std::vector<std::vector<Orbit>> terms_;
  std::vector<IntMatrix> diffs_;
  std::vector<TermData> data_;
};

/// A complex of finite free modules over a coefficient field with a monomial
/// action of a finite group: generator j sends basis vector b to coef * e_target.
template <class D>
struct MatrixComplex {
  struct Move {
    int target;
    typename D::T coef;
  };
  D dom;
  FinGroupPtr group;
  int lo = 0;
  std::vector<std::size_t> dims;
  std::vector<Matrix<D>> diffs;                        ///< diffs[i]: dims[i-1] x dims[i]; diffs[0] unused
  std::vector<std::vector<std::vector<Move>>> action;  ///< [degree slot][generator][basis]
};

/// A complex over CoeffSpec with the acting group, and the range of degrees
/// in which its homology is meaningful (all degrees unless truncated).
class LinearComplex {
 public:
  using Data = std::variant<MatrixComplex<CycloDomain>, MatrixComplex<FieldDomain>>;

  LinearComplex(CoeffSpec spec, Data data, int valid_top);

  const CoeffSpec& spec() const { return spec_; }
  const FinGroupPtr& group() const;
  int lo() const;
  int hi() const;
  /// Homology is computed in degrees lo() .. valid_top().
  int valid_top() const { return valid_top_; }
  std::size_t dim(int degree) const;
  const Data& data() const { return data_; }

  /// Checks d o d = 0 and equivariance of every differential.
  void verify() const;
  /// dim H_i for i = lo() .. valid_top().
  std::vector<std::size_t> homology_dims() const;
  /// [H_i] in G_0(group) for i = lo() .. valid_top().
  std::vector<GClass> homology() const;

 private:
  CoeffSpec spec_;
  Data data_;
  int valid_top_;
};

/// Z[S] tensored with the coefficients; the acting group is G x T.
LinearComplex base_change(const PermComplex& c, const CoeffSpec& spec);

/// Homology of the complex over Z: free rank and torsion invariant factors per degree.
struct IntegerHomology {
  int degree = 0;
  std::size_t rank = 0;
  std::vector<i64> torsion;
};
std::vector<IntegerHomology> integer_homology(const PermComplex& c);

/// C tensored over Lambda[T] with theta: basis the T-orbits on which theta is
/// trivial on the stabilizer, with the stabilizer-twisted G-action.
LinearComplex isotypic(const PermComplex& c, const AbChar& theta, const CoeffSpec& spec);

/// C tensored over F[T] with a minimal projective resolution of theta, truncated
/// so that homology is exact in degrees lo .. lo + truncation.
LinearComplex derived_isotypic(const PermComplex& c, const AbChar& theta, const CoeffSpec& spec, int truncation);

/// Sum of (-1)^i [H_i], from the homology of a linear complex.
GClass euler_class(const LinearComplex& c);
/// Sum of (-1)^i [C_i] from traces on the terms: a class on G x T without theta,
/// on G with theta. With theta and mod-ell coefficients the terms must be T-projective.
GClass euler_class(const PermComplex& c, const CoeffSpec& spec, const std::optional<AbChar>& theta = std::nullopt);

/// Whether Lambda[G/H] is projective, decided by searching for an H-invariant
/// preimage of the coset H under Lambda[G] -> Lambda[G/H].
bool is_projective_perm(const Subgroup& h, const CoeffSpec& spec);

struct TorsorOptions {
  int max_terms = 3;
  int max_orbits = 2;
  /// When set, a single term (G x T)/1 in degree 0.
  bool single_regular = false;
  /// Only stabilizers H <= G with |H| >= min_stabilizer (keeps the terms small).
  int min_stabilizer = 1;
  /// Stabilizers are graphs {(h, f(h))} of random homomorphisms f : H -> T
  /// rather than H x 1, so twisting by a character of T changes the terms.
  bool twisted = false;
};
/// A seeded random complex whose terms are free T-orbit unions with commuting G-action.
PermComplex make_torsor_complex(const FinGroupPtr& g, const FinAb& t, std::uint64_t seed, const TorsorOptions& opt = {});

/// 2 (n - 1) (h - h').
int stability_shift(int n, int h, int h_prime);

/// Minimal free resolution of the trivial module over F[A] for a finite abelian
/// group A (the ell-part of T in practice). The group algebra element sum c_a a
/// is stored as the vector (c_a) indexed by FinAb::index.
struct GroupAlgebraResolution {
  FieldPtr field;
  FinAb group;
  /// ranks[j]: P_j = F[A]^{ranks[j]}.
  std::vector<std::size_t> ranks;
  /// boundaries[j] for j >= 1: images of the basis of P_j in P_{j-1} (each a
  /// vector of length ranks[j-1] * |A|).
  std::vector<std::vector<std::vector<FFCode>>> boundaries;
};
GroupAlgebraResolution minimal_resolution(const FieldPtr& field, const FinAb& a, int length);

}  // namespace ellchar
