#pragma once

// Weil-side parameters: Frobenius orbits of rectified torus characters, and
// finite metacyclic models A x| C_{ns} on which the induced representation
// can be computed as a class function.

#include <vector>

#include "ellchar/chars.hpp"
#include "ellchar/ggroup.hpp"

namespace ellchar {

/// sigma(theta): the Frobenius orbit of mu * theta, sorted.
struct WeilParam {
  int n = 1;
  std::vector<TorusChar> orbit;
  Coefficient coeff;

  std::size_t orbit_size() const { return orbit.size(); }
  friend bool operator==(const WeilParam& a, const WeilParam& b) {
    return a.n == b.n && a.coeff == b.coeff && a.orbit == b.orbit;
  }
};

WeilParam sigma(const TorusChar& theta, int n);
/// Orbit size equals n.
bool is_irreducible(const WeilParam& p);
/// Reduces every orbit member; throws CheckFailed if the images do not form one orbit.
WeilParam r_ell_param(const WeilParam& p, i64 ell);

/// Gamma = A x| C_{ns}, where A is T_h modulo the common kernel of the
/// characters the model was built for, and the generator F of C_{ns} acts by
/// Frobenius. Element (a, i) has index i * |A| + a.
struct WeilModel {
  TorusPtr torus;
  int n = 1;
  i64 s = 1;
  FinAb a;
  AbHom projection;  ///< T_h -> A
  AbHom phi;         ///< Frobenius on A
  FinGroupPtr group;
  Subgroup base;     ///< A x <F^n>
  TorusChar theta;   ///< the character the model was built for

  /// (mu theta) restricted to T_O, pushed down to A; theta must factor through A.
  AbChar pushdown(const TorusChar& theta) const;
  /// The class of Ind_base^Gamma of (mu theta); tagged with theta's coefficients.
  GClass induced(const TorusChar& theta) const;
  /// Value of the base character of theta at the base element with Gamma index x.
  RootOfUnity base_value(const TorusChar& theta, int x) const;
};

/// Model for a single character. A positive max_order bounds |Gamma| (CapExceeded beyond it).
WeilModel build_model(const TorusChar& theta, int n, i64 max_order = 0);
/// One model on which every listed character (all on the same torus) can be induced.
WeilModel build_joint_model(const std::vector<TorusChar>& thetas, int n, i64 max_order = 0);

/// The characters (base character) o conj(F^g) for g in Z/n, on A.
std::vector<AbChar> mackey_restrict(const WeilModel& model);

}  // namespace ellchar
