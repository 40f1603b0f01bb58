#pragma once

// Full-space classes M(theta) = +-cInd of a finite-level class, their
// reduction mod ell, and the verifiers for the reduction diagram and the
// naive-isotypic multiplicity identity.

#include <functional>
#include <string>
#include <vector>

#include "ellchar/chaincx.hpp"
#include "ellchar/chars.hpp"
#include "ellchar/weil.hpp"

namespace ellchar {

/// One named assertion of a report. Informational checks are recorded but do
/// not affect the verdict.
struct Check {
  std::string name;
  bool pass = true;
  std::string witness;
  bool asserted = true;
};

struct Report {
  std::string title;
  std::vector<Check> checks;

  bool pass() const;
  void add(std::string name, bool pass, std::string witness = "", bool asserted = true);
  /// Appends the checks of another report, prefixing their names.
  void merge(const Report& other, const std::string& prefix);
};

/// A function TorusChar -> Z, expected to depend only on theta|_{T^1}.
struct CdFunction {
  std::string name;
  std::function<int(const TorusChar&)> fn;

  int operator()(const TorusChar& theta) const { return fn(theta); }
  static CdFunction constant(int k);
  /// level(theta), which only sees theta|_{T^1}.
  static CdFunction level_proxy();
  /// Order of theta(varpi): a deliberately invalid cd for negative tests.
  static CdFunction uniformizer_order();
};

/// sign_exponent-signed cInd_{ZG_O}^G of a finite-level class on G_h, with the
/// center acting through central_char.
struct FullSpaceClass {
  GClass finite_level;
  TorusChar central_char;
  int level_h = 1;
  int sign_exponent = 0;
  std::string induction_marker = "cInd_{ZG_O}^G";

  /// Equality after transporting the lower level to the higher one (the shift
  /// 2(n-1)(h-h') is even, so only the sign exponent parity matters).
  friend bool operator==(const FullSpaceClass& a, const FullSpaceClass& b);
};

FullSpaceClass build_full_class(const GClass& finite_level, const TorusChar& theta, const CdFunction& cd, int level_h);
FullSpaceClass reduce_full_class(const FullSpaceClass& x, i64 ell);

/// Supplies the finite-level class for a character theta of T_h: a
/// characteristic-zero class for integral lifts and, optionally, the mod-ell
/// class computed directly on the reduced side.
struct FiniteLevelProvider {
  std::string name;
  FinGroupPtr group;
  std::function<GClass(const TorusChar&)> char0;
  std::function<GClass(const TorusChar&)> mod_ell;
};

/// Euler classes of one seeded torsor complex for G = GL_n(F_q) and T = T_h,
/// twisted by the level part of theta.
FiniteLevelProvider synthetic_provider(const TorusPtr& torus, std::uint64_t seed);
/// A provider that adds the trivial class whenever theta has order divisible by ell.
FiniteLevelProvider tampered_provider(const FiniteLevelProvider& p, i64 ell);

struct DiagramOptions {
  /// Accept general (not only strongly general) psi and record the checks as informational.
  bool general = false;
};

/// Checks (a) every lift is strongly general, (b) r_ell sigma(theta_i) = sigma(psi),
/// (c) the reduced full classes agree across lifts (and with the reduced-side
/// provider when present), (d) cd agrees across lifts.
Report verify_diagram(const TorusChar& psi, const FiniteLevelProvider& provider, const CdFunction& cd,
                      const DiagramOptions& opt = {});
/// verify_diagram over every strongly general (or general) psi on T_h.
Report verify_diagram_all(const TorusPtr& torus, i64 ell, const FiniteLevelProvider& provider, const CdFunction& cd,
                          const DiagramOptions& opt = {});

/// The characteristic-zero characters of T reducing to psi (psi of ell' order).
std::vector<AbChar> abstract_lifts(const AbChar& psi, i64 ell);

/// Sum_i r_ell(M[theta_i]) = r_ell(M)[psi] for M on G x T (T = FinGroup::abelian),
/// and the factorization r_ell(M)[psi] = ell^m * common value when the terms agree.
Report naive_multiplicity_check(const GClass& m, const AbChar& psi, i64 ell);

/// cd constant on every r_ell fiber and determined by theta|_{T^1}.
Report cd_validate(const CdFunction& cd, const std::vector<TorusPtr>& tori, const std::vector<i64>& ells);

}  // namespace ellchar
