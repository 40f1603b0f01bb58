#pragma once

// Smooth characters of T = L^x: level, general position, reduction mod ell,
// Teichmueller lifts and the rectifier.

#include <vector>

#include "ellchar/torus.hpp"

namespace ellchar {

/// m = v_ell(q^n - 1).
int lift_exponent(i64 q, int n, i64 ell);

/// Smallest a >= 1 such that the character is trivial on T^a.
int level(const TorusChar& theta);
/// Trivial stabilizer of theta|_{T_O} under Frobenius.
bool is_general(const TorusChar& theta);
/// Trivial stabilizer of theta|_{T^1} under Frobenius.
bool is_strongly_general(const TorusChar& theta);

/// The Frobenius orbit of theta (theta, theta o F, ...), without repetition.
std::vector<TorusChar> frobenius_orbit(const TorusChar& theta);

/// Reduction of an integral character: every value is projected to its ell'-part.
TorusChar r_ell(const TorusChar& theta, i64 ell);

/// The ell^m characteristic-zero lifts of a mod-ell character, with
/// Teichmueller uniformizer value, sorted.
std::vector<TorusChar> lifts_enum(const TorusChar& psi);

/// mu: trivial on T_O and varpi -> (-1)^{n-1}, projected to ell' for mod-ell coefficients.
TorusChar rectifier(const TorusPtr& torus, Coefficient coeff);

/// Pointwise product of two characters on the same torus with the same coefficients.
TorusChar char_product(const TorusChar& a, const TorusChar& b);

/// Every character of T_h for the given coefficients, with uniformizer value `at_varpi`
/// (mod-ell: the characters of ell'-order). Ordered by exponent vector.
std::vector<TorusChar> enumerate_chars(const TorusPtr& torus, Coefficient coeff,
                                       const UniformizerValue& at_varpi = {});

}  // namespace ellchar
