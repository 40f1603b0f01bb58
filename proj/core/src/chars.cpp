#include "ellchar/chars.hpp"

#include <algorithm>

#include "ellchar/error.hpp"
#include "ellchar/limits.hpp"

namespace ellchar {

int lift_exponent(i64 q, int n, i64 ell) { return valuation(ipow(q, n) - 1, ell); }

namespace {

bool trivial_on(const AbChar& chi, const std::vector<AbElem>& gens) {
  for (const auto& g : gens)
    if (!chi(g).is_identity()) return false;
  return true;
}

// Is theta o F^i equal to theta on `gens` for some 0 < i < n?
bool has_nontrivial_stabilizer(const TorusChar& theta, const std::vector<AbElem>& gens) {
  const TorusLevel& T = *theta.torus;
  std::vector<AbElem> moved = gens;
  for (int i = 1; i < T.n(); ++i) {
    for (auto& g : moved) g = T.frobenius().apply(g);
    bool equal = true;
    for (std::size_t k = 0; k < gens.size() && equal; ++k)
      if (theta.level_part(moved[k]) != theta.level_part(gens[k])) equal = false;
    if (equal) return true;
  }
  return false;
}

std::vector<AbElem> canonical_generators(const FinAb& a) {
  std::vector<AbElem> g;
  for (std::size_t i = 0; i < a.rank(); ++i) g.push_back(a.generator(i));
  return g;
}

}  // namespace

int level(const TorusChar& theta) {
  const TorusLevel& T = *theta.torus;
  for (int a = 1; a < T.h(); ++a)
    if (trivial_on(theta.level_part, T.filtration_generators(a))) return a;
  return T.h();
}

bool is_general(const TorusChar& theta) {
  return !has_nontrivial_stabilizer(theta, canonical_generators(theta.torus->unit_group()));
}

bool is_strongly_general(const TorusChar& theta) {
  return !has_nontrivial_stabilizer(theta, theta.torus->filtration_generators(1));
}

std::vector<TorusChar> frobenius_orbit(const TorusChar& theta) {
  std::vector<TorusChar> orbit{theta};
  for (TorusChar c = theta.frobenius_twist(); !(c == theta); c = c.frobenius_twist()) orbit.push_back(c);
  return orbit;
}

TorusChar r_ell(const TorusChar& theta, i64 ell) {
  if (!is_prime(ell)) throw InvalidArgument("r_ell: ell must be prime");
  if (!theta.is_integral())
    throw InvalidArgument("r_ell: character is not integral (uniformizer valuation " +
                          rational_to_string(theta.uniformizer.valuation) + ")");
  if (!theta.coeff.is_char0() && theta.coeff.ell != ell) throw InvalidArgument("r_ell: coefficient mismatch");
  TorusChar r = theta;
  for (auto& v : r.level_part.values) v = r_ell_project(v, ell);
  r.uniformizer.unit = r_ell_project(theta.uniformizer.unit, ell);
  r.coeff = Coefficient{ell};
  return r;
}

std::vector<TorusChar> lifts_enum(const TorusChar& psi) {
  if (psi.coeff.is_char0()) throw InvalidArgument("lifts_enum: expected a mod-ell character");
  psi.validate();
  const i64 ell = psi.coeff.ell;
  const FinAb& A = psi.torus->unit_group();
  const auto& d = A.invariant_factors();
  // ell-power-order characters: exponents e_i = k_i * d_i / ell^{v(d_i)}.
  std::vector<i64> lpart(d.size()), step(d.size());
  i64 count = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    lpart[i] = ipow(ell, valuation(d[i], ell));
    step[i] = d[i] / lpart[i];
    count = checked_mul(count, lpart[i]);
  }
  check_cap(count, limits().enumeration, "lift enumeration");
  const auto base = psi.level_part.exponents();
  std::vector<TorusChar> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<i64> k(d.size(), 0);
  for (i64 c = 0; c < count; ++c) {
    std::vector<i64> e(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) e[i] = mod(base[i] + k[i] * step[i], d[i]);
    out.push_back(TorusChar{psi.torus, AbChar::from_exponents(A, e),
                            UniformizerValue{0, teich_section(psi.uniformizer.unit, ell)}, Coefficient{}});
    for (std::size_t i = d.size(); i-- > 0;) {
      if (++k[i] < lpart[i]) break;
      k[i] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TorusChar rectifier(const TorusPtr& torus, Coefficient coeff) {
  RootOfUnity u(torus->n() - 1, 2);
  if (!coeff.is_char0()) u = r_ell_project(u, coeff.ell);
  return TorusChar{torus, AbChar::trivial(torus->unit_group()), UniformizerValue{0, u}, coeff};
}

TorusChar char_product(const TorusChar& a, const TorusChar& b) {
  if (!(*a.torus == *b.torus)) throw InvalidArgument("char_product: characters live on different tori");
  if (!(a.coeff == b.coeff)) throw InvalidArgument("char_product: coefficient mismatch");
  return TorusChar{a.torus, a.level_part + b.level_part,
                   UniformizerValue{a.uniformizer.valuation + b.uniformizer.valuation, a.uniformizer.unit + b.uniformizer.unit},
                   a.coeff};
}

std::vector<TorusChar> enumerate_chars(const TorusPtr& torus, Coefficient coeff, const UniformizerValue& at_varpi) {
  std::vector<TorusChar> out;
  for (auto& chi : dual_enumerate(torus->unit_group())) {
    if (!coeff.is_char0() && chi.order() % coeff.ell == 0) continue;
    out.push_back(TorusChar{torus, std::move(chi), at_varpi, coeff});
  }
  return out;
}

}  // namespace ellchar
