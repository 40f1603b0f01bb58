#include "ellchar/weil.hpp"

#include <algorithm>
#include <memory>

#include "ellchar/error.hpp"
#include "ellchar/limits.hpp"

namespace ellchar {

namespace {

TorusChar rectified(const TorusChar& theta) { return char_product(rectifier(theta.torus, theta.coeff), theta); }

void check_degree(const TorusChar& theta, int n) {
  if (n != theta.torus->n())
    throw InvalidArgument("weil: n = " + std::to_string(n) + " differs from the torus degree " +
                          std::to_string(theta.torus->n()));
}

// Preimages in T_h of every element of A, found by walking A from zero along
// the images of the generators of T_h.
std::vector<AbElem> walk_preimages(const FinAb& T, const FinAb& a, const AbHom& projection) {
  std::vector<AbElem> pre(static_cast<std::size_t>(a.order()));
  std::vector<char> seen(static_cast<std::size_t>(a.order()), 0);
  std::vector<i64> queue{0};
  seen[0] = 1;
  pre[0] = T.zero();
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const AbElem x = a.element(queue[i]);
    for (std::size_t j = 0; j < T.rank(); ++j) {
      i64 y = a.index(a.add(x, projection.images[j]));
      if (seen[y]) continue;
      seen[y] = 1;
      pre[y] = T.add(pre[queue[i]], T.generator(j));
      queue.push_back(y);
    }
  }
  return pre;
}

}  // namespace

WeilParam sigma(const TorusChar& theta, int n) {
  check_degree(theta, n);
  theta.validate();
  WeilParam p{n, frobenius_orbit(rectified(theta)), theta.coeff};
  std::sort(p.orbit.begin(), p.orbit.end());
  return p;
}

bool is_irreducible(const WeilParam& p) { return static_cast<int>(p.orbit.size()) == p.n; }

WeilParam r_ell_param(const WeilParam& p, i64 ell) {
  std::vector<TorusChar> reduced;
  for (const auto& c : p.orbit) reduced.push_back(r_ell(c, ell));
  std::sort(reduced.begin(), reduced.end());
  reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
  auto orbit = frobenius_orbit(reduced.front());
  std::sort(orbit.begin(), orbit.end());
  if (orbit != reduced) throw CheckFailed("r_ell_param: reduced characters do not form a single Frobenius orbit");
  return WeilParam{p.n, std::move(orbit), Coefficient{ell}};
}

AbChar WeilModel::pushdown(const TorusChar& t) const {
  if (!(*t.torus == *torus)) throw InvalidArgument("WeilModel: character on a different torus");
  const FinAb& T = torus->unit_group();
  const auto pre = walk_preimages(T, a, projection);
  std::vector<RootOfUnity> values;
  for (std::size_t i = 0; i < a.rank(); ++i) values.push_back(t.level_part(pre[a.index(a.generator(i))]));
  AbChar chi{a, values};
  for (std::size_t j = 0; j < T.rank(); ++j)
    if (chi(projection.images[j]) != t.level_part(T.generator(j)))
      throw InvalidArgument("WeilModel: character does not factor through the model quotient");
  return chi;
}

RootOfUnity WeilModel::base_value(const TorusChar& t, int x) const {
  const i64 na = a.order();
  const i64 i = x / na;
  if (i % n != 0) throw InvalidArgument("WeilModel: element is not in the base subgroup");
  const TorusChar mt = rectified(t);
  if (s % mt.uniformizer.unit.order() != 0) throw InvalidArgument("WeilModel: uniformizer value order does not divide s");
  return pushdown(mt)(a.element(x % na)) + (i / n) * mt.uniformizer.unit;
}

GClass WeilModel::induced(const TorusChar& t) const {
  if (!t.is_integral()) throw InvalidArgument("WeilModel: character is not integral");
  const TorusChar mt = rectified(t);
  if (s % mt.uniformizer.unit.order() != 0) throw InvalidArgument("WeilModel: uniformizer value order does not divide s");
  const AbChar chi = pushdown(mt);
  const i64 na = a.order();
  std::vector<RootOfUnity> values(static_cast<std::size_t>(base.group->order()));
  for (int e = 0; e < base.group->order(); ++e) {
    const int x = base.embedding[e];
    values[e] = chi(a.element(x % na)) + static_cast<i64>((x / na) / n) * mt.uniformizer.unit;
  }
  GClass ind = induce(base, linear_class(base.group, values));
  return t.coeff.is_char0() ? ind : decomposition_map(ind, t.coeff.ell);
}

WeilModel build_joint_model(const std::vector<TorusChar>& thetas, int n, i64 max_order) {
  if (thetas.empty()) throw InvalidArgument("build_joint_model: no characters");
  const TorusPtr torus = thetas.front().torus;
  const FinAb& T = torus->unit_group();
  std::vector<AbChar> chars;
  i64 s = 1;
  for (const auto& t : thetas) {
    check_degree(t, n);
    if (!(*t.torus == *torus)) throw InvalidArgument("build_joint_model: characters on different tori");
    if (!t.is_integral()) throw InvalidArgument("build_model: character is not integral");
    t.validate();
    TorusChar mt = rectified(t);
    s = lcm_checked(s, mt.uniformizer.unit.order());
    for (const auto& c : frobenius_orbit(mt)) {
      chars.push_back(c.level_part);
    }
  }
  // Common kernel of the characters as an iterated kernel.
  std::sort(chars.begin(), chars.end());
  chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
  AbSubgroup common{T, AbHom::identity(T)};
  for (const auto& c : chars) {
    const i64 o = c.order();
    if (o == 1) continue;
    const FinAb target({o});
    AbHom f{common.group, target, {}};
    for (std::size_t i = 0; i < common.group.rank(); ++i) {
      const RootOfUnity v = c(common.inclusion.apply(common.group.generator(i)));
      f.images.push_back(AbElem{v.numerator() * (o / v.order())});
    }
    AbSubgroup k = kernel(f);
    common = AbSubgroup{k.group, common.inclusion.compose(k.inclusion)};
  }
  std::vector<AbElem> kernel_gens;
  for (std::size_t i = 0; i < common.group.rank(); ++i)
    kernel_gens.push_back(common.inclusion.apply(common.group.generator(i)));
  WeilModel m;
  m.torus = torus;
  m.n = n;
  m.s = s;
  m.projection = quotient(T, kernel_gens);
  m.a = m.projection.codomain;
  m.theta = thetas.front();
  // Frobenius on A through preimages of its generators.
  {
    const auto walk_pre = walk_preimages(T, m.a, m.projection);
    m.phi = AbHom{m.a, m.a, {}};
    for (std::size_t i = 0; i < m.a.rank(); ++i)
      m.phi.images.push_back(
          m.projection.apply(torus->frobenius().apply(walk_pre[m.a.index(m.a.generator(i))])));
    m.phi.validate();
    if (!m.phi.power(n).is_identity()) throw CheckFailed("build_model: Frobenius on A does not have order dividing n");
  }
  const i64 na = m.a.order();
  const i64 cyc = checked_mul(n, s);
  check_cap(checked_mul(na, cyc), limits().group_order, "Weil model");
  if (max_order > 0) check_cap(na * cyc, max_order, "Weil model (requested bound)");
  // phi^i on indices of A, i in [0, n).
  std::vector<std::vector<int>> phi_pow(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(na)));
  for (i64 x = 0; x < na; ++x) {
    AbElem e = m.a.element(x);
    for (int i = 0; i < n; ++i) {
      phi_pow[i][x] = static_cast<int>(m.a.index(e));
      e = m.phi.apply(e);
    }
  }
  const FinAb A = m.a;
  FinGroup::Product mul;
  if (na <= 4096) {
    auto add = std::make_shared<std::vector<int>>(static_cast<std::size_t>(na * na));
    const std::vector<AbElem> elems = A.elements();
    for (i64 x = 0; x < na; ++x)
      for (i64 y = 0; y < na; ++y) (*add)[x * na + y] = static_cast<int>(A.index(A.add(elems[x], elems[y])));
    mul = [add, na, cyc, n, phi_pow](int x, int y) {
      const i64 i = x / na, j = y / na;
      const i64 b = phi_pow[i % n][y % na];
      return static_cast<int>(((i + j) % cyc) * na + (*add)[(x % na) * na + b]);
    };
  } else {
    mul = [A, na, cyc, n, phi_pow](int x, int y) {
      const i64 i = x / na, j = y / na;
      const AbElem a = A.element(x % na);
      const AbElem b = A.element(phi_pow[i % n][y % na]);
      return static_cast<int>(((i + j) % cyc) * na + A.index(A.add(a, b)));
    };
  }
  std::vector<int> gens;
  for (std::size_t i = 0; i < A.rank(); ++i) gens.push_back(static_cast<int>(A.index(A.generator(i))));
  if (cyc > 1) gens.push_back(static_cast<int>(na));
  m.group = FinGroup::from_product(static_cast<int>(na * cyc), mul, gens,
                                   "(" + A.str() + ") x| Z/" + std::to_string(cyc));
  std::vector<int> base_gens;
  for (std::size_t i = 0; i < A.rank(); ++i) base_gens.push_back(gens[i]);
  if (cyc > n) base_gens.push_back(static_cast<int>(n * na));
  m.base = generate_subgroup(m.group, base_gens);
  if (m.base.index() != n) throw CheckFailed("build_model: base subgroup does not have index n");
  return m;
}

WeilModel build_model(const TorusChar& theta, int n, i64 max_order) { return build_joint_model({theta}, n, max_order); }

std::vector<AbChar> mackey_restrict(const WeilModel& model) {
  AbChar chi = model.pushdown(char_product(rectifier(model.theta.torus, model.theta.coeff), model.theta));
  std::vector<AbChar> out;
  AbHom power = AbHom::identity(model.a);
  for (int g = 0; g < model.n; ++g) {
    out.push_back(chi.compose(power));
    power = power.compose(model.phi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ellchar
