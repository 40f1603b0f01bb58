#include <gtest/gtest.h>

#include <set>

#include "ellchar/chars.hpp"
#include "ellchar/error.hpp"
#include "ellchar/weil.hpp"
#include "oracles.hpp"

namespace ellchar {
namespace {

struct Point {
  i64 q;
  int n, h;
};

const std::vector<Point> kModelPoints{{2, 2, 1}, {2, 2, 2}, {3, 2, 1}, {2, 3, 1}, {3, 2, 2}, {4, 2, 1}, {2, 2, 3}};

std::vector<TorusChar> general_chars(const TorusPtr& t) {
  std::vector<TorusChar> out;
  for (const auto& th : enumerate_chars(t, Coefficient{}))
    if (is_general(th)) out.push_back(th);
  return out;
}

TEST(Sigma, OrbitSizeDetectsGeneralPosition) {
  for (const auto& pt : kModelPoints) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    for (const auto& th : enumerate_chars(t, Coefficient{})) {
      const WeilParam p = sigma(th, pt.n);
      ASSERT_EQ(is_irreducible(p), is_general(th));
      ASSERT_TRUE(std::is_sorted(p.orbit.begin(), p.orbit.end()));
    }
  }
}

TEST(Sigma, InjectiveOnFrobeniusOrbits) {
  for (const auto& pt : kModelPoints) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    const auto chars = general_chars(t);
    for (const auto& a : chars) {
      const auto orbit = frobenius_orbit(a);
      const std::set<TorusChar> same(orbit.begin(), orbit.end());
      const WeilParam sa = sigma(a, pt.n);
      for (const auto& b : chars) ASSERT_EQ(sa == sigma(b, pt.n), same.count(b) == 1);
    }
  }
}

TEST(Sigma, CommutesWithReductionOnStronglyGeneral) {
  for (const auto& pt : kModelPoints) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    for (i64 ell : {2, 3, 5, 7}) {
      if (pt.q % ell == 0) continue;
      for (const auto& th : enumerate_chars(t, Coefficient{})) {
        if (!is_strongly_general(th)) continue;
        ASSERT_EQ(r_ell_param(sigma(th, pt.n), ell), sigma(r_ell(th, ell), pt.n));
      }
    }
  }
}

TEST(WeilModel, InducedIsIrreducibleForGeneralCharacters) {
  for (const auto& pt : kModelPoints) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    std::set<WeilParam, bool (*)(const WeilParam&, const WeilParam&)> seen(
        [](const WeilParam& a, const WeilParam& b) { return a.orbit < b.orbit; });
    int checked = 0;
    for (const auto& th : general_chars(t)) {
      if (!seen.insert(sigma(th, pt.n)).second || checked >= 6) continue;
      const WeilModel m = build_model(th, pt.n, 2000);
      EXPECT_EQ(m.group->order(), m.a.order() * pt.n * m.s);
      EXPECT_EQ(m.base.index(), pt.n);
      const GClass ind = m.induced(th);
      EXPECT_EQ(ind.dimension(), CycloNumber(pt.n));
      EXPECT_EQ(inner_product(ind, ind), CycloNumber(1));
      EXPECT_TRUE(oracle::near(oracle::inner_product(ind, ind), 1.0));
      const auto conj = mackey_restrict(m);
      EXPECT_EQ(std::set<AbChar>(conj.begin(), conj.end()).size(), static_cast<std::size_t>(pt.n));
      ++checked;
    }
  }
}

TEST(WeilModel, InducedInnerProductSeparatesOrbits) {
  for (const auto& pt : {Point{2, 2, 2}, Point{3, 2, 1}, Point{2, 3, 1}}) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    const auto chars = general_chars(t);
    for (std::size_t i = 0; i < chars.size(); ++i)
      for (std::size_t j = i; j < chars.size(); ++j) {
        const WeilModel m = build_joint_model({chars[i], chars[j]}, pt.n, 4000);
        const CycloNumber ip = inner_product(m.induced(chars[i]), m.induced(chars[j]));
        const bool same = sigma(chars[i], pt.n) == sigma(chars[j], pt.n);
        ASSERT_EQ(ip, CycloNumber(same ? 1 : 0));
        ASSERT_TRUE(oracle::near(oracle::inner_product(m.induced(chars[i]), m.induced(chars[j])), same ? 1.0 : 0.0));
      }
  }
}

TEST(WeilModel, OrderBoundIsEnforced) {
  const TorusPtr t = build_torus(2, 2, 3);
  const auto chars = general_chars(t);
  ASSERT_FALSE(chars.empty());
  EXPECT_THROW(build_model(chars.back(), 2, 4), CapExceeded);
  EXPECT_THROW(build_model(chars.back(), 3, 0), InvalidArgument);
}

}  // namespace
}  // namespace ellchar
