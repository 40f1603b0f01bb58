#include <gtest/gtest.h>

#include "ellchar/error.hpp"
#include "ellchar/intmath.hpp"
#include "ellchar/limits.hpp"
#include "ellchar/torus.hpp"
#include "oracles.hpp"

namespace ellchar {
namespace {

struct Point {
  i64 q;
  int n, h;
};

std::vector<Point> grid(i64 max_size) {
  std::vector<Point> out;
  for (i64 q : {2, 3, 4, 5, 7, 8, 9})
    for (int n = 1; n <= 3; ++n)
      for (int h = 1; h <= 3; ++h)
        if (oracle::ipow(q, n * h) <= max_size) out.push_back({q, n, h});
  return out;
}

std::string label(const Point& p) {
  return "q=" + std::to_string(p.q) + " n=" + std::to_string(p.n) + " h=" + std::to_string(p.h);
}

TEST(Torus, OrderFormula) {
  for (i64 q : {2, 3, 4})
    for (int n = 1; n <= 3; ++n)
      for (int h = 1; h <= 3; ++h) {
        if (oracle::ipow(q, n * h) > limits().enumeration) continue;
        const TorusPtr t = build_torus(q, n, h);
        EXPECT_EQ(t->unit_group().order(), (oracle::ipow(q, n) - 1) * oracle::ipow(q, n * (h - 1)))
            << label({q, n, h});
      }
}

TEST(Torus, StructureMatchesBruteForceUnits) {
  for (const auto& pt : grid(1024)) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    const auto pp = prime_power(pt.q);
    const oracle::TruncatedUnits ref(pp->first, pp->second * pt.n, pt.h);
    const i64 order = t->unit_group().order();
    ASSERT_EQ(static_cast<i64>(ref.units.size()), order) << label(pt);
    for (i64 k = 1; k <= order; ++k)
      if (order % k == 0) {
        ASSERT_EQ(oracle::count_killed_by(t->unit_group(), k), ref.count_killed_by(k)) << label(pt) << " k=" << k;
      }
  }
}

TEST(Torus, FiltrationOrders) {
  for (const auto& pt : grid(4096)) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    for (int a = 1; a <= pt.h; ++a)
      EXPECT_EQ(t->filtration_subgroup(a).group.order(), oracle::ipow(pt.q, pt.n * (pt.h - a))) << label(pt) << " a=" << a;
  }
}

TEST(Torus, FrobeniusHasOrderDividingN) {
  for (const auto& pt : grid(4096)) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    EXPECT_TRUE(t->frobenius().is_automorphism());
    EXPECT_TRUE(t->frobenius().power(pt.n).is_identity()) << label(pt);
    // Fixed points are the units of F_q[w]/w^h.
    i64 fixed = 0;
    const FinAb& T = t->unit_group();
    for (i64 i = 0; i < T.order(); ++i) fixed += t->frobenius().apply(T.element(i)) == T.element(i) ? 1 : 0;
    EXPECT_EQ(fixed, (pt.q - 1) * oracle::ipow(pt.q, pt.h - 1)) << label(pt);
  }
}

TEST(Torus, FrobeniusFixesBaseCoefficientUnits) {
  for (const auto& pt : grid(4096)) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    const FieldPtr& f = t->residue_field();
    const int base = prime_power(pt.q)->second;
    for (u64 code = 0; code < t->ring_size(); ++code) {
      if (!t->is_unit(code)) continue;
      const auto coeffs = t->unpack(code);
      bool base_field = true;
      for (FFCode c : coeffs) base_field = base_field && f->frobenius(c, base) == c;
      if (!base_field) continue;
      const AbElem x = t->coords(code);
      ASSERT_EQ(t->frobenius().apply(x), x) << label(pt);
    }
  }
}

TEST(Torus, StructureMapIsMultiplicative) {
  const TorusPtr t = build_torus(3, 2, 2);
  for (u64 a = 0; a < t->ring_size(); a += 7) {
    if (!t->is_unit(a)) continue;
    for (u64 b = 0; b < t->ring_size(); b += 5) {
      if (!t->is_unit(b)) continue;
      ASSERT_EQ(t->coords(t->ring_mul(a, b)), t->unit_group().add(t->coords(a), t->coords(b)));
    }
  }
}

TEST(Torus, SplitSequenceIsExactAndEquivariant) {
  for (const auto& pt : grid(4096)) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    const SplitSES s = t->split_ses();
    EXPECT_EQ(s.quotient.order(), oracle::ipow(pt.q, pt.n) - 1);
    EXPECT_EQ(s.kernel.group.order() * s.quotient.order(), t->unit_group().order());
    EXPECT_TRUE(s.projection.compose(s.splitting).is_identity()) << label(pt);
    EXPECT_EQ(s.splitting.compose(s.quotient_frobenius), t->frobenius().compose(s.splitting)) << label(pt);
    for (i64 i = 0; i < s.kernel.group.order(); ++i)
      ASSERT_EQ(s.projection.apply(s.kernel.inclusion.apply(s.kernel.group.element(i))), s.quotient.zero());
  }
}

TEST(Torus, TruncationIsSurjectiveAndEquivariant) {
  const TorusPtr hi = build_torus(2, 2, 3), lo = build_torus(2, 2, 1);
  const AbHom pr = hi->projection_to(*lo);
  EXPECT_EQ(image(pr).group.order(), lo->unit_group().order());
  EXPECT_EQ(pr.compose(hi->frobenius()), lo->frobenius().compose(pr));
  EXPECT_THROW(lo->projection_to(*hi), InvalidArgument);
}

TEST(Torus, CachedAndValidated) {
  EXPECT_EQ(build_torus(4, 2, 2).get(), build_torus(4, 2, 2).get());
  EXPECT_THROW(build_torus(6, 1, 1), InvalidArgument);
  EXPECT_THROW(build_torus(2, 0, 1), InvalidArgument);
  EXPECT_THROW(build_torus(2, 1, 0), InvalidArgument);
  const Limits saved = limits();
  Limits tight = saved;
  tight.enumeration = 100;
  set_limits(tight);
  EXPECT_THROW(build_torus(2, 4, 3), CapExceeded);
  set_limits(saved);
}

}  // namespace
}  // namespace ellchar
