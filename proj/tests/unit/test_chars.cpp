#include <gtest/gtest.h>

#include <set>

#include "ellchar/chars.hpp"
#include "ellchar/error.hpp"
#include "ellchar/intmath.hpp"
#include "oracles.hpp"

namespace ellchar {
namespace {

struct Point {
  i64 q;
  int n, h;
};

std::vector<Point> grid(i64 max_size) {
  std::vector<Point> out;
  for (i64 q : {2, 3, 4, 5, 7})
    for (int n = 1; n <= 4; ++n)
      for (int h = 1; h <= 4; ++h)
        if (oracle::ipow(q, n * h) <= max_size) out.push_back({q, n, h});
  return out;
}

std::vector<i64> ells_for(i64 q) {
  std::vector<i64> out;
  for (i64 ell : {2, 3, 5, 7})
    if (q % ell != 0) out.push_back(ell);
  return out;
}

TEST(Chars, StronglyGeneralMatchesDefinition) {
  for (const auto& pt : grid(729)) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    for (const auto& th : enumerate_chars(t, Coefficient{}))
      ASSERT_EQ(is_strongly_general(th), oracle::strongly_general(th)) << pt.q << "," << pt.n << "," << pt.h;
  }
}

TEST(Chars, StronglyGeneralPreservedAndReflectedByReduction) {
  for (const auto& pt : grid(1024)) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    const auto chars = enumerate_chars(t, Coefficient{});
    for (i64 ell : ells_for(pt.q))
      for (const auto& th : chars) ASSERT_EQ(is_strongly_general(th), is_strongly_general(r_ell(th, ell)));
  }
}

TEST(Chars, LiftsReduceBackWithFiberSize) {
  for (const auto& pt : grid(1024)) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    for (i64 ell : ells_for(pt.q)) {
      const auto psis = enumerate_chars(t, Coefficient{ell});
      std::set<TorusChar> all_lifts;
      for (const auto& psi : psis) {
        const auto lifts = lifts_enum(psi);
        ASSERT_EQ(static_cast<i64>(lifts.size()), oracle::lift_fiber_size(pt.q, pt.n, ell));
        EXPECT_EQ(static_cast<i64>(lifts.size()), oracle::ipow(ell, lift_exponent(pt.q, pt.n, ell)));
        for (const auto& th : lifts) {
          ASSERT_EQ(r_ell(th, ell), psi);
          all_lifts.insert(th);
        }
      }
      // The fibers partition the characters with Teichmueller uniformizer value.
      EXPECT_EQ(static_cast<i64>(all_lifts.size()), t->unit_group().order());
    }
  }
}

TEST(Chars, LevelDoesNotIncreaseUnderReduction) {
  for (const auto& pt : grid(1024)) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    for (i64 ell : ells_for(pt.q))
      for (const auto& th : enumerate_chars(t, Coefficient{})) {
        const int a = level(th), b = level(r_ell(th, ell));
        ASSERT_LE(b, a);
        if (a > 1) {
          ASSERT_EQ(a, b);
        }
      }
  }
}

TEST(Chars, GeneralPositionIgnoresUniformizer) {
  for (const auto& pt : grid(512)) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    const auto base = enumerate_chars(t, Coefficient{});
    for (const UniformizerValue& v : {UniformizerValue{1, RootOfUnity(1, 3)}, UniformizerValue{Rational(1, 2), RootOfUnity(1, 2)}}) {
      const auto other = enumerate_chars(t, Coefficient{}, v);
      ASSERT_EQ(base.size(), other.size());
      for (std::size_t i = 0; i < base.size(); ++i) {
        ASSERT_EQ(base[i].level_part, other[i].level_part);
        ASSERT_EQ(is_general(base[i]), is_general(other[i]));
        ASSERT_EQ(is_strongly_general(base[i]), is_strongly_general(other[i]));
      }
    }
  }
}

TEST(Chars, StronglyGeneralImpliesGeneral) {
  for (const auto& pt : grid(1024)) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    for (const auto& th : enumerate_chars(t, Coefficient{}))
      if (is_strongly_general(th)) {
        ASSERT_TRUE(is_general(th));
      }
  }
}

TEST(Chars, FrobeniusOrbitsDivideN) {
  for (const auto& pt : grid(1024)) {
    const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
    for (const auto& th : enumerate_chars(t, Coefficient{})) {
      const auto orbit = frobenius_orbit(th);
      ASSERT_EQ(pt.n % static_cast<int>(orbit.size()), 0);
      if (is_general(th)) {
        ASSERT_EQ(static_cast<int>(orbit.size()), pt.n);
      }
    }
  }
}

TEST(Chars, ModEllEnumerationHasEllPrimeOrder) {
  const TorusPtr t = build_torus(2, 2, 2);
  const auto psis = enumerate_chars(t, Coefficient{3});
  EXPECT_EQ(psis.size(), 4u);
  for (const auto& psi : psis) EXPECT_NE(psi.level_part.order() % 3, 0);
}

TEST(Chars, Rectifier) {
  for (int n = 1; n <= 4; ++n) {
    const TorusPtr t = build_torus(2, n, 1);
    const TorusChar mu = rectifier(t, Coefficient{});
    EXPECT_TRUE(mu.level_part.is_trivial());
    EXPECT_EQ(mu.uniformizer.unit, n % 2 == 1 ? RootOfUnity() : RootOfUnity(1, 2));
    EXPECT_TRUE(rectifier(t, Coefficient{2}).uniformizer.unit.is_identity());
  }
}

TEST(Chars, ReductionRejectsNonIntegralAndBadPrimes) {
  const TorusPtr t = build_torus(2, 2, 1);
  TorusChar th = enumerate_chars(t, Coefficient{}).at(1);
  EXPECT_THROW(r_ell(th, 4), InvalidArgument);
  th.uniformizer.valuation = Rational(1, 2);
  EXPECT_THROW(r_ell(th, 3), InvalidArgument);
  EXPECT_THROW(lifts_enum(enumerate_chars(t, Coefficient{}).at(0)), InvalidArgument);
}

}  // namespace
}  // namespace ellchar
