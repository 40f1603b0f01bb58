#include <gtest/gtest.h>

#include <random>

#include "ellchar/cyclo.hpp"
#include "ellchar/error.hpp"
#include "ellchar/intmath.hpp"
#include "oracles.hpp"

namespace ellchar {
namespace {

bool is_power_of(i64 x, i64 ell) {
  while (x % ell == 0) x /= ell;
  return x == 1;
}

TEST(RootOfUnity, CanonicalForm) {
  EXPECT_EQ(RootOfUnity(2, 4), RootOfUnity(1, 2));
  EXPECT_EQ(RootOfUnity(-1, 3), RootOfUnity(2, 3));
  EXPECT_EQ(RootOfUnity(6, 3).order(), 1);
  EXPECT_TRUE(RootOfUnity(5, 5).is_identity());
  EXPECT_EQ(RootOfUnity::parse("3/4"), RootOfUnity(3, 4));
  EXPECT_EQ(RootOfUnity(3, 4).str(), "3/4");
  EXPECT_THROW(RootOfUnity(1, 0), InvalidArgument);
}

TEST(RootOfUnity, GroupLaw) {
  const RootOfUnity a(1, 6), b(1, 3);
  EXPECT_EQ(a + b, RootOfUnity(1, 2));
  EXPECT_EQ(a - a, RootOfUnity());
  EXPECT_EQ(-a, RootOfUnity(5, 6));
  EXPECT_EQ(4 * a, RootOfUnity(2, 3));
}

TEST(EllSplit, RecomposesWithCoprimeOrders) {
  for (i64 ell : {2, 3, 5, 7})
    for (i64 n = 1; n <= 120; ++n)
      for (i64 a = 0; a < n; ++a) {
        const RootOfUnity x(a, n);
        const auto [pl, pp] = ell_split(x, ell);
        ASSERT_EQ(pl + pp, x);
        ASSERT_TRUE(is_power_of(pl.order(), ell));
        ASSERT_NE(pp.order() % ell, 0);
        ASSERT_EQ(pl.order() * pp.order(), x.order());
      }
}

TEST(EllSplit, ProjectionIsTheEllPrimePart) {
  EXPECT_EQ(r_ell_project(RootOfUnity(1, 6), 2), RootOfUnity(2, 3));
  EXPECT_EQ(r_ell_project(RootOfUnity(1, 4), 2), RootOfUnity());
  EXPECT_EQ(r_ell_project(RootOfUnity(1, 5), 2), RootOfUnity(1, 5));
}

TEST(TeichSection, SectionOfProjection) {
  for (i64 ell : {2, 3, 5, 7})
    for (i64 n = 1; n <= 100; ++n) {
      if (n % ell == 0) continue;
      for (i64 a = 0; a < n; ++a) {
        const RootOfUnity u(a, n);
        ASSERT_EQ(r_ell_project(teich_section(u, ell), ell), u);
      }
    }
  EXPECT_THROW(teich_section(RootOfUnity(1, 6), 3), InvalidArgument);
}

CycloNumber random_cyclo(std::mt19937_64& rng, i64 conductor) {
  std::uniform_int_distribution<int> coef(-4, 4), den(1, 3);
  CycloNumber x(Rational(0), conductor);
  for (i64 k = 0; k < conductor; ++k) x.add_root(RootOfUnity(k, conductor), make_rational(coef(rng), den(rng)));
  return x;
}

class CycloField : public ::testing::TestWithParam<i64> {};

TEST_P(CycloField, FieldAxiomsOnRandomTriples) {
  const i64 n = GetParam();
  std::mt19937_64 rng(static_cast<std::uint64_t>(n) * 1315423911u);
  const CycloNumber zero(Rational(0), n), one(Rational(1), n);
  for (int trial = 0; trial < 25; ++trial) {
    const CycloNumber a = random_cyclo(rng, n), b = random_cyclo(rng, n), c = random_cyclo(rng, n);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + zero, a);
    EXPECT_EQ(a * one, a);
    EXPECT_TRUE((a - a).is_zero());
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), one);
    }
    EXPECT_TRUE(oracle::near(oracle::value(a * b), oracle::value(a) * oracle::value(b), 1e-6));
    EXPECT_TRUE(oracle::near(oracle::value(a.conj()), std::conj(oracle::value(a)), 1e-6));
  }
}

TEST_P(CycloField, CanonicalFormStableUnderEmbedAndRestrict) {
  const i64 n = GetParam();
  std::mt19937_64 rng(static_cast<std::uint64_t>(n) * 2654435761u);
  for (int trial = 0; trial < 10; ++trial) {
    const CycloNumber a = random_cyclo(rng, n);
    for (i64 m : {2 * n, 3 * n, 4 * n}) {
      const CycloNumber up = a.embed(m);
      EXPECT_EQ(up.conductor(), m);
      EXPECT_EQ(up, a);
      const auto down = up.restrict_to(n);
      ASSERT_TRUE(down.has_value());
      EXPECT_EQ(down->coords(), a.coords());
    }
    EXPECT_EQ(a.minimal(), a);
  }
}

INSTANTIATE_TEST_SUITE_P(Conductors, CycloField, ::testing::Values(1, 3, 4, 5, 8, 9, 12, 15));

TEST(CycloNumber, RootsSumToMobius) {
  for (i64 n : {1, 2, 3, 4, 6, 30}) {
    CycloNumber s(Rational(0), n);
    for (i64 k = 0; k < n; ++k)
      if (std::gcd(k, n) == 1) s.add_root(RootOfUnity(k, n));
    const i64 mu = n == 1 ? 1 : n == 2 ? -1 : n == 3 ? -1 : n == 4 ? 0 : n == 6 ? 1 : -1;
    EXPECT_EQ(s, CycloNumber(mu)) << "n = " << n;
  }
}

TEST(CycloNumber, RestrictionFailsOutsideSubfield) {
  const CycloNumber i = CycloNumber::root(RootOfUnity(1, 4));
  EXPECT_FALSE(i.restrict_to(2).has_value());
  EXPECT_EQ((i * i).as_rational(), std::optional<Rational>(Rational(-1)));
}

TEST(CyclotomicPolynomial, KnownValues) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<i64>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<i64>{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<i64>{1, -1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12).size(), 5u);
}

}  // namespace
}  // namespace ellchar
