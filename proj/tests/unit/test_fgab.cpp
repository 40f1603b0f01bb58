#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ellchar/error.hpp"
#include "ellchar/fgab.hpp"
#include "ellchar/smith.hpp"
#include "oracles.hpp"

namespace ellchar {
namespace {

std::vector<FinAb> small_groups() {
  return {FinAb(std::vector<i64>{}), FinAb({2}),       FinAb({6}),         FinAb({2, 2}),    FinAb({2, 4}),
          FinAb({3, 9}),  FinAb({2, 2, 2}), FinAb({2, 6, 12}),  FinAb({4, 4}),    FinAb({5, 25}),
          FinAb({2, 2, 4, 8}), FinAb({7})};
}

FinAb diagonal(const std::vector<i64>& orders) {
  IntMatrix m(orders.size(), std::vector<i64>(orders.size(), 0));
  for (std::size_t i = 0; i < orders.size(); ++i) m[i][i] = orders[i];
  return from_relations(m, orders.size()).group;
}

TEST(FinAb, CanonicalInvariantFactors) {
  EXPECT_EQ(diagonal({4, 6}).invariant_factors(), (std::vector<i64>{2, 12}));
  EXPECT_EQ(diagonal({1, 3, 1}).invariant_factors(), (std::vector<i64>{3}));
  EXPECT_EQ(diagonal({2, 3}), FinAb({6}));
  EXPECT_EQ(diagonal({4, 2, 8}).order(), 64);
  EXPECT_THROW(FinAb({4, 6}), InvalidArgument);
  EXPECT_THROW(FinAb({0}), InvalidArgument);
}

TEST(FinAb, IndexRoundTrip) {
  for (const auto& a : small_groups())
    for (i64 i = 0; i < a.order(); ++i) ASSERT_EQ(a.index(a.element(i)), i);
}

TEST(FromRelations, PermutationInvariant) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<i64> entry(-6, 6);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t cols = 2 + (trial / 3) % 3, rows = cols + trial % 2;
    IntMatrix m(rows, std::vector<i64>(cols));
    for (auto& r : m)
      for (auto& v : r) v = entry(rng);
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) m[i][i] += 30;
    const FinAb base = from_relations(m, cols).group;
    std::vector<std::size_t> rp(rows), cp(cols);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      std::shuffle(rp.begin(), rp.end(), rng);
      std::shuffle(cp.begin(), cp.end(), rng);
      IntMatrix pm(rows, std::vector<i64>(cols));
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) pm[r][c] = m[rp[r]][cp[c]];
      ASSERT_EQ(from_relations(pm, cols).group, base);
    }
  }
}

TEST(FromRelations, FiniteCokernelOrderIsDeterminant) {
  const IntMatrix m{{2, 1}, {0, 3}};
  EXPECT_EQ(from_relations(m, 2).group.order(), 6);
  EXPECT_THROW(from_relations(IntMatrix{{1, 0}}, 2), InvalidArgument);
}

TEST(AbChar, BilinearExhaustive) {
  for (const auto& a : small_groups()) {
    if (a.order() > 256) continue;
    const auto chars = dual_enumerate(a);
    ASSERT_EQ(static_cast<i64>(chars.size()), a.order());
    const auto elems = a.elements();
    for (const auto& chi : chars)
      for (const auto& x : elems)
        for (const auto& y : elems) ASSERT_EQ(chi(a.add(x, y)), chi(x) + chi(y));
  }
}

TEST(AbChar, DualEnumerateIsSortedAndDistinct) {
  const FinAb a({2, 6});
  const auto chars = dual_enumerate(a);
  EXPECT_TRUE(std::is_sorted(chars.begin(), chars.end()));
  EXPECT_EQ(std::adjacent_find(chars.begin(), chars.end()), chars.end());
  EXPECT_TRUE(chars.front().is_trivial());
}

TEST(CharOrbit, OrbitSizesPartitionTheDual) {
  std::vector<std::pair<FinAb, AbHom>> cases;
  {
    const FinAb a({2, 6});
    cases.push_back({a, AbHom{a, a, {a.generator(0), a.add(a.generator(0), a.scale(5, a.generator(1)))}}});
  }
  {
    const FinAb a({7, 7});
    cases.push_back({a, AbHom{a, a, {a.generator(1), a.neg(a.add(a.generator(0), a.generator(1)))}}});
  }
  {
    const FinAb a({3, 3, 3});
    cases.push_back({a, AbHom{a, a, {a.generator(1), a.generator(2), a.generator(0)}}});
  }
  for (const auto& [a, phi] : cases) {
    ASSERT_TRUE(phi.is_automorphism());
    i64 n = 1;
    while (!phi.power(n).is_identity()) ++n;
    std::set<AbChar> seen;
    i64 total = 0;
    for (const auto& chi : dual_enumerate(a)) {
      if (seen.count(chi)) continue;
      const auto orbit = char_orbit(chi, phi, n);
      for (const auto& c : orbit) seen.insert(c);
      total += static_cast<i64>(orbit.size());
      EXPECT_EQ(n % static_cast<i64>(orbit.size()), 0);
    }
    EXPECT_EQ(total, a.order());
  }
}

TEST(Subgroups, KernelImageQuotient) {
  const FinAb a({4, 12});
  const FinAb b({12});
  AbHom f{a, b, {AbElem{3}, AbElem{2}}};
  f.validate();
  const AbSubgroup k = kernel(f);
  const AbSubgroup im = image(f);
  EXPECT_EQ(k.group.order() * im.group.order(), a.order());
  for (i64 i = 0; i < k.group.order(); ++i)
    EXPECT_EQ(f.apply(k.inclusion.apply(k.group.element(i))), b.zero());
  const AbHom q = quotient(a, {a.generator(0)});
  EXPECT_EQ(q.codomain.order(), a.order() / a.element_order(a.generator(0)));
  EXPECT_EQ(q.apply(a.generator(0)), q.codomain.zero());
}

TEST(AbelianClosure, MatchesBruteForceUnitGroups) {
  for (i64 n : {7, 8, 9, 15, 16, 21, 24, 35}) {
    std::vector<u64> gens;
    for (i64 g = 2; g < n; ++g)
      if (std::gcd(g, n) == 1) gens.push_back(static_cast<u64>(g));
    const auto cl = abelian_closure(1, gens.size(), [&](u64 x, std::size_t j) { return x * gens[j] % static_cast<u64>(n); });
    i64 phi = 0;
    for (i64 g = 1; g < n; ++g) phi += std::gcd(g, n) == 1 ? 1 : 0;
    ASSERT_EQ(cl.group.order(), phi);
    for (i64 k = 1; k <= phi; ++k) {
      if (phi % k != 0) continue;
      i64 killed = 0;
      for (i64 g = 1; g < n; ++g) {
        if (std::gcd(g, n) != 1) continue;
        i64 y = 1;
        for (i64 i = 0; i < k; ++i) y = y * g % n;
        killed += y == 1 ? 1 : 0;
      }
      EXPECT_EQ(oracle::count_killed_by(cl.group, k), killed) << "(Z/" << n << ")^x, k = " << k;
    }
  }
}

}  // namespace
}  // namespace ellchar
