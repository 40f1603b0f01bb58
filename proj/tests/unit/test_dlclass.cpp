#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ellchar/chars.hpp"
#include "ellchar/dlclass.hpp"
#include "ellchar/error.hpp"
#include "ellchar/harness.hpp"

namespace ellchar {
namespace {

bool is_ell_power(i64 n, i64 ell) {
  while (n % ell == 0) n /= ell;
  return n == 1;
}

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks)
    if (c.asserted && !c.pass) return c.name + ": " + c.witness;
  return "";
}

struct DiagramPoint {
  i64 q;
  int n, h;
  i64 ell;
};

class Diagram : public ::testing::TestWithParam<DiagramPoint> {};

TEST_P(Diagram, CommutesForTheSyntheticProvider) {
  const auto pt = GetParam();
  const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
  const Report r = verify_diagram_all(t, pt.ell, synthetic_provider(t, 1), CdFunction::level_proxy());
  EXPECT_TRUE(r.pass()) << first_failure(r);
  EXPECT_FALSE(r.checks.empty());
}

TEST_P(Diagram, DetectsATamperedProviderWithAWitness) {
  const auto pt = GetParam();
  const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
  const auto bad = tampered_provider(synthetic_provider(t, 1), pt.ell);
  const Report r = verify_diagram_all(t, pt.ell, bad, CdFunction::level_proxy());
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(first_failure(r).empty());
}

TEST_P(Diagram, SeedDoesNotChangeTheVerdict) {
  const auto pt = GetParam();
  const TorusPtr t = build_torus(pt.q, pt.n, pt.h);
  for (std::uint64_t seed : {2u, 17u}) {
    const Report r = verify_diagram_all(t, pt.ell, synthetic_provider(t, seed), CdFunction::constant(0));
    EXPECT_TRUE(r.pass()) << "seed " << seed << " " << first_failure(r);
  }
}

INSTANTIATE_TEST_SUITE_P(Points, Diagram,
                         ::testing::Values(DiagramPoint{2, 2, 2, 3}, DiagramPoint{3, 2, 2, 2}),
                         [](const auto& info) {
                           const auto& p = info.param;
                           return "q" + std::to_string(p.q) + "n" + std::to_string(p.n) + "h" +
                                  std::to_string(p.h) + "ell" + std::to_string(p.ell);
                         });

TEST(Diagram, EveryLiftOfAStronglyGeneralCharacterIsStronglyGeneral) {
  const TorusPtr t = build_torus(2, 2, 2);
  int seen = 0;
  for (const auto& th : enumerate_chars(t, Coefficient{})) {
    if (!is_strongly_general(th)) continue;
    const TorusChar psi = r_ell(th, 3);
    for (const auto& lift : lifts_enum(psi)) {
      ASSERT_TRUE(is_strongly_general(lift));
      ASSERT_EQ(r_ell(lift, 3), psi);
    }
    ++seen;
  }
  EXPECT_GT(seen, 0);
}

TEST(Cd, ValidFunctionsPassAndTheUniformizerOrderFails) {
  const std::vector<TorusPtr> tori{build_torus(2, 2, 1), build_torus(2, 2, 2), build_torus(3, 2, 1)};
  const std::vector<i64> ells{2, 3, 5};
  EXPECT_TRUE(cd_validate(CdFunction::constant(4), tori, ells).pass());
  const Report lv = cd_validate(CdFunction::level_proxy(), tori, ells);
  EXPECT_TRUE(lv.pass()) << first_failure(lv);
  const Report bad = cd_validate(CdFunction::uniformizer_order(), tori, ells);
  EXPECT_FALSE(bad.pass());
  EXPECT_NE(first_failure(bad).find("cd("), std::string::npos);
}

TEST(FullSpaceClass, ReductionKeepsSignAndLevel) {
  const TorusPtr t = build_torus(2, 2, 2);
  const auto provider = synthetic_provider(t, 1);
  for (const auto& th : enumerate_chars(t, Coefficient{})) {
    if (!is_strongly_general(th)) continue;
    const FullSpaceClass x = build_full_class(provider.char0(th), th, CdFunction::level_proxy(), 2);
    EXPECT_EQ(x.sign_exponent, level(th));
    const FullSpaceClass r = reduce_full_class(x, 3);
    EXPECT_EQ(r.level_h, x.level_h);
    EXPECT_EQ(r.sign_exponent, x.sign_exponent);
    EXPECT_EQ(r.central_char, r_ell(th, 3));
    EXPECT_FALSE(r.finite_level.coeff.is_char0());
    EXPECT_THROW(reduce_full_class(r, 3), InvalidArgument);
  }
}

TEST(FullSpaceClass, EqualityIgnoresEvenSignShiftsOnly) {
  const TorusPtr t = build_torus(2, 2, 1);
  const auto th = enumerate_chars(t, Coefficient{}).front();
  const GClass c = trivial_class(gl_truncated(2, 2, 1), Coefficient{});
  FullSpaceClass a = build_full_class(c, th, CdFunction::constant(0), 1);
  FullSpaceClass b = a;
  b.sign_exponent = 2;
  EXPECT_EQ(a, b);
  b.sign_exponent = 1;
  EXPECT_FALSE(a == b);
  b = a;
  b.induction_marker = "Ind";
  EXPECT_FALSE(a == b);
}

TEST(FullSpaceClass, RejectsMismatchedInputs) {
  const TorusPtr t1 = build_torus(2, 2, 1);
  const TorusPtr t2 = build_torus(2, 2, 2);
  const GClass c = trivial_class(gl_truncated(2, 2, 1), Coefficient{});
  const auto th2 = enumerate_chars(t2, Coefficient{});
  for (const auto& th : th2)
    if (level(th) == 2) {
      EXPECT_THROW(build_full_class(c, th, CdFunction::constant(0), 1), InvalidArgument);
      break;
    }
  const auto th1 = enumerate_chars(t1, Coefficient{}).front();
  EXPECT_THROW(build_full_class(decomposition_map(c, 3), th1, CdFunction::constant(0), 1), InvalidArgument);
}

TEST(AbstractLifts, FiberHasEllPartSizeAndReducesToPsi) {
  for (const std::vector<i64>& d : {std::vector<i64>{12}, std::vector<i64>{2, 6}, std::vector<i64>{3, 9}, std::vector<i64>{15}})
    for (i64 ell : {2, 3, 5}) {
      const FinAb a(d);
      i64 lpart = 1;
      for (i64 x : d) {
        i64 y = x;
        while (y % ell == 0) {
          y /= ell;
          lpart *= ell;
        }
      }
      for (const auto& psi : dual_enumerate(a)) {
        if (psi.order() % ell == 0) continue;
        const auto lifts = abstract_lifts(psi, ell);
        ASSERT_EQ(static_cast<i64>(lifts.size()), lpart);
        ASSERT_EQ(std::set<AbChar>(lifts.begin(), lifts.end()).size(), lifts.size());
        for (const auto& l : lifts) ASSERT_TRUE(is_ell_power((l + -psi).order(), ell));
      }
      for (const auto& psi : dual_enumerate(a))
        if (psi.order() % ell == 0) {
          EXPECT_THROW(abstract_lifts(psi, ell), InvalidArgument);
          break;
        }
    }
}

TEST(NaiveMultiplicity, RegularModuleFactorsThroughThree) {
  const TorusPtr t = build_torus(2, 2, 1);
  const FinGroupPtr gt = FinGroup::direct_product(FinGroup::cyclic(1), FinGroup::abelian(t->unit_group()));
  const Report r = naive_multiplicity_check(regular_class(gt, Coefficient{}), AbChar::trivial(t->unit_group()), 3);
  EXPECT_TRUE(r.pass()) << first_failure(r);
  bool found = false;
  for (const auto& c : r.checks)
    if (c.name == "ell^m-factorization") {
      found = true;
      EXPECT_TRUE(c.pass);
      EXPECT_EQ(c.witness.rfind("3 * ", 0), 0u) << c.witness;
    }
  EXPECT_TRUE(found);
}

TEST(NaiveMultiplicity, SumOverLiftsHoldsForRandomVirtualCharacters) {
  const FinGroupPtr s3 = FinGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, "S3");
  for (const std::vector<i64>& d : {std::vector<i64>{3}, std::vector<i64>{15}, std::vector<i64>{2, 4}}) {
    const FinAb T(d);
    const FinGroupPtr gt = FinGroup::direct_product(s3, FinGroup::abelian(T));
    const auto subs = all_subgroups(gt);
    std::mt19937_64 rng(d.back());
    auto pick = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    for (i64 ell : {2, 3, 5}) {
      std::vector<AbChar> psis;
      for (const auto& c : dual_enumerate(T))
        if (c.order() % ell != 0) psis.push_back(c);
      for (int k = 0; k < 12; ++k) {
        GClass m = GClass::zero(gt, Coefficient{});
        for (int term = 0; term < 3; ++term) {
          const Subgroup& h = subs[pick(subs.size())];
          const auto lambdas = linear_characters(h.group);
          m = m + Rational(static_cast<long>(pick(7)) - 3) * induce(h, linear_class(h.group, lambdas[pick(lambdas.size())]));
        }
        const Report r = naive_multiplicity_check(m, psis[pick(psis.size())], ell);
        ASSERT_TRUE(r.pass()) << first_failure(r);
      }
    }
  }
}

TEST(NaiveMultiplicity, RejectsModEllInput) {
  const FinGroupPtr gt = FinGroup::abelian(FinAb(std::vector<i64>{3}));
  const GClass m = decomposition_map(regular_class(gt, Coefficient{}), 2);
  EXPECT_THROW(naive_multiplicity_check(m, AbChar::trivial(FinAb(std::vector<i64>{3})), 2), InvalidArgument);
}

}  // namespace
}  // namespace ellchar
