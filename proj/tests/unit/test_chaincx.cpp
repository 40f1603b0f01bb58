#include <gtest/gtest.h>

#include "ellchar/chaincx.hpp"
#include "ellchar/error.hpp"
#include "ellchar/harness.hpp"
#include "ellchar/io.hpp"
#include "oracles.hpp"

namespace ellchar {
namespace {

constexpr int kCorpus = 50;

std::vector<AbChar> ell_prime(const FinAb& t, i64 ell) {
  std::vector<AbChar> out;
  for (const auto& c : dual_enumerate(t))
    if (c.order() % ell != 0) out.push_back(c);
  return out;
}

CoeffSpec field_for(i64 ell, const AbChar& theta) {
  return CoeffSpec::finite(ell, splitting_degree(ell, 1, theta.order()));
}

class TorsorCorpus : public ::testing::TestWithParam<int> {
 protected:
  CorpusComplex entry() const { return torsor_corpus_entry(1, GetParam()); }
};

TEST_P(TorsorCorpus, DifferentialsSquareToZeroAfterEveryConstruction) {
  const auto e = entry();
  const PermComplex& c = e.complex;
  EXPECT_NO_THROW(c.verify()) << e.label;
  EXPECT_TRUE(c.is_t_free()) << e.label;
  for (const CoeffSpec& spec : {CoeffSpec::cyclotomic(c.t().exponent()), CoeffSpec::finite(2, 2), CoeffSpec::finite(5, 1)})
    EXPECT_NO_THROW(base_change(c, spec).verify()) << e.label << " " << spec.str();
  for (i64 ell : {2, 3})
    for (const auto& th : ell_prime(c.t(), ell)) EXPECT_NO_THROW(isotypic(c, th, field_for(ell, th)).verify()) << e.label;
}

TEST_P(TorsorCorpus, ModEllHomologyMatchesNaiveRanks) {
  const auto e = entry();
  for (i64 ell : {2, 3, 5}) EXPECT_EQ(base_change(e.complex, CoeffSpec::finite(ell, 1)).homology_dims(), oracle::homology_dims_mod(e.complex, ell)) << e.label;
}

TEST_P(TorsorCorpus, IsotypicDimsMatchEigenspaceHomology) {
  const auto e = entry();
  const PermComplex& c = e.complex;
  const CoeffSpec spec = CoeffSpec::cyclotomic(c.t().exponent());
  for (const auto& th : dual_enumerate(c.t())) EXPECT_EQ(isotypic(c, th, spec).homology_dims(), oracle::isotypic_dims(c, th)) << e.label;
}

TEST_P(TorsorCorpus, DerivedEqualsPlainOnFreeComplexes) {
  const auto e = entry();
  const PermComplex& c = e.complex;
  for (i64 ell : {2, 3, 5})
    for (const auto& th : ell_prime(c.t(), ell)) {
      const CoeffSpec spec = field_for(ell, th);
      const LinearComplex plain = isotypic(c, th, spec);
      const LinearComplex derived = derived_isotypic(c, th, spec, c.hi() - c.lo() + 1);
      auto pd = plain.homology_dims();
      const auto dd = derived.homology_dims();
      pd.resize(dd.size(), 0);
      ASSERT_EQ(pd, dd) << e.label << " ell=" << ell;
      const auto ph = plain.homology(), dh = derived.homology();
      for (std::size_t d = 0; d < ph.size(); ++d) ASSERT_EQ(ph[d], dh[d]) << e.label;
    }
}

TEST_P(TorsorCorpus, EulerClassIsTheLefschetzNumber) {
  const auto e = entry();
  const PermComplex& c = e.complex;
  const GClass euler = euler_class(c, CoeffSpec::cyclotomic(1));
  ASSERT_EQ(euler.group->order(), c.gt()->order());
  for (int x = 0; x < c.gt()->order(); ++x) ASSERT_EQ(euler.at(x), CycloNumber(oracle::lefschetz(c, x))) << e.label;
  EXPECT_EQ(euler_class(base_change(c, CoeffSpec::cyclotomic(1))), euler);
}

TEST_P(TorsorCorpus, EulerClassCommutesWithReduction) {
  const auto e = entry();
  const PermComplex& c = e.complex;
  for (i64 ell : {2, 3, 5}) {
    EXPECT_EQ(decomposition_map(euler_class(c, CoeffSpec::cyclotomic(1)), ell), euler_class(base_change(c, CoeffSpec::finite(ell, 1))));
    for (const auto& th : dual_enumerate(c.t())) {
      AbChar reduced = th;
      for (auto& v : reduced.values) v = r_ell_project(v, ell);
      const GClass zero = euler_class(c, CoeffSpec::cyclotomic(th.order()), th);
      const GClass modl = euler_class(c, field_for(ell, reduced), reduced);
      ASSERT_EQ(decomposition_map(zero, ell), modl) << e.label << " ell=" << ell;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeded, TorsorCorpus, ::testing::Range(0, kCorpus));

TEST(TorPersistence, FixedPointComplexKeepsHigherTor) {
  for (i64 ell : {2, 3}) {
    const PermComplex c = fixed_point_complex(ell);
    EXPECT_FALSE(c.is_t_free());
    const AbChar triv = AbChar::trivial(c.t());
    const CoeffSpec spec = CoeffSpec::finite(ell, 1);
    EXPECT_EQ(isotypic(c, triv, spec).homology_dims(), (std::vector<std::size_t>{1}));
    EXPECT_EQ(derived_isotypic(c, triv, spec, 8).homology_dims(), std::vector<std::size_t>(9, 1));
  }
}

TEST(Shift, EulerSignAlternates) {
  const PermComplex c = torsor_corpus_entry(1, 3).complex;
  const GClass e = euler_class(c, CoeffSpec::cyclotomic(1));
  for (int k : {-2, -1, 1, 2, 3}) {
    const PermComplex s = c.shift(k);
    EXPECT_EQ(s.lo(), c.lo() + k);
    EXPECT_EQ(euler_class(s, CoeffSpec::cyclotomic(1)).values, (k % 2 == 0 ? e : -e).values);
  }
  EXPECT_EQ(stability_shift(3, 4, 2), 8);
}

TEST(MinimalResolution, RanksOfEllGroups) {
  const auto cyclic = minimal_resolution(make_field(2, 1), FinAb({4}), 5);
  EXPECT_EQ(cyclic.ranks, std::vector<std::size_t>(6, 1));
  const auto klein = minimal_resolution(make_field(2, 1), FinAb({2, 2}), 4);
  EXPECT_EQ(klein.ranks, (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  const auto three = minimal_resolution(make_field(3, 1), FinAb({3, 3}), 3);
  EXPECT_EQ(three.ranks, (std::vector<std::size_t>{1, 2, 3, 4}));
}

TEST(IntegerHomology, TorsionIsReported) {
  const auto e = torsor_corpus_entry(1, 3);
  const auto hz = integer_homology(e.complex);
  const auto h2 = oracle::homology_dims_mod(e.complex, 2);
  const auto h7 = oracle::homology_dims_mod(e.complex, 7);
  for (std::size_t i = 0; i < hz.size(); ++i) {
    std::size_t two_torsion = 0;
    for (i64 d : hz[i].torsion) two_torsion += d % 2 == 0 ? 1 : 0;
    EXPECT_GE(h2[i], hz[i].rank);
    EXPECT_EQ(h7[i], hz[i].rank);
    EXPECT_LE(two_torsion, h2[i]);
  }
}

TEST(PermComplexJson, RoundTrip) {
  for (int i = 0; i < 5; ++i) {
    const PermComplex c = torsor_corpus_entry(7, i).complex;
    const Json j = complex_to_json(c);
    const PermComplex back = complex_from_json(parse_json(j.dump()));
    EXPECT_EQ(complex_to_json(back), j);
    EXPECT_EQ(euler_class(back, CoeffSpec::cyclotomic(1)).values, euler_class(c, CoeffSpec::cyclotomic(1)).values);
  }
}

TEST(PermComplex, RejectsNonComplexes) {
  Json j = complex_to_json(torsor_corpus_entry(1, 3).complex);
  bool changed = false;
  for (auto& d : j["differentials"])
    if (!d["entries"].empty()) {
      d["entries"][0][2] = d["entries"][0][2].get<i64>() + 1;
      changed = true;
      break;
    }
  ASSERT_TRUE(changed);
  EXPECT_THROW(complex_from_json(j), Error);
}

}  // namespace
}  // namespace ellchar
