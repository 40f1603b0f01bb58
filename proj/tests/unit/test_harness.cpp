#include <gtest/gtest.h>

#include <stdexcept>

#include "ellchar/chars.hpp"
#include "ellchar/error.hpp"
#include "ellchar/harness.hpp"
#include "ellchar/io.hpp"

namespace ellchar {
namespace {

Config small_config() {
  Config c;
  c.grid.max_size = 64;
  c.threads = 1;
  c.torsor_complexes = 6;
  c.virtual_characters = 12;
  c.derived_truncation = 4;
  return c;
}

TEST(Config, RejectsEllEqualToP) {
  Config c = small_config();
  c.grid.q = {9};
  c.grid.ell = {3};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config();
  c.grid.points = {GridPoint{{4, 2, 1}, 2}};
  EXPECT_THROW(c.validate(), InvalidArgument);
  EXPECT_THROW(run_suite("lifts", c), InvalidArgument);
}

TEST(Config, RejectsMalformedValues) {
  Config c = small_config();
  c.primes = {2, 4};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config();
  c.caps.field_size = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config();
  c.torsor_complexes = -1;
  EXPECT_THROW(c.validate(), InvalidArgument);
  EXPECT_THROW(Config::from_json(parse_json(R"({"grid": {"points": [[2, 2, 1]]}})")), InvalidArgument);
  EXPECT_THROW(parse_json("{\"seed\": "), InvalidArgument);
  EXPECT_THROW(run_suite("no-such-suite", small_config()), InvalidArgument);
}

TEST(Config, JsonRoundTrip) {
  Config c = small_config();
  c.primes = {3, 5};
  c.grid.q = {2, 4};
  c.grid.points = {GridPoint{{2, 2, 2}, 3}};
  c.seed = 99;
  c.tamper = true;
  c.weil_models_per_torus = 3;
  const Config d = Config::from_json(c.to_json());
  EXPECT_EQ(d.to_json(), c.to_json());
  EXPECT_EQ(d.grid.points.size(), 1u);
  EXPECT_EQ(d.seed, 99u);
}

TEST(Config, GridSkipsEllEqualToPUnlessExplicit) {
  const Config c = small_config();
  for (const auto& gp : c.grid_points()) {
    EXPECT_NE(prime_power(gp.torus.q)->first, gp.ell) << gp.str();
    i64 s = 1;
    for (int i = 0; i < gp.torus.n * gp.torus.h; ++i) s *= gp.torus.q;
    EXPECT_LE(s, 64) << gp.str();
  }
  const auto d = Config{}.diagram_points();
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].str(), (GridPoint{{2, 2, 2}, 3}).str());
  EXPECT_EQ(d[1].str(), (GridPoint{{3, 2, 2}, 2}).str());
}

TEST(Suites, ReportsAreByteIdenticalAcrossRuns) {
  const Config c = small_config();
  for (const std::string name : {"lifts", "isotypic", "multiplicity", "diagram"}) {
    const std::string a = run_suite(name, c).to_json(c).dump();
    Config threaded = c;
    threaded.threads = 3;
    const std::string b = run_suite(name, threaded).to_json(threaded).dump();
    EXPECT_EQ(a, b) << name;
  }
}

TEST(Suites, SmallGridPasses) {
  const Config c = small_config();
  for (const auto& name : suite_names()) {
    const SuiteResult r = run_suite(name, c);
    EXPECT_TRUE(r.pass()) << name;
    EXPECT_FALSE(r.points.empty()) << name;
  }
}

TEST(Suites, TamperedDiagramFailsWithWitness) {
  Config c = small_config();
  c.tamper = true;
  const SuiteResult r = run_suite("diagram", c);
  EXPECT_FALSE(r.pass());
  const Json j = r.to_json(c);
  EXPECT_GT(j.at("points_failed").get<int>(), 0);
  bool witnessed = false;
  for (const auto& p : j.at("points"))
    for (const auto& ch : p.at("checks"))
      if (ch.at("result") == "fail" && !ch.at("witness").get<std::string>().empty()) witnessed = true;
  EXPECT_TRUE(witnessed);
}

TEST(ParallelMap, KeepsIndexOrder) {
  for (unsigned threads : {0u, 1u, 4u}) {
    const auto out = parallel_map<std::size_t>(100, threads, [](std::size_t i) { return i * i; });
    ASSERT_EQ(out.size(), 100u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
  }
  EXPECT_TRUE(parallel_map<int>(0, 4, [](std::size_t) { return 1; }).empty());
}

TEST(ParallelMap, PropagatesExceptions) {
  for (unsigned threads : {1u, 4u})
    EXPECT_THROW(parallel_map<int>(50, threads,
                                   [](std::size_t i) {
                                     if (i == 17) throw std::runtime_error("boom");
                                     return static_cast<int>(i);
                                   }),
                 std::runtime_error);
}

TEST(Io, ProviderRoundTripAnswersLikeTheOriginal) {
  const TorusPtr t = build_torus(2, 2, 2);
  const auto p = synthetic_provider(t, 1);
  const FiniteLevelProvider back = provider_from_json(parse_json(provider_to_json(p, t, 3).dump()), t);
  for (const auto& th : enumerate_chars(t, Coefficient{})) {
    EXPECT_EQ(back.char0(th).values, p.char0(th).values);
    const TorusChar psi = r_ell(th, 3);
    EXPECT_EQ(back.mod_ell(psi).values, p.mod_ell(psi).values);
  }
  const Report r = verify_diagram_all(t, 3, back, CdFunction::level_proxy());
  EXPECT_TRUE(r.pass());
}

TEST(Io, TorusCharacterAndClassRoundTrip) {
  const TorusPtr t = build_torus(3, 2, 1);
  for (const auto& th : enumerate_chars(t, Coefficient{})) {
    EXPECT_EQ(torus_char_from_json(torus_char_to_json(th)), th);
    const TorusChar psi = r_ell(th, 2);
    EXPECT_EQ(torus_char_from_json(torus_char_to_json(psi), t), psi);
  }
  const TorusPtr back = torus_from_json(torus_to_json(*t));
  EXPECT_EQ(back->unit_group(), t->unit_group());
  const FinGroupPtr g = gl_truncated(2, 2, 1);
  const FinGroupPtr g2 = group_from_json(parse_json(group_to_json(*g).dump()));
  EXPECT_EQ(g2->order(), g->order());
  const GClass c = regular_class(g, Coefficient{}) - Rational(2) * trivial_class(g, Coefficient{});
  EXPECT_EQ(gclass_from_json(gclass_to_json(c), g), c);
  const GClass m = decomposition_map(c, 3);
  EXPECT_EQ(gclass_from_json(parse_json(gclass_to_json(m).dump()), g), m);
}

TEST(Io, ComplexRoundTripPreservesStructure) {
  for (int i : {0, 7, 23}) {
    const PermComplex c = torsor_corpus_entry(1, i).complex;
    const PermComplex d = complex_from_json(parse_json(complex_to_json(c).dump()));
    EXPECT_EQ(complex_to_json(d), complex_to_json(c));
    EXPECT_NO_THROW(d.verify());
  }
}

}  // namespace
}  // namespace ellchar
