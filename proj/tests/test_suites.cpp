#include "bjortho/suites.hpp"

#include <gtest/gtest.h>

#include <set>

namespace bjortho {
namespace {

TEST(Suites, RegistryIsComplete) {
  const std::set<std::string> want = {"prop-dichotomy",       "prop-scaling",          "prop-rotation",
                                      "lemma-splitting",      "lemma-splitting-rotated", "thm-witness-crossval",
                                      "thm-phi-split",        "thm-connected",         "thm-mt-structure",
                                      "lp2-formulas",         "lp2-mutual",            "lp2-leftsym",
                                      "leftsym-counterexample", "norm-oracles"};
  std::set<std::string> got;
  for (const auto& s : registered_suites()) {
    got.insert(s.name);
    EXPECT_GT(s.default_samples, 0);
  }
  EXPECT_EQ(got, want);
}

TEST(Suites, UnknownSuite) {
  try {
    run_suite("nope", NumericConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownSuite);
  }
}

// Small smoke runs; the full sample counts run in the acceptance binary.
struct SmokeCase {
  std::string name;
  int samples;
};

void PrintTo(const SmokeCase& c, std::ostream* os) { *os << c.name << " x" << c.samples; }

class SuiteSmoke : public ::testing::TestWithParam<SmokeCase> {};

TEST_P(SuiteSmoke, PassesAndIsDeterministic) {
  const auto& [name, samples] = GetParam();
  NumericConfig cfg;
  cfg.seed = 2024;
  const SuiteReport a = run_suite(name, cfg, samples);
  EXPECT_TRUE(a.passed()) << dump_json(to_json(a));
  EXPECT_EQ(a.cases_run + a.excluded_borderline, samples);
  const SuiteReport b = run_suite(name, cfg, samples);
  EXPECT_EQ(dump_json(to_json(a)), dump_json(to_json(b)));
}

INSTANTIATE_TEST_SUITE_P(All, SuiteSmoke,
                         ::testing::Values(SmokeCase{"prop-dichotomy", 300}, SmokeCase{"prop-scaling", 300},
                                           SmokeCase{"prop-rotation", 300}, SmokeCase{"lemma-splitting", 100},
                                           SmokeCase{"lemma-splitting-rotated", 100},
                                           SmokeCase{"thm-witness-crossval", 24}, SmokeCase{"thm-phi-split", 12},
                                           SmokeCase{"thm-connected", 12}, SmokeCase{"thm-mt-structure", 36},
                                           SmokeCase{"lp2-formulas", 300}, SmokeCase{"lp2-mutual", 300},
                                           SmokeCase{"lp2-leftsym", 60}, SmokeCase{"leftsym-counterexample", 1},
                                           SmokeCase{"norm-oracles", 16}),
                         [](const auto& info) {
                           std::string n = info.param.name;
                           for (char& ch : n)
                             if (ch == '-') ch = '_';
                           return n;
                         });

TEST(Suites, SeedChangesInputs) {
  NumericConfig a, b;
  a.seed = 1;
  b.seed = 2;
  EXPECT_NE(dump_json(replay_case("prop-dichotomy", a, 0).inputs), dump_json(replay_case("prop-dichotomy", b, 0).inputs));
}

TEST(Suites, ReplayMatchesRun) {
  NumericConfig cfg;
  cfg.seed = 5;
  const SuiteReport r = run_suite("lp2-mutual", cfg, 10);
  const ReplayResult one = replay_case("lp2-mutual", cfg, 7);
  EXPECT_TRUE(one.routes.empty());
  EXPECT_FALSE(one.inputs.empty());
  EXPECT_THROW(replay_case("lp2-mutual", cfg, -1), Error);
  EXPECT_TRUE(r.passed());
}

TEST(Suites, ReportJsonShape) {
  const SuiteReport r = run_suite("prop-rotation", NumericConfig{}, 3);
  const json j = to_json(r);
  for (const char* key : {"suite_name", "cases_run", "cases_passed", "worst_margin", "failures", "config_echo",
                          "samples", "excluded_borderline"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_FALSE(j.contains("wall_time_ms"));
  EXPECT_TRUE(to_json(r, true).contains("wall_time_ms"));
}

}  // namespace
}  // namespace bjortho
