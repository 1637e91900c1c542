#include "bjortho/cli.hpp"
#include "bjortho/json_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <unistd.h>

namespace bjortho {
namespace {

namespace fs = std::filesystem;

TEST(JsonIo, VectorRoundTrip) {
  CVector x(3);
  x << Complex(0.1, -2.0), 3.0, Complex(0.0, 1e-300);
  const json j = vector_to_json(x);
  EXPECT_EQ(vector_from_json(j), x);
  // Text round trip at 17 digits is exact.
  EXPECT_EQ(vector_from_json(json::parse(dump_json(j))), x);
  // Missing "im" means real.
  const CVector r = vector_from_json(json::parse(R"({"re": [1, 2]})"));
  EXPECT_EQ(r(1), Complex(2.0, 0.0));
}

TEST(JsonIo, OperatorRoundTrip) {
  COperator t(2, 3);
  t << Complex(1, 2), 0.0, -1.0, 4.0, Complex(0, -0.25), 1e-7;
  const json j = operator_to_json(t);
  EXPECT_EQ(j.at("rows"), 2);
  EXPECT_EQ(j.at("re")[1][0], 4.0);
  EXPECT_EQ(operator_from_json(json::parse(dump_json(j))), t);
}

TEST(JsonIo, MalformedInputs) {
  const auto code_of = [](const json& j) {
    try {
      operator_from_json(j);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kUnknownSuite;
  };
  EXPECT_EQ(code_of(json::parse(R"({"rows": 2, "cols": 2, "re": [[1, 2]]})")), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of(json::parse(R"({"rows": 1, "cols": 2, "re": [[1, "a"]]})")), ErrorCode::kParseError);
  EXPECT_EQ(code_of(json::parse(R"([1, 2])")), ErrorCode::kParseError);
  EXPECT_THROW(vector_from_json(json::parse(R"({"re": [1, 2], "im": [1]})")), Error);
}

TEST(JsonIo, Exponents) {
  EXPECT_TRUE(exponent_from_string("inf").is_infinite());
  EXPECT_DOUBLE_EQ(exponent_from_string("2.5").value(), 2.5);
  EXPECT_THROW(exponent_from_string("0.5"), Error);
  EXPECT_THROW(exponent_from_string("abc"), Error);
  EXPECT_THROW(exponent_from_string("2x"), Error);
  EXPECT_EQ(exponent_to_json(PExponent::infinity()), "inf");
}

TEST(JsonIo, ConfigRoundTripAndValidation) {
  NumericConfig cfg;
  cfg.seed = 99;
  cfg.n_alpha = 32;
  const NumericConfig back = config_from_json(config_to_json(cfg));
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.n_alpha, 32);
  EXPECT_THROW(config_from_json(json::parse(R"({"orth_tol": -1})")), Error);
  EXPECT_THROW(config_from_json(json::parse(R"({"n_alpha": "x"})")), Error);
}

TEST(DumpJson, SortedKeysFixedDigitsAndNull) {
  json j;
  j["b"] = 0.1;
  j["a"] = std::nan("");
  j["c"] = json::array({1, std::numeric_limits<double>::infinity(), "s"});
  EXPECT_EQ(dump_json(j, -1), R"({"a":null,"b":0.10000000000000001,"c":[1,null,"s"]})");
  // Insertion order does not matter.
  json k;
  k["c"] = j["c"];
  k["a"] = j["a"];
  k["b"] = j["b"];
  EXPECT_EQ(dump_json(j), dump_json(k));
}

// ---------------------------------------------------------------- CLI

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bjortho");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("bjortho_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    write("e1.json", R"({"re": [1, 0]})");
    write("e2.json", R"({"re": [0, 1]})");
    write("e3.json", R"({"re": [0, 1, 0]})");
    write("diag.json", R"({"rows": 2, "cols": 2, "re": [[1, 0], [0, 0]]})");
    write("a.json", R"({"rows": 2, "cols": 2, "re": [[0, 1], [1, 1]]})");
    write("bad.json", R"({"rows": 2, "cols": 2, "re": [[0, 1]]})");
    write("broken.json", R"({"rows": 2, )");
  }
  void TearDown() override { fs::remove_all(dir_); }
  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, OrthVecStandardBasis) {
  const CliRun r = run_cli({"orth-vec", path("e1.json"), path("e2.json"), "--p", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.at("orthogonal").get<bool>());
  EXPECT_EQ(j.at("routes").at("analytic").get<double>(), 0.0);
  EXPECT_TRUE(j.at("routes").contains("optimization"));
  EXPECT_TRUE(j.at("cones").at("in_x_plus").get<bool>());
}

TEST_F(CliTest, NormAndMt) {
  CliRun r = run_cli({"norm", path("a.json"), "--p", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out).at("value").get<double>(), std::sqrt((3.0 + std::sqrt(5.0)) / 2.0), 1e-12);
  r = run_cli({"mt", path("diag.json"), "--p", "inf"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("p"), "inf");
}

TEST_F(CliTest, OrthOpRoutes) {
  for (const char* route : {"direct", "witness", "phi-split", "connected"}) {
    const CliRun r = run_cli({"orth-op", path("diag.json"), path("a.json"), "--p", "2", "--route", route});
    ASSERT_EQ(r.code, 0) << route << r.out;
    const json j = json::parse(r.out);
    const bool orth = j.contains("verdict") ? j.at("verdict").at("orthogonal").get<bool>() : j.at("orthogonal").get<bool>();
    EXPECT_TRUE(orth) << route;
  }
  const CliRun r = run_cli({"orth-op", path("diag.json"), path("a.json"), "--p", "2"});
  EXPECT_TRUE(json::parse(r.out).at("orthogonal").get<bool>());
}

TEST_F(CliTest, Counterexample) {
  const CliRun r = run_cli({"counterexample", "--p", "2"});
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.at("t_orth_a").get<bool>());
  EXPECT_FALSE(j.at("a_orth_t").get<bool>());
  EXPECT_GT(j.at("delta").get<double>(), 0.0);
}

TEST_F(CliTest, LeftSymPoint) {
  CliRun r = run_cli({"leftsym-point", path("e1.json"), "--p", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("family"), "E1");
  write("long.json", R"({"re": [1, 1]})");
  r = run_cli({"leftsym-point", path("long.json"), "--p", "3"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, SuiteAndReplay) {
  CliRun r = run_cli({"suite", "prop-dichotomy", "--samples", "200", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("cases_passed"), 200);
  EXPECT_EQ(j.at("config_echo").at("seed"), 7);
  EXPECT_FALSE(j.contains("wall_time_ms"));
  // Same seed, same bytes.
  EXPECT_EQ(run_cli({"suite", "prop-dichotomy", "--samples", "200", "--seed", "7"}).out, r.out);

  r = run_cli({"replay", "prop-dichotomy", "--case", "3", "--seed", "7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out).at("passed").get<bool>());
}

TEST_F(CliTest, SeedFromEnvironmentAndConfig) {
  write("cfg.json", R"({"seed": 11})");
  CliRun r = run_cli({"--config", path("cfg.json"), "suite", "prop-rotation", "--samples", "5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("config_echo").at("seed"), 11);
  ::setenv("BJORTHO_SEED", "12", 1);
  r = run_cli({"--config", path("cfg.json"), "suite", "prop-rotation", "--samples", "5"});
  EXPECT_EQ(json::parse(r.out).at("config_echo").at("seed"), 12);
  r = run_cli({"suite", "prop-rotation", "--samples", "5", "--seed", "13"});
  EXPECT_EQ(json::parse(r.out).at("config_echo").at("seed"), 13);
  ::setenv("BJORTHO_SEED", "zz", 1);
  r = run_cli({"suite", "prop-rotation", "--samples", "5"});
  EXPECT_EQ(r.code, 2);
  ::unsetenv("BJORTHO_SEED");
}

TEST_F(CliTest, InputErrorsExitTwo) {
  const auto expect_error = [](const CliRun& r, const std::string& code) {
    EXPECT_EQ(r.code, 2) << r.out;
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("error"), code);
    EXPECT_TRUE(j.at("detail").is_string());
  };
  expect_error(run_cli({"norm", path("bad.json"), "--p", "2"}), "DimensionMismatch");
  expect_error(run_cli({"norm", path("broken.json"), "--p", "2"}), "ParseError");
  expect_error(run_cli({"norm", path("missing.json"), "--p", "2"}), "ParseError");
  expect_error(run_cli({"norm", path("a.json"), "--p", "0.5"}), "InvalidExponent");
  expect_error(run_cli({"orth-vec", path("e1.json"), path("e3.json"), "--p", "2"}), "DimensionMismatch");
  expect_error(run_cli({"suite", "no-such-suite"}), "UnknownSuite");
  expect_error(run_cli({"orth-op", path("diag.json"), path("a.json"), "--p", "2", "--route", "x"}), "UsageError");
  expect_error(run_cli({"frobnicate"}), "UsageError");
  expect_error(run_cli({}), "UsageError");
}

TEST_F(CliTest, HelpExitsZero) {
  const CliRun r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("orth-op"), std::string::npos);
}

}  // namespace
}  // namespace bjortho
