#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "sympwidth/cli.hpp"
#include "sympwidth/spec_json.hpp"
#include "sympwidth/errors.hpp"

using namespace sympwidth;
using nlohmann::json;

namespace {

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, BidiskMeanWidth) {
  const Captured c = invoke({"mean-width", "--body", R"({"type":"lagrangian-bidisk"})", "--n", "2",
                             "--radial", "24", "--angular", "1024"});
  ASSERT_EQ(c.code, 0) << c.err;
  const json j = json::parse(c.out);
  EXPECT_NEAR(j.at("mean_width").get<double>(), 8.0 / 3.0, 1e-6);
  EXPECT_TRUE(j.at("urysohn_holds").get<bool>());
}

TEST(Cli, BidiskMeanWidthOnTheCoarseRule) {
  const Captured c = invoke({"mean-width", "--body", R"({"type":"lagrangian-bidisk"})", "--n", "2",
                             "--radial", "64", "--angular", "64"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NEAR(json::parse(c.out).at("mean_width").get<double>(), 8.0 / 3.0, 1e-4);
}

TEST(Cli, MspOfAnEllipsoid) {
  const Captured c = invoke({"msp", "--body", R"({"type":"ellipsoid","a":[1,4],"b":[4,1]})"});
  ASSERT_EQ(c.code, 0) << c.err;
  const json j = json::parse(c.out);
  ASSERT_EQ(j.at("lambda").size(), 2u);
  EXPECT_NEAR(j.at("lambda")[0].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(j.at("lambda")[1].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(j.at("msp").get<double>(), 4.0, 1e-12);
}

TEST(Cli, StaircaseCsv) {
  const Captured c = invoke({"staircase", "--from", "1", "--to", "2", "--steps", "21"});
  ASSERT_EQ(c.code, 0) << c.err;
  std::istringstream lines(c.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("# config=", 0), 0u);
  std::getline(lines, line);
  EXPECT_EQ(line, "a,vol,mw_sq_quarter,cb,msp_upper_sq_quarter,strict_chain");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "true") << line;
  }
  EXPECT_EQ(rows, 21);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args = {"optimize", "--body",   R"({"type":"ellipsoid","a":[1,2],"b":[2,1]})",
                                         "--radial", "6",        "--angular", "12", "--starts", "2", "--seed", "3"};
  const Captured a = invoke(args), b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ConfigRoundTripsAndReruns) {
  const Captured first = invoke({"mean-width", "--body", R"({"type":"polydisk","r":[1,2]})", "--radial",
                                 "8", "--angular", "16", "--tol", "1e-5"});
  ASSERT_EQ(first.code, 0) << first.err;
  const json config = json::parse(first.out).at("config");
  const RunConfig parsed = config_from_json(config);
  EXPECT_EQ(config_to_json(parsed), config);
  EXPECT_EQ(config_from_json(config_to_json(parsed)), parsed);
  const Captured again = invoke({"--config", config.dump()});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(again.out, first.out);
}

TEST(Cli, CsvModeEmbedsTheConfig) {
  const Captured c = invoke({"mean-width", "--body", R"({"type":"ellipsoid","a":[1,1]})", "--radial", "4",
                             "--angular", "8", "--output", "csv"});
  ASSERT_EQ(c.code, 0) << c.err;
  std::istringstream lines(c.out);
  std::string config, header, values;
  std::getline(lines, config);
  std::getline(lines, header);
  std::getline(lines, values);
  ASSERT_EQ(config.rfind("# config=", 0), 0u);
  EXPECT_EQ(config_from_json(json::parse(config.substr(9))).output, "csv");
  EXPECT_NE(header.find("mean_width"), std::string::npos);
}

TEST(Cli, SpecErrorsNameTheJsonPath) {
  const Captured c = invoke({"mean-width", "--body", R"({"type":"union","members":[{"type":"polydisk","r":[1,"x"]}]})"});
  EXPECT_EQ(c.code, 2);
  EXPECT_NE(c.err.find("/members/0/r/1"), std::string::npos) << c.err;
  EXPECT_EQ(invoke({"mean-width", "--body", "{not json"}).code, 2);
  EXPECT_EQ(invoke({"mean-width", "--body", R"({"type":"ellipsoid","a":[1,1],"extra":1})"}).code, 2);
  EXPECT_EQ(invoke({"mean-width", "--body", R"({"type":"ellipsoid","a":[1,1]})", "--n", "3"}).code, 2);
  EXPECT_EQ(invoke({"mean-width", "--body", R"({"type":"ellipsoid","a":[1,1]})", "--angular", "7"}).code, 2);
  EXPECT_EQ(invoke({"mean-width"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"variation", "--body", R"({"type":"ellipsoid","a":[1]})", "--ham", R"({"preset":"nope"})"}).code, 2);
}

TEST(Cli, NonFiniteResultsExitWithThree) {
  const Captured c = invoke({"mean-width", "--body", R"({"type":"polydisk","r":[1e308,1e308]})", "--radial",
                             "2", "--angular", "4"});
  EXPECT_EQ(c.code, 3) << c.out << c.err;
}

TEST(Cli, FailedChecksExitWithFour) {
  // A negative tolerance demands strict slack in Urysohn's inequality, which
  // the ball (the equality case) cannot provide.
  const Captured c = invoke({"mean-width", "--body", R"({"type":"ellipsoid","a":[1,1]})", "--radial", "4",
                             "--angular", "8", "--tol", "-0.1"});
  EXPECT_EQ(c.code, 4);
}

TEST(Cli, VariationOfAToricBodyIsSmall) {
  const Captured c = invoke({"variation", "--body", R"({"type":"polydisk","r":[1]})", "--ham",
                             R"({"hopf-trig":{"terms":[{"ctheta":[2],"coeff":1.0}]}})", "--radial", "2",
                             "--angular", "256"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_LT(std::abs(json::parse(c.out).at("value").get<double>()), 1e-6);
}

TEST(Cli, HelpExitsCleanly) {
  const Captured c = invoke({"--help"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("mean-width"), std::string::npos);
}

TEST(SpecJson, EllipsoidFormOfALinearImage) {
  const Body b = parse_body(json::parse(
      R"({"type":"linear-image","matrix":[[2,0],[0,1]],"inner":{"type":"ellipsoid","a":[1]}})"));
  const Mat a = ellipsoid_form(b);
  EXPECT_NEAR(a(0, 0), 0.25, 1e-15);
  EXPECT_NEAR(a(1, 1), 1.0, 1e-15);
  EXPECT_THROW(ellipsoid_form(parse_body(json::parse(R"({"type":"lagrangian-bidisk"})"))), SpecError);
}

TEST(SpecJson, ToricBoxesAndRamosSpecs) {
  const Body t = parse_body(json::parse(R"({"type":"toric-profile","boxes":[{"a":[0,0],"b":[3.14159,3.14159]}]})"));
  EXPECT_EQ(t.dim_n(), 2);
  EXPECT_EQ(parse_body(json::parse(R"({"type":"ramos-omega0","samples":64})")).dim_n(), 2);
  EXPECT_THROW(parse_body(json::parse(R"({"type":"ramos-omega0","samples":4})")), SpecError);
}

TEST(Cli, StepDefaultsDependOnTheOrder) {
  const std::vector<std::string> base = {"variation", "--body", R"({"type":"ellipsoid","a":[1]})",
                                         "--ham", R"({"preset":"r2cos"})"};
  EXPECT_EQ(parse_arguments(base).h, 1e-3);
  std::vector<std::string> second = base;
  second.insert(second.end(), {"--order", "2"});
  EXPECT_EQ(parse_arguments(second).h, 1e-2);
  second.insert(second.end(), {"--h-step", "0.05"});
  EXPECT_EQ(parse_arguments(second).h, 0.05);
}
