#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "cli_app.hpp"
#include "solgeom/curves.hpp"

using nlohmann::json;
using namespace solgeom;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    rows.push_back(cells);
  }
  return rows;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(SOLGEOM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Parse, Numbers) {
  EXPECT_EQ(cli::parse_real("-1.5"), -1.5);
  EXPECT_EQ(cli::parse_real("3/4"), 0.75);
  EXPECT_EQ(cli::parse_real("+2e-3"), 2e-3);
  EXPECT_THROW(cli::parse_real("abc"), InvalidInput);
  EXPECT_THROW(cli::parse_real("1/0"), InvalidInput);
  EXPECT_THROW(cli::parse_real("1.5x"), InvalidInput);
  EXPECT_THROW(cli::parse_real("nan"), InvalidInput);
  EXPECT_EQ(cli::parse_triple("0.5, 5,1/2"), (SolPoint{0.5, 5.0, 0.5}));
  EXPECT_THROW(cli::parse_triple("1,2"), InvalidInput);
}

TEST(Triangle, TableRowSum) {
  const Result r = run({"triangle", "0,0,0", "-1,1,1", "0.5,5,0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "triangle");
  EXPECT_NEAR(j["results"]["angle_sum"].get<double>(), 3.17066, 1e-4);
  EXPECT_NEAR(j["results"]["omega1"].get<double>(), 1.34369, 1e-4);
  EXPECT_EQ(j["results"]["coplanar"], false);
  EXPECT_TRUE(j["results"]["tangents"].contains("t13"));
  EXPECT_EQ(j["version"], std::string(cli::kVersion));
  EXPECT_TRUE(j["tolerances"].contains("tol"));
}

TEST(Triangle, FlatTriangle) {
  const Result r = run({"triangle", "0,0,0", "0,1,1", "0,2,0.5"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["results"]["angle_sum"].get<double>(), std::numbers::pi, 1e-12);
  EXPECT_EQ(j["results"]["coplanar"], true);
  EXPECT_EQ(j["results"]["coordinate_planar"], true);
}

TEST(Triangle, DegreesFlag) {
  const Result r = run({"--degrees", "triangle", "0,0,0", "0,1,1", "0,2,0.5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["results"]["angle_sum"].get<double>(), 180.0, 1e-9);
}

TEST(Triangle, ErrorsAndExitCodes) {
  const Result degen = run({"triangle", "0,0,0", "1,1,1", "1,1,1"});
  EXPECT_EQ(degen.code, cli::kExitDegenerate);
  EXPECT_NE(degen.err.find("degenerate triangle"), std::string::npos);

  EXPECT_EQ(run({"triangle", "0,0,0", "1,x,1", "2,2,2"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"triangle", "0,0,0", "1,1,1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--format", "xml", "tables", "1"}).code, cli::kExitUsage);
}

TEST(Triangle, CsvRoundTripsThroughRerun) {
  const Result r = run({"--format", "csv", "triangle", "0.25,-1,0.5", "-1,1,1", "0.5,5,-2"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  ASSERT_EQ(rows[0].size(), rows[1].size());
  EXPECT_EQ(rows[0][0], "a1_x");
  // Re-run from the vertices as printed; every numeric field must agree.
  const std::string a1 = rows[1][0] + "," + rows[1][1] + "," + rows[1][2];
  const std::string a2 = rows[1][3] + "," + rows[1][4] + "," + rows[1][5];
  const std::string a3 = rows[1][6] + "," + rows[1][7] + "," + rows[1][8];
  const auto again = parse_csv(run({"--format", "csv", "triangle", a1, a2, a3}).out);
  for (std::size_t k = 0; k < rows[1].size(); ++k) {
    if (rows[1][k] == "true" || rows[1][k] == "false") {
      EXPECT_EQ(rows[1][k], again[1][k]);
    } else {
      EXPECT_NEAR(std::stod(rows[1][k]), std::stod(again[1][k]), 1e-12) << rows[0][k];
    }
  }
}

TEST(Tables, RowsAndRejection) {
  const Result t1 = run({"--format", "csv", "tables", "1"});
  ASSERT_EQ(t1.code, 0);
  const auto rows = parse_csv(t1.out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"value", "omega1", "omega2", "omega3", "sum"}));
  EXPECT_EQ(std::stod(rows[11][0]), 10.0);
  EXPECT_NEAR(std::stod(rows[11][4]), 3.18866, 1e-4);

  const Result t2 = run({"tables", "2"});
  ASSERT_EQ(t2.code, 0);
  const json j = json::parse(t2.out);
  EXPECT_EQ(j["results"]["rows"][3]["label"], "1/100");
  EXPECT_NEAR(j["results"]["rows"][3]["sum"].get<double>(), 3.15355, 1e-4);

  const Result rounded = run({"--format", "csv", "tables", "2", "--rounded"});
  EXPECT_EQ(parse_csv(rounded.out)[4][4], "3.15355");

  EXPECT_EQ(run({"tables", "3"}).code, cli::kExitUsage);
}

TEST(Curve, BasePlaneAndRanges) {
  const Result r = run({"--format", "csv", "curve", "0.3", "0", "2", "-n", "9"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(std::stod(rows[i][4]), 0.0);
  }

  const Result bad = run({"curve", "4", "0", "1"});
  EXPECT_EQ(bad.code, cli::kExitUsage);
  EXPECT_NE(bad.err.find("-pi <= phi <= pi"), std::string::npos);
  EXPECT_EQ(run({"curve", "0", "0", "1", "-n", "1"}).code, cli::kExitUsage);
}

TEST(Curve, EndpointMatchesParamsRoundTrip) {
  const Result p = run({"params", "-1", "1", "1"});
  ASSERT_EQ(p.code, 0);
  const json pj = json::parse(p.out)["results"];
  char phi[64], theta[64], t[64];
  std::snprintf(phi, sizeof phi, "%.17g", pj["phi"].get<double>());
  std::snprintf(theta, sizeof theta, "%.17g", pj["theta"].get<double>());
  std::snprintf(t, sizeof t, "%.17g", pj["t"].get<double>());
  const Result c = run({"curve", phi, theta, t, "-n", "5"});
  ASSERT_EQ(c.code, 0) << c.err;
  const json end = json::parse(c.out)["results"]["endpoint"];
  EXPECT_NEAR(end[0].get<double>(), -1.0, 1e-10);
  EXPECT_NEAR(end[1].get<double>(), 1.0, 1e-10);
  EXPECT_NEAR(end[2].get<double>(), 1.0, 1e-10);
}

TEST(Curve, YZPlaneSideHasZeroX) {
  const json pj = json::parse(run({"params", "0", "1", "1"}).out)["results"];
  const Result c = run({"curve", std::to_string(pj["phi"].get<double>()), std::to_string(pj["theta"].get<double>()),
                        std::to_string(pj["t"].get<double>()), "-n", "20"});
  for (const auto& pt : json::parse(c.out)["results"]["points"]) {
    EXPECT_NEAR(pt[0].get<double>(), 0.0, 1e-6);
  }
}

TEST(Params, Cases) {
  const json a = json::parse(run({"params", "1", "1", "0"}).out)["results"];
  EXPECT_NEAR(a["phi"].get<double>(), std::numbers::pi / 4, 1e-15);
  EXPECT_EQ(a["theta"].get<double>(), 0.0);
  EXPECT_NEAR(a["t"].get<double>(), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(a["case"], "z0");

  const json b = json::parse(run({"params", "0", "0", "-3"}).out)["results"];
  EXPECT_EQ(b["case"], "axis");
  EXPECT_EQ(b["t"].get<double>(), 3.0);
  EXPECT_EQ(b["distance"].get<double>(), 3.0);

  const json c = json::parse(run({"params", "-1", "1", "1"}).out)["results"];
  EXPECT_EQ(c["case"], "generic");

  EXPECT_EQ(run({"params", "0", "0", "0"}).code, cli::kExitDegenerate);
}

TEST(Distance, Basic) {
  const Result r = run({"distance", "0,0,0", "3,4,0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["results"]["distance"].get<double>(), 5.0, 1e-12);
}

TEST(Sweep, MatchesTables) {
  const Result r = run({"--format", "csv", "sweep", "--a2", "-1,1,1", "--a3", "0.5,5,0", "--free", "z", "--values",
                        "-10,-2,-1,1/100,1/10,1/2,3/4,3/2,2,5,10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, run({"--format", "csv", "tables", "1"}).out);
  EXPECT_EQ(run({"sweep", "--a2", "-1,1,1", "--a3", "0.5,5,0", "--free", "w", "--values", "1"}).code,
            cli::kExitUsage);
}

TEST(Verify, DefaultSummaryAndDeterminism) {
  const Result a = run({"--seed", "7", "verify", "--trials", "200"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("\"violations\": 0"), std::string::npos);
  const Result b = run({"--seed", "7", "verify", "--trials", "200"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Verify, PlanarSuite) {
  const Result r = run({"verify", "--suite", "planar", "--trials", "300"});
  ASSERT_EQ(r.code, 0);
  const json s = json::parse(r.out)["results"]["suites"][0];
  EXPECT_EQ(s["suite"], "planar");
  EXPECT_LT(s["max_error"].get<double>(), 1e-9);
}

TEST(Verify, ViolationExitCodeEchoesInput) {
  // A tolerance below the achievable round-trip accuracy forces violations.
  const Result r = run({"--tol", "1e-300", "verify", "--suite", "round_trip", "--trials", "50"});
  EXPECT_EQ(r.code, cli::kExitViolation);
  EXPECT_NE(r.err.find("phi="), std::string::npos);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, cli::kExitUsage);
}

TEST(Binary, ExitCodeContract) {
  EXPECT_EQ(run_binary("triangle 0,0,0 -1,1,1 0.5,5,0.5"), 0);
  EXPECT_EQ(run_binary("triangle 0,0,0 1,1,1 1,1,1"), 2);
  EXPECT_EQ(run_binary("triangle 0,0,0 1,a,1 1,2,1"), 1);
  EXPECT_EQ(run_binary("tables 3"), 1);
  EXPECT_EQ(run_binary("--tol 1e-300 verify --suite round_trip --trials 20"), 3);
}
