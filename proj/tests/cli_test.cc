// Copyright 2026 The minabs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "minabs/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "minabs/verifier.h"

namespace minabs::cli {
namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Data rows of a CSV output: the header comment and column line are dropped.
std::vector<std::vector<std::string>> csv_rows(const std::string& text, std::string* columns = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  bool seen_columns = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_columns) {
      seen_columns = true;
      if (columns) *columns = line;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("minabs_cli_test_" + name);
}

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("0.2"), Complex(0.2, 0.0));
  EXPECT_EQ(parse_complex("-0.3+0.1i"), Complex(-0.3, 0.1));
  EXPECT_EQ(parse_complex("0.6-0.2j"), Complex(0.6, -0.2));
  EXPECT_EQ(parse_complex("0.5i"), Complex(0.0, 0.5));
  EXPECT_EQ(parse_complex("-i"), Complex(0.0, -1.0));
  EXPECT_EQ(parse_complex("1e-3"), Complex(1e-3, 0.0));
  EXPECT_THROW(parse_complex("abc"), ValidationError);
  EXPECT_THROW(parse_complex(""), ValidationError);
}

TEST(Bound, DefaultGridForTwoPairs) {
  Result near = invoke({"bound", "--pe", "0,0.5"});
  ASSERT_EQ(near.code, 0) << near.err;
  EXPECT_EQ(near.out.rfind("# minabs 0.1.0 schema=1 command=bound", 0), 0u);
  std::string columns;
  auto rows = csv_rows(near.out, &columns);
  EXPECT_EQ(columns, "pe,bound");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[0][1]), 175.21857727052037803, 1e-8);
  EXPECT_EQ(std::stod(rows[1][1]), 0.0);

  Result far = invoke({"bound", "--alpha2", "0.8"});
  ASSERT_EQ(far.code, 0);
  rows = csv_rows(far.out);
  EXPECT_EQ(rows.size(), 11u);
  EXPECT_NEAR(std::stod(rows[0][1]), 2.3317142559585797350, 1e-10);
}

TEST(Bound, DegeneratePairWarnsAndPrintsInfinity) {
  Result r = invoke({"bound", "--alpha1", "0.4", "--alpha2", "0.4", "--pe", "0.1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(csv_rows(r.out)[0][1], "inf");
}

TEST(Bound, JsonFormat) {
  Result r = invoke({"bound", "--format", "json", "--pe", "0.01", "--alpha1", "0.6+0.1i"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["meta"]["command"], "bound");
  EXPECT_EQ(doc["meta"]["schema"], 1);
  EXPECT_EQ(doc["rows"].size(), 1u);
}

TEST(Bound, InvalidInputsExitOne) {
  EXPECT_EQ(invoke({"bound", "--pe", "0.7"}).code, 1);
  EXPECT_EQ(invoke({"bound", "--alpha1", "1.5"}).code, 1);
  EXPECT_EQ(invoke({"bound", "--alpha1", "nonsense"}).code, 1);
  EXPECT_EQ(invoke({"bound", "--format", "xml"}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
}

TEST(Bound, WritesOutputFile) {
  auto path = temp_path("bound.csv");
  Result r = invoke({"bound", "--pe", "0.01", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_NEAR(std::stod(csv_rows(text.str())[0][1]), 140.35052064414771336, 1e-8);
  std::filesystem::remove(path);
}

TEST(ZenoSweep, RejectsZeroAngleWithWarning) {
  Result r = invoke({"zeno-sweep", "--theta0", "0,1e-2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("rejected"), std::string::npos);
  std::string columns;
  auto rows = csv_rows(r.out, &columns);
  EXPECT_EQ(columns, "theta0,K,fK,pe,nabs1,nabs2,nabs_mean,bound,gap");
  EXPECT_FALSE(rows.empty());
  for (const auto& row : rows) EXPECT_EQ(std::stod(row[0]), 1e-2);
}

TEST(ZenoSweep, OnlyZeroAngleIsAnError) {
  Result r = invoke({"zeno-sweep", "--theta0", "0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("no admissible"), std::string::npos);
}

TEST(ZenoSweep, FilteredRowsSpanErrorRange) {
  Result r = invoke({"zeno-sweep", "--theta0-count", "30", "--filter-near-bound", "--tol", "1e-3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_FALSE(rows.empty());
  double lo = 1, hi = 0;
  for (const auto& row : rows) {
    double pe = std::stod(row[3]);
    double bound = std::stod(row[7]);
    double gap = std::stod(row[8]);
    EXPECT_LE(gap, 1e-3 * std::max(1.0, bound));
    lo = std::min(lo, pe);
    hi = std::max(hi, pe);
  }
  EXPECT_LT(lo, 0.01);
  EXPECT_GT(hi, 0.3);
}

TEST(ZenoSweep, SeedFixesSamples) {
  Result a = invoke({"zeno-sweep", "--theta0-count", "3", "--seed", "5", "--k-stride", "50"});
  Result b = invoke({"zeno-sweep", "--theta0-count", "3", "--seed", "5", "--k-stride", "50"});
  Result c = invoke({"zeno-sweep", "--theta0-count", "3", "--seed", "6", "--k-stride", "50"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(ZenoSweep, ComplexPairRejected) {
  EXPECT_EQ(invoke({"zeno-sweep", "--alpha1", "0.2+0.1i", "--theta0", "1e-2"}).code, 1);
}

TEST(Classical, CsvColumnsAndSinglePhotonRow) {
  Result r = invoke({"classical", "--alpha2", "0.8", "--x-grid", "0.4999", "--trials", "20000"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string columns;
  auto rows = csv_rows(r.out, &columns);
  EXPECT_EQ(columns, "x,pe_posterior,pe_frequency,pe_se,nabs,nabs_se,undecided_frac");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(std::stod(rows[0][1]), 0.2, 4 * std::stod(rows[0][3]));
  EXPECT_EQ(std::stod(rows[0][6]), 0.0);
}

TEST(Classical, RejectsBadTolerance) {
  EXPECT_EQ(invoke({"classical", "--x-grid", "0.6", "--trials", "10"}).code, 1);
  EXPECT_EQ(invoke({"classical", "--likelihood-exponent", "3"}).code, 1);
}

TEST(Verify, SmallRunPasses) {
  Result r = invoke({"verify", "--n-cases", "50"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(r.out.find("alpha1="), std::string::npos);
}

TEST(Verify, SameSeedSameReport) {
  Result a = invoke({"verify", "--n-cases", "1", "--seed", "7", "--format", "json"});
  Result b = invoke({"verify", "--n-cases", "1", "--seed", "7", "--format", "json"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(nlohmann::json::parse(a.out)["pass"].get<bool>());
}

TEST(Verify, ReplaysDumpedRecords) {
  auto path = temp_path("replay.json");
  nlohmann::json records = nlohmann::json::array();
  for (std::uint64_t i = 0; i < 3; ++i) {
    records.push_back(verifier::to_json(verifier::generate_case(verifier::Shape{}, 7, i)));
  }
  std::ofstream(path) << records.dump();
  Result r = invoke({"verify", "--replay", path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("case 2:"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);

  std::ofstream(path) << "{\"kind\": \"other\"}";
  EXPECT_EQ(invoke({"verify", "--replay", path.string()}).code, 1);
  std::filesystem::remove(path);
}

TEST(Verify, BadShapeExitsOne) {
  EXPECT_EQ(invoke({"verify", "--shape", "9,2", "--n-cases", "1"}).code, 1);
  EXPECT_EQ(invoke({"verify", "--shape", "four", "--n-cases", "1"}).code, 1);
  EXPECT_EQ(invoke({"verify", "--n-cases", "0"}).code, 1);
}

}  // namespace
}  // namespace minabs::cli
