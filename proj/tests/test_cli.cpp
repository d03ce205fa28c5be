// Copyright 2026 The QDT Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qdt/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = qdt::cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string data = QDT_TEST_DATA_DIR "/fixtures/";

} // namespace

TEST(Cli, ValidateH2) {
    const auto r = run({"validate", data + "h2.json", "--oracle", "--format", "json"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.err.empty());
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["optimal"], "pi1");
    EXPECT_NEAR(doc["checks"]["sum_q"].get<double>(), 0.0, 1e-12);
    EXPECT_NEAR(doc["checks"]["sum_p"].get<double>(), 1.0, 1e-12);
    EXPECT_LT(doc["checks"]["identity_residual"].get<double>(), 1e-12);
    EXPECT_NEAR(doc["prospects"][0]["q"].get<double>(), 0.5, 1e-12);
    EXPECT_EQ(doc["prospects"][1]["rank"], 2);
}

TEST(Cli, StrictViolationExitsOne) {
    const auto r = run({"validate", data + "column_norm_09.json"});
    EXPECT_EQ(r.code, 1);
    const auto err = nlohmann::json::parse(r.err);
    EXPECT_EQ(err["error"], "NormalizationError");
    EXPECT_NEAR(err["residuals"]["column_norm_max_dev"].get<double>(), 0.19, 1e-12);
    EXPECT_NEAR(err["residuals"]["sum_p"].get<double>(), 0.0, 1e-12);
}

TEST(Cli, GivenPolicyAcceptsTheSameFile) {
    const auto r = run({"evaluate", data + "column_norm_09.json", "--normalization", "given",
                        "--format", "csv"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "name,p_raw,diag_sum,q,p_normalized,rank\n"
                     "pi1,0,0,0,,2\n"
                     "pi2,1,1,0,,1\n");
}

TEST(Cli, MalformedExitsTwo) {
    const auto r = run({"validate", data + "malformed.json"});
    EXPECT_EQ(r.code, 2);
    const auto err = nlohmann::json::parse(r.err);
    EXPECT_EQ(err["error"], "ParseError");
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"validate"}).code, 2);
    EXPECT_EQ(run({"validate", data + "does_not_exist.json"}).code, 2);
    EXPECT_EQ(run({"evaluate", "demo:h2", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"evaluate", "demo:h2", "--tolerance", "-1"}).code, 2);
    EXPECT_EQ(run({"demo", "allais"}).code, 2);
    EXPECT_EQ(run({"demo", "h2", "--phase", "1"}).code, 2);
    EXPECT_EQ(run({"demo", "disjunction", "--event-weight", "2"}).code, 2);
    EXPECT_EQ(run({"random", "--modes", "2,2", "--prospects", "3"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, RankOrdersByProbability) {
    const auto r = run({"rank", data + "renorm.json", "--format", "json"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["prospects"].size(), 2u);
    EXPECT_EQ(doc["prospects"][0]["name"], "high");
    EXPECT_EQ(doc["prospects"][0]["rank"], 1);
    EXPECT_NEAR(doc["prospects"][0]["p_normalized"].get<double>(), 0.64, 1e-12);
    EXPECT_NEAR(doc["prospects"][1]["p_normalized"].get<double>(), 0.36, 1e-12);
    EXPECT_NEAR(doc["prospects"][0]["p_raw"].get<double>(), 0.16, 1e-12);
}

TEST(Cli, TableNamesOrderingField) {
    const auto r = run({"evaluate", data + "renorm.json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("ordered by: p_normalized"), std::string::npos);
    const auto h2 = run({"evaluate", "demo:h2"});
    EXPECT_NE(h2.out.find("ordered by: p_raw"), std::string::npos);
}

TEST(Cli, DemoDisjunctionPhase) {
    const auto r = run({"demo", "disjunction", "--phase", "3.141592653589793", "--format", "json"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["optimal"], "refrain");
    EXPECT_NEAR(doc["prospects"][0]["q"].get<double>(), -0.5, 1e-12);
    EXPECT_EQ(doc["attraction"][0]["pass"], true);
}

TEST(Cli, DemoScenarioRoundTrips) {
    const auto r = run({"demo", "register", "--scenario"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(qdt::parse_scenario(r.out), qdt::register_scenario());
}

TEST(Cli, RandomIsDeterministic) {
    const auto a = run({"random", "--seed", "7", "--modes", "2,3", "--prospects", "8"});
    const auto b = run({"random", "--seed", "7", "--modes", "2,3", "--prospects", "8"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto s = qdt::parse_scenario(a.out);
    EXPECT_EQ(s.prospects.size(), 8u);
    EXPECT_EQ(s.options.seed, 7u);
}

TEST(Cli, JobsKeepInputOrder) {
    std::vector<std::string> files;
    for (int i = 0; i < 6; ++i) {
        files.push_back(i % 2 ? "demo:register" : data + "h2.json");
    }
    std::vector<std::string> serial{"evaluate", "--format", "csv"};
    serial.insert(serial.end(), files.begin(), files.end());
    auto parallel = serial;
    parallel.insert(parallel.end(), {"--jobs", "4"});
    const auto a = run(serial);
    const auto b = run(parallel);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, BatchExitCodeIsWorst) {
    const auto r = run({"validate", data + "h2.json", data + "column_norm_09.json"});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.out.empty());
}
