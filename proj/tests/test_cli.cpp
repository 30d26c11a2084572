#include "cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

using infogeo::Json;
using infogeo::cli::dispatch;

TEST(Cli, SpecialNormalDistance) {
    const auto r = dispatch({"distance", "--case", "special-normal"});
    ASSERT_TRUE(r.ok) << r.message;
    EXPECT_NEAR(r.payload["distance"].get<double>(), std::sqrt(2.0), 1e-12);
    const Json doc = r.to_json();
    EXPECT_EQ(doc["status"], "ok");
    EXPECT_TRUE(doc["diagnostics"].contains("threads"));
}

TEST(Cli, ScalarCurvature) {
    const auto r = dispatch({"curvature", "scalar", "--n", "2"});
    ASSERT_TRUE(r.ok) << r.message;
    EXPECT_DOUBLE_EQ(r.payload["scal"].get<double>(), -4.5);
    EXPECT_DOUBLE_EQ(r.payload["scal_special"].get<double>(), -3.5);
}

TEST(Cli, RenyiEntropy) {
    const auto r = dispatch({"entropy", "renyi", "--n", "1", "--p", "2", "--q", "2"});
    ASSERT_TRUE(r.ok) << r.message;
    EXPECT_NEAR(r.payload["value"].get<double>(), 1.3155445799830408, 1e-12);
}

TEST(Cli, InlineDocuments) {
    const auto r = dispatch({"metric", "--spec", R"({"name": "unified"})", "--point",
                             R"({"n": 1, "D": [[2]], "u": [0]})", "--a", R"({"X": [[1]], "x": [1]})"});
    ASSERT_TRUE(r.ok) << r.message;
    EXPECT_NEAR(r.payload["value"].get<double>(), 0.5 * 0.25 + 2.0, 1e-14);
}

TEST(Cli, UsageError) {
    const auto r = dispatch({"distance", "--case", "nowhere", "--seed", "7"});
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.code, "usage");
    const Json doc = r.to_json();
    EXPECT_EQ(doc["status"], "error");
    EXPECT_EQ(doc["error"]["code"], "usage");
    EXPECT_TRUE(doc["payload"].is_null());
    EXPECT_TRUE(dispatch({}).ok == false || dispatch({}).payload.contains("help"));
}

TEST(Cli, FisherNonexistence) {
    const auto r = dispatch({"metric", "--spec", R"({"name": "fisher", "p": 2.5})", "--point",
                             R"({"n": 1, "D": [[1]], "u": [0]})", "--a", R"({"X": [[1]]})"});
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.code, "nonexistence");
}

TEST(Cli, Alpha0Distance) {
    const auto ok = dispatch({"distance", "--case", "alpha0"});
    ASSERT_TRUE(ok.ok) << ok.message;
    EXPECT_NEAR(ok.payload["distance"].get<double>(), std::sqrt(2.0), 1e-10);

    const auto r = dispatch({"distance", "--case", "alpha0", "--from", R"({"n": 1, "D": [[2]], "u": [0]})", "--to",
                             R"({"n": 1, "D": [[2]], "u": [1.5]})"});
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.code, "nonexistence");
}

TEST(Cli, SeedIsEchoed) {
    const auto r = dispatch({"--seed", "42", "curvature", "scalar", "--n", "1"});
    ASSERT_TRUE(r.ok) << r.message;
    EXPECT_EQ(r.diagnostics["seed"].get<std::uint64_t>(), 42u);
}

TEST(Cli, GeodesicCsvTrace) {
    const std::string path = testing::TempDir() + "infogeo_trace.csv";
    const auto r = dispatch({"geodesic", "closed", "--from", R"({"n": 1, "D": [[2]], "u": [0]})", "--to",
                             R"({"n": 1, "D": [[2]], "u": [1.5]})", "--steps", "10", "--out", path});
    ASSERT_TRUE(r.ok) << r.message;
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "t,D_11,u_1");
    std::remove(path.c_str());
}

TEST(Cli, VerifyCurvatureSuite) {
    const auto r = dispatch({"verify", "--suite", "curvature"});
    ASSERT_TRUE(r.ok) << r.message;
    EXPECT_EQ(r.to_json()["status"], "ok");
}
