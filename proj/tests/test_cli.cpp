#include <gtest/gtest.h>

#include "mshuffle/compute.hpp"
#include "mshuffle/errors.hpp"
#include "mshuffle/suites.hpp"

using namespace mshuffle;

namespace {

RunConfig quiet() {
  RunConfig c;
  c.timing = false;
  return c;
}

}  // namespace

TEST(RunConfig, DefaultsAreValid) { EXPECT_NO_THROW(RunConfig{}.validate()); }

TEST(RunConfig, RejectsBadSettings) {
  auto bad = [](auto edit) {
    RunConfig c;
    edit(c);
    return c;
  };
  EXPECT_THROW(bad([](RunConfig& c) { c.prime = 15; }).validate(), ConfigError);
  // 13 is prime but not above 2 * order * kmax = 18
  EXPECT_THROW(bad([](RunConfig& c) { c.prime = 13; }).validate(), ConfigError);
  EXPECT_NO_THROW(bad([](RunConfig& c) { c.prime = 19; }).validate());
  EXPECT_THROW(bad([](RunConfig& c) { c.n = 0, c.m = 0; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.kmax = 0; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.trials = 0; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.jet_order = 1000; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.suite = "nope"; }).validate(), ConfigError);
  EXPECT_THROW(run_suite("nope", RunConfig{}), ConfigError);
}

TEST(Suites, NamesInCriterionOrder) {
  std::vector<std::string> want{"rmatrix",   "shuffle",     "wheel",      "psi",    "appendix-a",
                                "appendix-b", "commuting",  "theorem-1-1", "psi-series", "lattice"};
  EXPECT_EQ(suite_names(), want);
}

TEST(Suites, RMatrixPassesAndIsSorted) {
  auto res = run_suite("rmatrix", quiet());
  ASSERT_FALSE(res.empty());
  for (size_t i = 0; i < res.size(); ++i) {
    EXPECT_EQ(res[i].status, "pass") << res[i].id << " " << res[i].detail;
    EXPECT_LT(res[i].failure_bound, 1e-15);
    if (i) {
      EXPECT_LT(res[i - 1].id, res[i].id);
    }
  }
}

TEST(Suites, ReportsAreByteIdentical) {
  auto cfg = quiet();
  auto a = report_json(cfg, run_suite("shuffle", cfg)).dump();
  auto b = report_json(cfg, run_suite("shuffle", cfg)).dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"seed\""), std::string::npos);
  EXPECT_EQ(a.find("elapsed"), std::string::npos);
}

TEST(Suites, SubstreamsDoNotDependOnSelection) {
  auto cfg = quiet();
  auto alone = run_suite("appendix-a", cfg);
  auto both = run_suite("all", cfg);
  for (const auto& c : alone) {
    auto it = std::find_if(both.begin(), both.end(), [&](const CheckResult& x) { return x.id == c.id; });
    ASSERT_NE(it, both.end()) << c.id;
    EXPECT_EQ(it->points, c.points);
    EXPECT_EQ(it->status, c.status);
  }
}

TEST(Suites, SuperSpaceChecksAreMarkedConjectural) {
  auto res = run_suite("theorem-1-1", quiet());
  for (const auto& c : res) {
    const bool super = c.id.find("|0)") == std::string::npos;
    EXPECT_EQ(c.status, super ? "conjecture-supported" : "pass") << c.id;
  }
}

TEST(Suites, ConfiguredSpaceIsIncluded) {
  auto cfg = quiet();
  cfg.n = 3;
  cfg.m = 0;
  auto res = run_suite("rmatrix", cfg);
  int hits = 0;
  for (const auto& c : res) hits += c.id.find("gl(3|0)") != std::string::npos;
  EXPECT_EQ(hits, 4);
}

TEST(Report, SummaryCountsFailures) {
  CheckResult ok{"a/x", "a", "id", "pass", 3, 3, 1e-40, 0.1, ""};
  CheckResult bad{"a/y", "a", "id", "fail", 1, 1, 1e-15, 0.1, "entry [0,0]"};
  auto j = report_json(quiet(), {ok, bad});
  EXPECT_EQ(j["version"], 1);
  EXPECT_EQ(j["summary"]["failed"], 1);
  EXPECT_EQ(j["checks"][1]["detail"], "entry [0,0]");
  EXPECT_FALSE(bad.ok());
}

TEST(Compute, SElementDump) {
  ComputeRequest req;
  req.object = "S";
  req.k = 2;
  auto j = compute_json(req, RunConfig{});
  EXPECT_EQ(j["tensor"]["arity"], 2);
  EXPECT_EQ(j["tensor"]["space"]["m"], 1);
  EXPECT_TRUE(j["tensor"]["point"].contains("z2"));
  EXPECT_FALSE(j["tensor"]["entries"].empty());
  EXPECT_EQ(j.dump(), compute_json(req, RunConfig{}).dump());
}

TEST(Compute, ZListsEveryMonomial) {
  ComputeRequest req;
  req.object = "Z";
  req.N = 2;
  auto j = compute_json(req, RunConfig{});
  ASSERT_EQ(j["coefficients"].size(), 3u);
  EXPECT_EQ(j["coefficients"][0]["u_monomial"], (std::vector<int>{0, 2}));
}

TEST(Compute, LatticeTerms) {
  ComputeRequest req;
  req.object = "lattice";
  req.alpha = parse_labels("11");
  req.beta = parse_labels("11");
  auto j = compute_json(req, RunConfig{});
  EXPECT_FALSE(j["terms"].empty());
  for (const auto& t : j["terms"]) {
    int deg = 0;
    for (int x : t["u_monomial"]) deg += x;
    EXPECT_EQ(deg, 2);
  }
  EXPECT_THROW(parse_labels("10"), ConfigError);
  req.object = "X";
  EXPECT_THROW(compute_json(req, RunConfig{}), ConfigError);
}
