#include "bd4/acceptance.hpp"

#include <gtest/gtest.h>

namespace bd4 {
namespace {

TEST(Acceptance, CheapCriteriaPass) {
  AcceptanceConfig config;
  for (int id : {1, 2, 3, 5, 7, 8, 9}) {
    CriterionResult r = run_criterion(id, config);
    EXPECT_EQ(r.status, CriterionResult::Status::Pass) << format_human(r);
  }
}

TEST(Acceptance, UniquenessReportsSurvivors) {
  CriterionResult r = run_criterion(4, {});
  EXPECT_EQ(r.status, CriterionResult::Status::Fail);
  EXPECT_NE(r.detail.find("survivors=81"), std::string::npos);

  AcceptanceConfig config;
  config.dropped_laws = {12};
  r = run_criterion(4, config);
  EXPECT_NE(r.detail.find("survivors=576"), std::string::npos);
  EXPECT_NE(r.detail.find("dropped=12"), std::string::npos);
}

TEST(Acceptance, WorkBoundSkips) {
  AcceptanceConfig config;
  config.max_work = 1;
  CriterionResult r = run_criterion(11, config);
  EXPECT_EQ(r.status, CriterionResult::Status::Skipped);
  EXPECT_EQ(r.detail.rfind("skipped: bound", 0), 0u);
  EXPECT_EQ(r.seconds, 0);
}

TEST(Acceptance, SmallerRunsStillPass) {
  AcceptanceConfig config;
  config.random_instances = 50;
  config.soundness_samples = 20;
  config.seed = 7;
  EXPECT_EQ(run_criterion(12, config).status, CriterionResult::Status::Pass);
  EXPECT_EQ(run_criterion(10, config).status, CriterionResult::Status::Pass);
}

TEST(Acceptance, LineFormat) {
  CriterionResult r;
  r.id = 3;
  r.name = "classical-failures";
  r.status = CriterionResult::Status::Pass;
  r.detail = "say \"x\"";
  r.seconds = 0.25;
  r.limit_seconds = 1;
  EXPECT_EQ(format_lines(r),
            "criterion=3 name=classical-failures status=pass seconds=0.250 limit=1 detail=\"say 'x'\"");
  EXPECT_EQ(format_lines(r, false), "criterion=3 name=classical-failures status=pass limit=1 detail=\"say 'x'\"");
  EXPECT_THROW(run_criterion(13, {}), std::out_of_range);
}

TEST(Acceptance, OnlySelects) {
  AcceptanceConfig config;
  config.only = {2, 8};
  auto results = run_acceptance(config);
  ASSERT_EQ(results.size(), 2u);
  EXPECT_EQ(results[0].id, 2);
  EXPECT_EQ(results[1].name, "expansion-equivalences");
}

}  // namespace
}  // namespace bd4
