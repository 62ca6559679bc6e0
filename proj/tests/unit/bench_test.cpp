/* Copyright 2026 The skelimg Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <filesystem>

#include "skelimg/bench.hpp"
#include "skelimg/errors.hpp"
#include "skelimg/sequence_io.hpp"
#include "skelimg/synth.hpp"

namespace skelimg {
namespace {

BenchReport Report(std::vector<std::pair<std::string, std::vector<double>>> stages) {
  BenchReport r;
  for (auto& [name, secs] : stages) r.stages.push_back({name, secs});
  r.runs = r.stages.empty() ? 0 : r.stages[0].seconds.size();
  return r;
}

// The published timing table: five runs of extraction for each pipeline plus
// the shared inference stage.
BenchReport Candidate() {
  return Report({{"extraction", {4.612, 4.399, 4.457, 4.421, 4.297}},
                 {"inference", {0.946, 0.863, 0.861, 0.896, 0.870}}});
}
BenchReport Baseline() {
  return Report({{"extraction", {25.464, 23.385, 38.358, 25.115, 31.524}},
                 {"inference", {0.946, 0.863, 0.861, 0.896, 0.870}}});
}

TEST(StageTimingTest, MeanAndPopulationSd) {
  const StageTiming t{"x", {1.0, 2.0, 3.0, 4.0}};
  EXPECT_DOUBLE_EQ(t.Mean(), 2.5);
  EXPECT_DOUBLE_EQ(t.Sd(), std::sqrt(1.25));
}

TEST(CompareReportsTest, PublishedMeans) {
  const BenchReport cand = Report({{"extraction", {4.437}}, {"inference", {0.887}}});
  const BenchReport base = Report({{"extraction", {28.769}}, {"inference", {0.887}}});
  const SpeedupTable t = CompareReports(cand, base);
  EXPECT_NEAR(t.stages[0].ratio, 6.48, 0.01);
  EXPECT_NEAR(t.end_to_end, 5.57, 0.01);
  EXPECT_DOUBLE_EQ(t.stages[0].ratio, 28.769 / 4.437);
  EXPECT_DOUBLE_EQ(t.end_to_end, (28.769 + 0.887) / (4.437 + 0.887));
}

TEST(CompareReportsTest, SelfComparisonIsExactlyOne) {
  const SpeedupTable t = CompareReports(Baseline(), Baseline());
  for (const auto& s : t.stages) EXPECT_EQ(s.ratio, 1.0);
  EXPECT_EQ(t.end_to_end, 1.0);
}

TEST(CompareReportsTest, RatiosAreDirectDivision) {
  const SpeedupTable t = CompareReports(Candidate(), Baseline());
  for (const auto& s : t.stages) {
    EXPECT_NEAR(s.ratio, Baseline().Find(s.name)->Mean() / Candidate().Find(s.name)->Mean(), 1e-12);
  }
  EXPECT_NEAR(t.end_to_end, Baseline().TotalMean() / Candidate().TotalMean(), 1e-12);
}

TEST(CompareReportsTest, StageMismatchRejected) {
  EXPECT_THROW(CompareReports(Report({{"a", {1.0}}}), Report({{"b", {1.0}}})), ValidationError);
}

TEST(RunStagesTest, StubClockGivesZeroSd) {
  double now = 0.0;
  const BenchClock clock = [&] {
    now += 0.5;
    return now;
  };
  int calls = 0;
  const std::vector<BenchStage> stages = {{"same", [&] { ++calls; }}};
  const BenchReport r = RunStages(stages, 5, clock);
  ASSERT_EQ(r.runs, 5u);
  ASSERT_EQ(r.stages[0].seconds.size(), 5u);
  EXPECT_EQ(calls, 6);  // warm-up included
  EXPECT_EQ(r.stages[0].Sd(), 0.0);
  EXPECT_DOUBLE_EQ(r.stages[0].Mean(), 0.5);
}

TEST(RunStagesTest, FailureGivesPartialInvalidReport) {
  int n = 0;
  const std::vector<BenchStage> stages = {{"ok", [] {}}, {"flaky", [&] {
                                             if (++n == 3) throw Error("boom");
                                           }}};
  const BenchReport r = RunStages(stages, 5);
  EXPECT_FALSE(r.valid);
  EXPECT_NE(r.error.find("boom"), std::string::npos);
  EXPECT_LT(r.stages[0].seconds.size(), 5u);
}

TEST(BenchTableTest, FiveRowsAndMeanRow) {
  const std::string table = RenderBenchTable(Candidate());
  for (int i = 1; i <= 5; ++i) {
    EXPECT_NE(table.find("\n" + std::to_string(i) + " "), std::string::npos) << table;
  }
  EXPECT_NE(table.find("Mean (SD) | 4.437 (0.102) | 0.887 (0.032)"), std::string::npos) << table;
  EXPECT_NE(RenderBenchTable(Baseline()).find("28.769 (5.528)"), std::string::npos);
}

TEST(BenchJsonTest, RoundTripAndValidation) {
  const BenchReport back = BenchReportFromJson(BenchReportToJson(Baseline()));
  EXPECT_EQ(back.stages.size(), 2u);
  EXPECT_EQ(back.stages[0].seconds, Baseline().stages[0].seconds);
  nlohmann::json bad = BenchReportToJson(Baseline());
  bad["stages"][0]["seconds"][0] = 0.0;
  EXPECT_THROW(BenchReportFromJson(bad), ValidationError);
}

TEST(RunBenchTest, BuiltinStagesOnSyntheticClip) {
  SynthConfig cfg;
  cfg.classes = 1;
  cfg.signers = 1;
  cfg.samples_per_class = 1;
  cfg.frames = 12;
  cfg.dropout = 0.2;
  const auto dir = std::filesystem::temp_directory_path() / "skelimg_bench_clip";
  const DatasetManifest m = WriteSynthDataset(cfg, dir);
  const std::vector<std::string> names = {"ingest", "select", "impute", "encode", "write"};
  const BenchReport r = RunBench({}, m.entries[0].path, 3, names);
  EXPECT_TRUE(r.valid) << r.error;
  ASSERT_EQ(r.stages.size(), 5u);
  for (const auto& s : r.stages) EXPECT_EQ(s.seconds.size(), 3u);
  const std::vector<std::string> unknown = {"extraction"};
  EXPECT_THROW(RunBench({}, m.entries[0].path, 1, unknown), ValidationError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace skelimg
