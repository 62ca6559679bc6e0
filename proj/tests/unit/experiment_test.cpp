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

#include "skelimg/errors.hpp"
#include "skelimg/experiment.hpp"
#include "skelimg/synth.hpp"

namespace skelimg {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

TEST(ExperimentConfigTest, DefaultsAndOverrides) {
  const json doc = json::parse(R"({
    "dataset": "d/manifest.json",
    "strategy": "laines",
    "impute": {"window": 4, "cubic_min_points": 5},
    "augment": {"rotation_deg": 15, "zoom": [0.8, 1.2], "hflip_prob": 0.25, "seed": 3},
    "encode": {"pad": "repeat_last"},
    "split_mode": "per_test_signer",
    "sd": "sample"
  })");
  const ExperimentConfig cfg = ExperimentConfigFromJson(doc, "/base");
  EXPECT_EQ(cfg.dataset, fs::path("/base/d/manifest.json"));
  ASSERT_TRUE(cfg.impute);
  EXPECT_EQ(cfg.impute->window, 4);
  EXPECT_EQ(cfg.impute->cubic_min_points, 5);
  EXPECT_EQ(cfg.augment.rotation_deg.lo, -15);
  EXPECT_EQ(cfg.augment.zoom.hi, 1.2);
  EXPECT_EQ(cfg.augment.seed, 3u);
  EXPECT_EQ(cfg.encode.pad, PadPolicy::kRepeatLast);
  EXPECT_EQ(cfg.split_mode, AggregationMode::kPerTestSigner);
  EXPECT_EQ(cfg.sd, SdKind::kSample);
  EXPECT_EQ(cfg.trainer.kind, "builtin:nearest-centroid");

  const ExperimentConfig again = ExperimentConfigFromJson(ExperimentConfigToJson(cfg), "");
  EXPECT_EQ(again.strategy, "laines");
  EXPECT_EQ(again.impute->window, 4);
}

TEST(ExperimentConfigTest, Rejections) {
  EXPECT_THROW(ExperimentConfigFromJson(json::parse(R"({"impute":{"window":1}})"), ""),
               ValidationError);
  EXPECT_THROW(ExperimentConfigFromJson(json::parse(R"({"encode":{"pad":"mirror"}})"), ""),
               SchemaError);
  EXPECT_THROW(
      ExperimentConfigFromJson(json::parse(R"({"trainer":{"endpoint":"command"}})"), ""),
      SchemaError);
  EXPECT_FALSE(
      ExperimentConfigFromJson(json::parse(R"({"impute":{"enabled":false}})"), "").impute);
}

TEST(ImageFeaturesTest, EqualLengthAcrossWidths) {
  SkeletonImage a;
  a.height = 2;
  a.width = 4;
  a.pixels.assign(2 * 4 * 3, 255);
  SkeletonImage b = a;
  b.width = 10;
  b.pixels.assign(2 * 10 * 3, 0);
  const auto fa = ImageFeatures(a, 8);
  const auto fb = ImageFeatures(b, 8);
  EXPECT_EQ(fa.size(), fb.size());
  for (double v : fa) EXPECT_DOUBLE_EQ(v, 1.0);
  for (double v : fb) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(RunEvaluationTest, BuiltinProbeOnSeparableData) {
  const fs::path root = fs::temp_directory_path() / "skelimg_eval_run";
  fs::remove_all(root);
  SynthConfig synth;
  synth.signers = 4;
  synth.classes = 3;
  synth.samples_per_class = 3;
  synth.frames = 24;
  WriteSynthDataset(synth, root / "data");
  ExperimentConfig cfg;
  cfg.dataset = root / "data" / "manifest.json";
  cfg.strategy = "arcanjo";
  cfg.workers = 2;
  const EvaluationReport report = RunEvaluation(cfg, root / "out");
  EXPECT_EQ(report.sessions.size(), 12u);
  ASSERT_EQ(report.summaries.size(), 2u);
  // Chance level is 1/3.
  EXPECT_GT(report.summaries[0].accuracy.mean, 0.6);
  EXPECT_TRUE(report.failures.empty());

  cfg.max_sessions = 3;
  cfg.split_mode = AggregationMode::kPerSession;
  const EvaluationReport capped = RunEvaluation(cfg, root / "capped");
  EXPECT_EQ(capped.sessions.size(), 3u);
  EXPECT_EQ(capped.summaries.size(), 1u);
  fs::remove_all(root);
}

}  // namespace
}  // namespace skelimg
