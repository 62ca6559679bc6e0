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

#ifndef SKELIMG_EXPERIMENT_HPP_
#define SKELIMG_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "skelimg/augment.hpp"
#include "skelimg/bench.hpp"
#include "skelimg/encode.hpp"
#include "skelimg/eval.hpp"
#include "skelimg/impute.hpp"

namespace skelimg {

// Where per-session training and prediction happen.
//
// "builtin:nearest-centroid" runs the in-process probe. "command" shells out:
//   <train> --session <session.json> --images <index.json> --out <ckpt_dir>
//   <predict> --ckpt <ckpt_dir> --images <test_index.json> --out <preds.json>
// where preds.json is {"labels": [...]} in test-index order.
struct TrainerEndpoint {
  std::string kind = "builtin:nearest-centroid";
  std::string train_command;
  std::string predict_command;
};

struct ExperimentConfig {
  std::filesystem::path dataset;  // DatasetManifest JSON
  std::string strategy = "asl-2nd";
  std::optional<ImputeConfig> impute = ImputeConfig{};
  AugmentConfig augment;
  EncodingSpec encode;
  // Which aggregation(s) to report; both when unset.
  std::optional<AggregationMode> split_mode;
  SdKind sd = SdKind::kPopulation;
  TrainerEndpoint trainer;
  BenchConfig bench;
  std::uint64_t seed = 0;
  int workers = 1;
  // Optional cap on sessions run (0 = all); for smoke runs.
  std::size_t max_sessions = 0;
};

// Relative paths resolve against the config file's directory.
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& doc,
                                          const std::filesystem::path& base_dir);
nlohmann::json ExperimentConfigToJson(const ExperimentConfig& cfg);

ImputeConfig ImputeConfigFromJson(const nlohmann::json& doc);
AugmentConfig AugmentConfigFromJson(const nlohmann::json& doc);
nlohmann::json AugmentConfigToJson(const AugmentConfig& cfg);

// Flattened image resampled to `columns_per_half` columns on each half, with
// pixel values scaled to [0,1]. Gives equal-length vectors across videos of
// different lengths.
std::vector<double> ImageFeatures(const SkeletonImage& image,
                                  std::size_t columns_per_half = 16);

struct EvaluationReport {
  std::string strategy;
  bool imputed = true;
  SplitPlan plan;
  std::vector<SessionResult> sessions;
  std::vector<MetricSummary> summaries;  // one per reported mode
  std::vector<EncodeFailure> failures;
};

// Encodes the dataset into <out_dir>/images, then runs every split-plan
// session through the trainer endpoint.
EvaluationReport RunEvaluation(const ExperimentConfig& cfg,
                               const std::filesystem::path& out_dir);

nlohmann::json EvaluationToJson(const EvaluationReport& report);

}  // namespace skelimg

#endif  // SKELIMG_EXPERIMENT_HPP_
