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

#ifndef SKELIMG_EVAL_HPP_
#define SKELIMG_EVAL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "skelimg/sequence_io.hpp"

namespace skelimg {

// ---------------------------------------------------------------------------
// Nested leave-one-person-out splits.

struct Session {
  std::string test;
  std::string val;
  std::vector<std::string> train;  // sorted

  friend bool operator==(const Session&, const Session&) = default;
};

struct SplitPlan {
  std::vector<std::string> signers;  // sorted, unique
  std::vector<Session> sessions;     // lexicographic by (test, val)
};

// Every ordered (test, val) pair of distinct signers, n(n-1) sessions.
// Throws ValidationError for fewer than three distinct signers.
SplitPlan MakeSplitPlan(std::vector<std::string> signers);
SplitPlan MakeSplitPlan(const DatasetManifest& manifest);

nlohmann::json SplitPlanToJson(const SplitPlan& plan);
SplitPlan SplitPlanFromJson(const nlohmann::json& doc);

// ---------------------------------------------------------------------------
// Classification metrics.

struct ClassMetrics {
  std::string label;
  std::size_t support = 0;  // instances of this class in the truth
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricsReport {
  std::vector<std::string> classes;
  // confusion[truth][predicted]
  std::vector<std::vector<std::size_t>> confusion;
  std::vector<ClassMetrics> per_class;
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
};

// Precision and recall are 0 when their denominator is 0; F1 is 0 when
// precision + recall is 0. Macro averages weight every class in `classes`
// equally. Throws ValidationError on length mismatch, empty input or a label
// outside `classes`.
MetricsReport ComputeMetrics(std::span<const std::string> truth,
                             std::span<const std::string> predicted,
                             std::span<const std::string> classes);

nlohmann::json MetricsToJson(const MetricsReport& report);

// ---------------------------------------------------------------------------
// Aggregation across sessions.

enum class AggregationMode { kPerSession, kPerTestSigner };
enum class SdKind { kPopulation, kSample };

struct SessionResult {
  Session session;
  MetricsReport metrics;
};

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd ComputeMeanSd(std::span<const double> values, SdKind kind = SdKind::kPopulation);

struct MetricSummary {
  AggregationMode mode = AggregationMode::kPerSession;
  std::size_t count = 0;  // sessions or test signers aggregated
  MeanSd accuracy;
  MeanSd precision;
  MeanSd recall;
  MeanSd f1;
};

// kPerTestSigner first averages each test signer's sessions, then aggregates
// the per-signer means. Throws ValidationError on empty input.
MetricSummary AggregateSessions(std::span<const SessionResult> results,
                                AggregationMode mode,
                                SdKind sd = SdKind::kPopulation);
MetricSummary AggregateReports(std::span<const MetricsReport> reports,
                               SdKind sd = SdKind::kPopulation);

nlohmann::json SummaryToJson(const MetricSummary& summary);
MetricSummary SummaryFromJson(const nlohmann::json& doc);

std::string_view ModeName(AggregationMode mode);
std::optional<AggregationMode> ParseMode(std::string_view name);

// One line of the results table: "0.94 (0.04)" cells plus the F1 gain of
// the imputed stream over the raw stream, in percentage points.
struct ResultRow {
  std::string dataset;
  std::string subset;
  MetricSummary summary;
  std::optional<double> f1_improvement_pp;
};

// (imputed F1 mean - raw F1 mean) * 100.
double F1ImprovementPp(const MetricSummary& imputed, const MetricSummary& raw);

std::string RenderResultsTable(std::span<const ResultRow> rows);

// ---------------------------------------------------------------------------
// Nearest-centroid probe over flattened images; a trivial stand-in
// classifier used for smoke evaluation.

class NearestCentroidProbe {
 public:
  // Samples must share one length; labels parallel to samples.
  void Fit(std::span<const std::vector<double>> samples,
           std::span<const std::string> labels);
  std::string Predict(std::span<const double> sample) const;
  const std::vector<std::string>& classes() const { return classes_; }

 private:
  std::vector<std::string> classes_;
  std::vector<std::vector<double>> centroids_;
};

}  // namespace skelimg

#endif  // SKELIMG_EVAL_HPP_
