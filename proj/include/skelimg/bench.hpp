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

#ifndef SKELIMG_BENCH_HPP_
#define SKELIMG_BENCH_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "skelimg/encode.hpp"
#include "skelimg/impute.hpp"

namespace skelimg {

struct StageTiming {
  std::string name;
  std::vector<double> seconds;  // one entry per recorded run

  double Mean() const;
  // Population SD, the convention of the published timing table.
  double Sd() const;
};

struct BenchReport {
  std::vector<StageTiming> stages;  // in execution order
  std::size_t runs = 0;             // recorded runs, warm-up excluded
  bool valid = true;
  std::string error;  // set when a stage failed

  const StageTiming* Find(const std::string& name) const;
  // Sum of stage means.
  double TotalMean() const;
};

struct BenchStage {
  std::string name;
  std::function<void()> run;
};

// Monotonic seconds.
using BenchClock = std::function<double()>;
double SteadySeconds();

// Runs every stage in order, `runs` times, after one untimed warm-up pass
// (when `warmup` is set). A throwing stage stops the benchmark and returns
// the timings gathered so far with valid=false.
BenchReport RunStages(std::span<const BenchStage> stages, int runs,
                      const BenchClock& clock = SteadySeconds, bool warmup = true);

struct BenchConfig {
  std::string strategy = "asl-2nd";
  ImputeConfig impute;
  EncodingSpec spec;
  // Extra stages timed as shell commands, e.g. {"extraction", "python x.py"}.
  std::map<std::string, std::string> commands;
};

// Built-in stage names: ingest, select, impute, encode, write. Any other
// requested name must appear in cfg.commands. Stages share one pipeline per
// run: ingest reads `video`, later stages consume the previous output.
BenchReport RunBench(const BenchConfig& cfg, const std::filesystem::path& video,
                     int runs, std::span<const std::string> stage_names,
                     const BenchClock& clock = SteadySeconds);

struct StageSpeedup {
  std::string name;
  double baseline_mean = 0.0;
  double candidate_mean = 0.0;
  double ratio = 0.0;  // baseline / candidate
};

struct SpeedupTable {
  std::vector<StageSpeedup> stages;  // candidate stage order
  double baseline_total = 0.0;
  double candidate_total = 0.0;
  double end_to_end = 0.0;  // baseline_total / candidate_total
};

// Throws ValidationError unless both reports time the same stage names.
SpeedupTable CompareReports(const BenchReport& candidate, const BenchReport& baseline);

nlohmann::json BenchReportToJson(const BenchReport& report);
BenchReport BenchReportFromJson(const nlohmann::json& doc);
nlohmann::json SpeedupToJson(const SpeedupTable& table);

// One row per run plus a "Mean (SD)" row, three decimals.
std::string RenderBenchTable(const BenchReport& report);
std::string RenderSpeedupTable(const SpeedupTable& table);

}  // namespace skelimg

#endif  // SKELIMG_BENCH_HPP_
