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

#include "skelimg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <set>

#include <unistd.h>

#include "skelimg/errors.hpp"
#include "skelimg/png_io.hpp"
#include "skelimg/selection.hpp"
#include "skelimg/sequence_io.hpp"

namespace skelimg {

using nlohmann::json;

double StageTiming::Mean() const {
  if (seconds.empty()) return 0.0;
  double sum = 0.0;
  for (double s : seconds) sum += s;
  return sum / static_cast<double>(seconds.size());
}

double StageTiming::Sd() const {
  if (seconds.empty()) return 0.0;
  const double mean = Mean();
  double ss = 0.0;
  for (double s : seconds) ss += (s - mean) * (s - mean);
  return std::sqrt(ss / static_cast<double>(seconds.size()));
}

const StageTiming* BenchReport::Find(const std::string& name) const {
  for (const StageTiming& s : stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

double BenchReport::TotalMean() const {
  double total = 0.0;
  for (const StageTiming& s : stages) total += s.Mean();
  return total;
}

double SteadySeconds() {
  using std::chrono::duration;
  using std::chrono::steady_clock;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

BenchReport RunStages(std::span<const BenchStage> stages, int runs,
                      const BenchClock& clock, bool warmup) {
  if (runs < 1) throw ValidationError("bench needs at least one run");
  BenchReport report;
  for (const BenchStage& s : stages) report.stages.push_back({s.name, {}});

  auto stage_error = [&](const BenchStage& s, const char* what, const char* when) {
    report.valid = false;
    report.error = "stage '" + s.name + "' failed during " + when + ": " + what;
  };

  if (warmup) {
    for (const BenchStage& s : stages) {
      try {
        s.run();
      } catch (const std::exception& e) {
        stage_error(s, e.what(), "warm-up");
        return report;
      }
    }
  }
  for (int r = 0; r < runs; ++r) {
    for (std::size_t i = 0; i < stages.size(); ++i) {
      const double start = clock();
      try {
        stages[i].run();
      } catch (const std::exception& e) {
        stage_error(stages[i], e.what(), ("run " + std::to_string(r + 1)).c_str());
        return report;
      }
      report.stages[i].seconds.push_back(clock() - start);
    }
    ++report.runs;
  }
  return report;
}

BenchReport RunBench(const BenchConfig& cfg, const std::filesystem::path& video,
                     int runs, std::span<const std::string> stage_names,
                     const BenchClock& clock) {
  const SelectionManifest selection = LoadManifest(cfg.strategy);
  cfg.impute.Validate();

  // Pipeline state shared by consecutive stages of one run.
  struct State {
    std::optional<LandmarkSequence> raw;
    std::optional<LandmarkSequence> selected;
    std::optional<LandmarkSequence> imputed;
    std::optional<SkeletonImage> image;
  };
  auto state = std::make_shared<State>();
  const auto png_path = std::filesystem::temp_directory_path() /
                        ("skelimg_bench_" + std::to_string(::getpid()) + ".png");

  std::vector<BenchStage> stages;
  for (const std::string& name : stage_names) {
    if (name == "ingest") {
      stages.push_back({name, [state, video] { state->raw = ReadSequence(video); }});
    } else if (name == "select") {
      stages.push_back({name, [state, &selection, video] {
                          if (!state->raw) state->raw = ReadSequence(video);
                          state->selected = ApplySelection(*state->raw, selection);
                        }});
    } else if (name == "impute") {
      stages.push_back({name, [state, &selection, &cfg, video] {
                          if (!state->selected) {
                            state->selected = ApplySelection(ReadSequence(video), selection);
                          }
                          state->imputed = ImputeSequence(*state->selected, cfg.impute).sequence;
                        }});
    } else if (name == "encode") {
      stages.push_back({name, [state, &selection, &cfg, video] {
                          if (!state->selected) {
                            state->selected = ApplySelection(ReadSequence(video), selection);
                          }
                          const LandmarkSequence& seq =
                              state->imputed ? *state->imputed : *state->selected;
                          state->image = Encode(seq, cfg.spec, selection.name);
                        }});
    } else if (name == "write") {
      stages.push_back({name, [state, png_path] {
                          if (!state->image) throw ValidationError("write stage needs encode first");
                          WritePng(*state->image, png_path);
                        }});
    } else if (auto it = cfg.commands.find(name); it != cfg.commands.end()) {
      const std::string command = it->second;
      stages.push_back({name, [command] {
                          const int status = std::system(command.c_str());
                          if (status != 0) {
                            throw Error("command exited with status " + std::to_string(status));
                          }
                        }});
    } else {
      throw ValidationError("unknown bench stage '" + name + "'");
    }
  }
  BenchReport report = RunStages(stages, runs, clock, true);
  std::error_code ec;
  std::filesystem::remove(png_path, ec);
  return report;
}

SpeedupTable CompareReports(const BenchReport& candidate, const BenchReport& baseline) {
  std::set<std::string> a, b;
  for (const auto& s : candidate.stages) a.insert(s.name);
  for (const auto& s : baseline.stages) b.insert(s.name);
  if (a != b || a.size() != candidate.stages.size() || b.size() != baseline.stages.size()) {
    std::string msg = "stage names differ: candidate {";
    for (const auto& s : candidate.stages) msg += " " + s.name;
    msg += " } vs baseline {";
    for (const auto& s : baseline.stages) msg += " " + s.name;
    throw ValidationError(msg + " }");
  }
  SpeedupTable table;
  for (const StageTiming& c : candidate.stages) {
    const StageTiming* base = baseline.Find(c.name);
    StageSpeedup row{c.name, base->Mean(), c.Mean(), base->Mean() / c.Mean()};
    table.stages.push_back(row);
  }
  table.baseline_total = baseline.TotalMean();
  table.candidate_total = candidate.TotalMean();
  table.end_to_end = table.baseline_total / table.candidate_total;
  return table;
}

json BenchReportToJson(const BenchReport& report) {
  json doc;
  doc["runs"] = report.runs;
  doc["valid"] = report.valid;
  if (!report.error.empty()) doc["error"] = report.error;
  doc["stages"] = json::array();
  for (const StageTiming& s : report.stages) {
    doc["stages"].push_back(
        {{"name", s.name}, {"seconds", s.seconds}, {"mean", s.Mean()}, {"sd", s.Sd()}});
  }
  doc["total_mean"] = report.TotalMean();
  return doc;
}

BenchReport BenchReportFromJson(const json& doc) {
  BenchReport report;
  try {
    report.valid = doc.value("valid", true);
    report.error = doc.value("error", std::string());
    for (const auto& s : doc.at("stages")) {
      StageTiming t{s.at("name").get<std::string>(), s.at("seconds").get<std::vector<double>>()};
      for (double v : t.seconds) {
        if (!(v > 0.0)) throw ValidationError("stage '" + t.name + "' has a non-positive timing");
      }
      report.stages.push_back(std::move(t));
    }
    report.runs = doc.value("runs", report.stages.empty() ? 0 : report.stages.front().seconds.size());
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bench report: ") + e.what());
  }
  return report;
}

json SpeedupToJson(const SpeedupTable& table) {
  json doc;
  doc["stages"] = json::array();
  for (const StageSpeedup& s : table.stages) {
    doc["stages"].push_back({{"name", s.name},
                             {"baseline_mean", s.baseline_mean},
                             {"candidate_mean", s.candidate_mean},
                             {"ratio", s.ratio}});
  }
  doc["baseline_total"] = table.baseline_total;
  doc["candidate_total"] = table.candidate_total;
  doc["end_to_end"] = table.end_to_end;
  return doc;
}

namespace {

std::string Pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

std::string Fixed(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string RenderBenchTable(const BenchReport& report) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"#"};
  for (const auto& s : report.stages) header.push_back(s.name);
  std::size_t max_runs = 0;
  for (const auto& s : report.stages) max_runs = std::max(max_runs, s.seconds.size());
  for (std::size_t r = 0; r < max_runs; ++r) {
    std::vector<std::string> row = {std::to_string(r + 1)};
    for (const auto& s : report.stages) {
      row.push_back(r < s.seconds.size() ? Fixed(s.seconds[r], 3) : "-");
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::string> summary = {"Mean (SD)"};
  for (const auto& s : report.stages) {
    summary.push_back(Fixed(s.Mean(), 3) + " (" + Fixed(s.Sd(), 3) + ")");
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = std::max(header[c].size(), summary[c].size());
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& row) {
    std::string out;
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += (c ? " | " : "") + Pad(row[c], width[c]);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + '\n';
  };
  std::size_t total = 3 * (width.size() - 1);
  for (std::size_t w : width) total += w;
  const std::string rule(total, '-');
  std::string text = line(header) + rule + '\n';
  for (const auto& row : rows) text += line(row);
  text += rule + '\n' + line(summary);
  if (!report.valid) text += "INVALID: " + report.error + '\n';
  return text;
}

std::string RenderSpeedupTable(const SpeedupTable& table) {
  std::string text = "stage | baseline mean (s) | candidate mean (s) | speed-up\n";
  for (const StageSpeedup& s : table.stages) {
    text += s.name + " | " + Fixed(s.baseline_mean, 3) + " | " + Fixed(s.candidate_mean, 3) +
            " | " + Fixed(s.ratio, 2) + "x\n";
  }
  text += "end-to-end | " + Fixed(table.baseline_total, 3) + " | " +
          Fixed(table.candidate_total, 3) + " | " + Fixed(table.end_to_end, 2) + "x\n";
  return text;
}

}  // namespace skelimg
