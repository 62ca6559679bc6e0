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

#include "skelimg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

#include "skelimg/errors.hpp"
#include "skelimg/png_io.hpp"
#include "skelimg/selection.hpp"

namespace skelimg {

using nlohmann::json;

namespace {

Range RangeFromJson(const json& j, Range fallback) {
  if (j.is_null()) return fallback;
  if (j.is_number()) {
    const double v = j.get<double>();
    return {-v, v};
  }
  const auto pair = j.get<std::vector<double>>();
  if (pair.size() != 2) throw SchemaError("range must be [lo, hi] or a symmetric bound");
  return {pair[0], pair[1]};
}

json RangeToJson(Range r) { return json::array({r.lo, r.hi}); }

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

std::string Quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

void RunCommand(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status != 0) {
    throw Error("trainer command failed with status " + std::to_string(status) + ": " + command);
  }
}

}  // namespace

ImputeConfig ImputeConfigFromJson(const json& doc) {
  ImputeConfig cfg;
  cfg.window = doc.value("window", cfg.window);
  cfg.cubic_min_points = doc.value("cubic_min_points", cfg.cubic_min_points);
  cfg.allow_extrapolation = doc.value("allow_extrapolation", cfg.allow_extrapolation);
  cfg.Validate();
  return cfg;
}

AugmentConfig AugmentConfigFromJson(const json& doc) {
  AugmentConfig cfg;
  if (doc.contains("rotation_deg")) cfg.rotation_deg = RangeFromJson(doc["rotation_deg"], cfg.rotation_deg);
  if (doc.contains("zoom")) cfg.zoom = RangeFromJson(doc["zoom"], cfg.zoom);
  if (doc.contains("translation")) cfg.translation = RangeFromJson(doc["translation"], cfg.translation);
  cfg.hflip_prob = doc.value("hflip_prob", cfg.hflip_prob);
  cfg.seed = doc.value("seed", cfg.seed);
  if (doc.contains("pose_mirror_pairs")) {
    cfg.pose_mirror_pairs = doc["pose_mirror_pairs"].get<std::vector<std::pair<int, int>>>();
  }
  cfg.Validate();
  return cfg;
}

json AugmentConfigToJson(const AugmentConfig& cfg) {
  return {{"rotation_deg", RangeToJson(cfg.rotation_deg)},
          {"zoom", RangeToJson(cfg.zoom)},
          {"translation", RangeToJson(cfg.translation)},
          {"hflip_prob", cfg.hflip_prob},
          {"seed", cfg.seed},
          {"pose_mirror_pairs", cfg.pose_mirror_pairs}};
}

ExperimentConfig ExperimentConfigFromJson(const json& doc,
                                          const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  try {
    if (doc.contains("dataset")) cfg.dataset = Resolve(base_dir, doc["dataset"].get<std::string>());
    cfg.strategy = doc.value("strategy", cfg.strategy);
    if (doc.contains("impute")) {
      const json& j = doc["impute"];
      if (j.value("enabled", true)) {
        cfg.impute = ImputeConfigFromJson(j);
      } else {
        cfg.impute.reset();
      }
    }
    if (doc.contains("augment")) cfg.augment = AugmentConfigFromJson(doc["augment"]);
    if (doc.contains("encode")) {
      const std::string pad = doc["encode"].value("pad", std::string("zero_pad"));
      if (pad == "zero_pad") {
        cfg.encode.pad = PadPolicy::kZeroPad;
      } else if (pad == "repeat_last") {
        cfg.encode.pad = PadPolicy::kRepeatLast;
      } else {
        throw SchemaError("encode.pad must be zero_pad or repeat_last");
      }
    }
    if (doc.contains("split_mode")) {
      const std::string mode = doc["split_mode"].get<std::string>();
      if (mode != "both") {
        cfg.split_mode = ParseMode(mode);
        if (!cfg.split_mode) throw SchemaError("unknown split_mode '" + mode + "'");
      }
    }
    if (doc.contains("sd")) {
      const std::string sd = doc["sd"].get<std::string>();
      if (sd == "population") {
        cfg.sd = SdKind::kPopulation;
      } else if (sd == "sample") {
        cfg.sd = SdKind::kSample;
      } else {
        throw SchemaError("sd must be population or sample");
      }
    }
    if (doc.contains("trainer")) {
      const json& t = doc["trainer"];
      cfg.trainer.kind = t.value("endpoint", cfg.trainer.kind);
      cfg.trainer.train_command = t.value("train", std::string());
      cfg.trainer.predict_command = t.value("predict", std::string());
      if (cfg.trainer.kind == "command" &&
          (cfg.trainer.train_command.empty() || cfg.trainer.predict_command.empty())) {
        throw SchemaError("trainer endpoint 'command' needs train and predict commands");
      }
      if (cfg.trainer.kind != "command" && cfg.trainer.kind != "builtin:nearest-centroid") {
        throw SchemaError("unknown trainer endpoint '" + cfg.trainer.kind + "'");
      }
    }
    if (doc.contains("bench")) {
      const json& b = doc["bench"];
      cfg.bench.strategy = b.value("strategy", cfg.strategy);
      if (b.contains("commands")) {
        cfg.bench.commands = b["commands"].get<std::map<std::string, std::string>>();
      }
    } else {
      cfg.bench.strategy = cfg.strategy;
    }
    if (cfg.impute) cfg.bench.impute = *cfg.impute;
    cfg.bench.spec = cfg.encode;
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.workers = doc.value("workers", cfg.workers);
    cfg.max_sessions = doc.value("max_sessions", cfg.max_sessions);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("experiment config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  return ExperimentConfigFromJson(doc, path.parent_path());
}

json ExperimentConfigToJson(const ExperimentConfig& cfg) {
  json doc;
  doc["dataset"] = cfg.dataset.generic_string();
  doc["strategy"] = cfg.strategy;
  if (cfg.impute) {
    doc["impute"] = {{"enabled", true},
                     {"window", cfg.impute->window},
                     {"cubic_min_points", cfg.impute->cubic_min_points},
                     {"allow_extrapolation", cfg.impute->allow_extrapolation}};
  } else {
    doc["impute"] = {{"enabled", false}};
  }
  doc["augment"] = AugmentConfigToJson(cfg.augment);
  doc["encode"] = {{"pad", cfg.encode.pad == PadPolicy::kZeroPad ? "zero_pad" : "repeat_last"}};
  doc["split_mode"] = cfg.split_mode ? std::string(ModeName(*cfg.split_mode)) : "both";
  doc["sd"] = cfg.sd == SdKind::kPopulation ? "population" : "sample";
  doc["trainer"] = {{"endpoint", cfg.trainer.kind},
                    {"train", cfg.trainer.train_command},
                    {"predict", cfg.trainer.predict_command}};
  doc["bench"] = {{"strategy", cfg.bench.strategy}, {"commands", cfg.bench.commands}};
  doc["seed"] = cfg.seed;
  doc["workers"] = cfg.workers;
  doc["max_sessions"] = cfg.max_sessions;
  return doc;
}

std::vector<double> ImageFeatures(const SkeletonImage& image, std::size_t columns_per_half) {
  if (image.width == 0 || image.height == 0 || columns_per_half == 0) {
    throw ValidationError("cannot featurize an empty image");
  }
  const std::size_t groups = image.width / 2;
  std::vector<double> out;
  out.reserve(image.height * 2 * columns_per_half * 3);
  for (std::size_t half = 0; half < 2; ++half) {
    for (std::size_t r = 0; r < image.height; ++r) {
      for (std::size_t j = 0; j < columns_per_half; ++j) {
        const double pos = columns_per_half == 1 || groups == 1
                               ? 0.0
                               : static_cast<double>(j) * static_cast<double>(groups - 1) /
                                     static_cast<double>(columns_per_half - 1);
        const std::size_t c0 = static_cast<std::size_t>(pos);
        const std::size_t c1 = std::min(c0 + 1, groups - 1);
        const double w = pos - static_cast<double>(c0);
        for (std::size_t ch = 0; ch < 3; ++ch) {
          const double a = image.at(r, half * groups + c0, ch);
          const double b = image.at(r, half * groups + c1, ch);
          out.push_back(((1.0 - w) * a + w * b) / 255.0);
        }
      }
    }
  }
  return out;
}

EvaluationReport RunEvaluation(const ExperimentConfig& cfg,
                               const std::filesystem::path& out_dir) {
  const DatasetManifest manifest = LoadDatasetManifest(cfg.dataset);
  const SelectionManifest selection = LoadManifest(cfg.strategy);
  const auto images_dir = out_dir / "images";

  EncodeDatasetOptions options;
  options.impute = cfg.impute;
  options.spec = cfg.encode;
  options.workers = cfg.workers;
  const EncodedIndex index = EncodeDataset(manifest, selection, options, images_dir);

  EvaluationReport report;
  report.strategy = selection.name;
  report.imputed = cfg.impute.has_value();
  report.failures = index.failures;
  report.plan = MakeSplitPlan(manifest);

  std::set<std::string> label_set;
  for (const auto& item : index.items) label_set.insert(item.label);
  const std::vector<std::string> classes(label_set.begin(), label_set.end());

  std::vector<std::vector<double>> features;
  if (cfg.trainer.kind == "builtin:nearest-centroid") {
    for (const auto& item : index.items) {
      features.push_back(ImageFeatures(ReadPng(images_dir / item.image)));
    }
  }

  std::size_t session_count = report.plan.sessions.size();
  if (cfg.max_sessions > 0) session_count = std::min(session_count, cfg.max_sessions);
  std::vector<std::optional<SessionResult>> slots(session_count);
  std::vector<std::string> errors(session_count);

  auto run_session = [&](std::size_t s) {
    const Session& session = report.plan.sessions[s];
    const std::set<std::string> train_signers(session.train.begin(), session.train.end());
    std::vector<std::size_t> test_items;
    std::vector<std::size_t> train_items;
    for (std::size_t i = 0; i < index.items.size(); ++i) {
      const std::string& signer = index.items[i].signer_id;
      if (signer == session.test) test_items.push_back(i);
      if (train_signers.count(signer)) train_items.push_back(i);
    }
    if (test_items.empty()) throw ValidationError("no encoded items for test signer " + session.test);
    if (train_items.empty()) throw ValidationError("no encoded items for training");

    std::vector<std::string> truth, predicted;
    for (std::size_t i : test_items) truth.push_back(index.items[i].label);

    if (cfg.trainer.kind == "builtin:nearest-centroid") {
      std::vector<std::vector<double>> x;
      std::vector<std::string> y;
      for (std::size_t i : train_items) {
        x.push_back(features[i]);
        y.push_back(index.items[i].label);
      }
      NearestCentroidProbe probe;
      probe.Fit(x, y);
      for (std::size_t i : test_items) predicted.push_back(probe.Predict(features[i]));
    } else {
      const auto dir = out_dir / "sessions" / (session.test + "__" + session.val);
      std::filesystem::create_directories(dir);
      const json session_doc = {{"test", session.test},
                                {"val", session.val},
                                {"train", session.train},
                                {"images_dir", std::filesystem::absolute(images_dir).string()}};
      std::ofstream(dir / "session.json") << session_doc.dump(2) << '\n';
      EncodedIndex test_index;
      test_index.strategy = index.strategy;
      for (std::size_t i : test_items) {
        EncodedItem item = index.items[i];
        item.image = std::filesystem::absolute(images_dir / item.image);
        test_index.items.push_back(std::move(item));
      }
      SaveIndex(test_index, dir / "test_index.json");
      RunCommand(cfg.trainer.train_command + " --session " + Quote((dir / "session.json").string()) +
                 " --images " + Quote((images_dir / "index.json").string()) + " --out " +
                 Quote((dir / "ckpt").string()));
      RunCommand(cfg.trainer.predict_command + " --ckpt " + Quote((dir / "ckpt").string()) +
                 " --images " + Quote((dir / "test_index.json").string()) + " --out " +
                 Quote((dir / "preds.json").string()));
      std::ifstream in(dir / "preds.json");
      if (!in) throw IoError("trainer wrote no predictions: " + (dir / "preds.json").string());
      try {
        predicted = json::parse(in).at("labels").get<std::vector<std::string>>();
      } catch (const json::exception& e) {
        throw SchemaError("preds.json: " + std::string(e.what()));
      }
    }
    slots[s] = SessionResult{session, ComputeMetrics(truth, predicted, classes)};
  };

  auto guarded = [&](std::size_t s) {
    try {
      run_session(s);
    } catch (const std::exception& e) {
      errors[s] = e.what();
    }
  };
  const std::size_t workers = static_cast<std::size_t>(std::max(1, cfg.workers));
  if (workers == 1) {
    for (std::size_t s = 0; s < session_count; ++s) guarded(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, session_count); ++w) {
      pool.emplace_back([&] {
        for (std::size_t s = next++; s < session_count; s = next++) guarded(s);
      });
    }
  }
  for (std::size_t s = 0; s < session_count; ++s) {
    if (!errors[s].empty()) {
      const Session& session = report.plan.sessions[s];
      throw Error("session (test=" + session.test + ", val=" + session.val + ") failed: " + errors[s]);
    }
    report.sessions.push_back(std::move(*slots[s]));
  }

  std::vector<AggregationMode> modes;
  if (cfg.split_mode) {
    modes.push_back(*cfg.split_mode);
  } else {
    modes = {AggregationMode::kPerSession, AggregationMode::kPerTestSigner};
  }
  for (AggregationMode mode : modes) {
    report.summaries.push_back(AggregateSessions(report.sessions, mode, cfg.sd));
  }
  return report;
}

json EvaluationToJson(const EvaluationReport& report) {
  json doc;
  doc["strategy"] = report.strategy;
  doc["imputed"] = report.imputed;
  doc["split_plan"] = SplitPlanToJson(report.plan);
  doc["sessions"] = json::array();
  for (const SessionResult& r : report.sessions) {
    doc["sessions"].push_back({{"test", r.session.test},
                               {"val", r.session.val},
                               {"metrics", MetricsToJson(r.metrics)}});
  }
  doc["summaries"] = json::array();
  for (const MetricSummary& s : report.summaries) doc["summaries"].push_back(SummaryToJson(s));
  doc["failures"] = json::array();
  for (const EncodeFailure& f : report.failures) {
    doc["failures"].push_back({{"video_id", f.video_id}, {"error", f.error}});
  }
  return doc;
}

}  // namespace skelimg
