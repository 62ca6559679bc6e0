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

#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "skelimg/bench.hpp"
#include "skelimg/encode.hpp"
#include "skelimg/errors.hpp"
#include "skelimg/eval.hpp"
#include "skelimg/experiment.hpp"
#include "skelimg/impute.hpp"
#include "skelimg/selection.hpp"
#include "skelimg/sequence_io.hpp"

namespace skelimg::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalFlags {
  std::string config;
  std::uint64_t seed = 0;
  int workers = 1;
  bool verbose = false;
};

class Logger {
 public:
  Logger(std::ostream& err, bool verbose) : err_(err), verbose_(verbose) {}

  void Info(const std::string& msg) const {
    if (verbose_) err_ << "level=info msg=" << std::quoted(msg) << '\n';
  }
  void Warn(const std::string& msg) const {
    err_ << "level=warn msg=" << std::quoted(msg) << '\n';
  }

 private:
  std::ostream& err_;
  bool verbose_;
};

std::string Sha256Hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteJson(const json& doc, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

void WriteText(const std::string& text, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

// Reproducibility stamp; deliberately free of timestamps so reruns compare
// equal.
void WriteStamp(const fs::path& path, const std::string& subcommand,
                const std::vector<std::string>& args, const GlobalFlags& g) {
  std::string material = g.config.empty() ? std::string() : ReadFile(g.config);
  for (const auto& a : args) material += '\0' + a;
  json stamp = {{"tool", "skelimg"},
                {"version", SKELIMG_VERSION},
                {"subcommand", subcommand},
                {"argv", args},
                {"seed", g.seed},
                {"config_hash", Sha256Hex(material)}};
  WriteJson(stamp, path);
}

// Input of a file-to-file stage: a dataset manifest (.json), a directory of
// CSVs, or a single CSV.
DatasetManifest CollectInputs(const fs::path& in) {
  if (in.extension() == ".json") return LoadDatasetManifest(in);
  DatasetManifest manifest;
  std::vector<fs::path> files;
  if (fs::is_directory(in)) {
    for (const auto& e : fs::directory_iterator(in)) {
      if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  } else if (fs::exists(in)) {
    files.push_back(in);
  } else {
    throw IoError("input not found: " + in.string());
  }
  for (const auto& f : files) manifest.entries.push_back({f.stem().string(), "", "", f});
  return manifest;
}

template <typename Transform>
int MapSequences(const fs::path& in, const fs::path& out_dir, const ReadOptions& read,
                 const Logger& log, Transform&& transform) {
  const DatasetManifest input = CollectInputs(in);
  fs::create_directories(out_dir);
  DatasetManifest output;
  for (const DatasetEntry& entry : input.entries) {
    for (LandmarkSequence& seq : LoadEntry(input, entry, read)) {
      LandmarkSequence result = transform(seq);
      const fs::path path = out_dir / (result.video_id + ".csv");
      WriteSequence(result, path);
      output.entries.push_back({result.video_id, result.signer_id, result.label, path});
      log.Info("wrote " + path.string());
    }
  }
  SaveDatasetManifest(output, out_dir / "manifest.json");
  return static_cast<int>(output.entries.size());
}

ImputeConfig ImputeFromFlags(int window, int cubic_min, bool extrapolate) {
  ImputeConfig cfg;
  cfg.window = window;
  cfg.cubic_min_points = cubic_min;
  cfg.allow_extrapolation = extrapolate;
  cfg.Validate();
  return cfg;
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json LoadJsonFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"skelimg: landmark sequences to skeleton images", "skelimg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SKELIMG_VERSION);

  GlobalFlags g;
  app.add_option("--config", g.config, "Experiment config JSON")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", g.verbose, "Structured progress logs on stderr");
  app.fallthrough();

  // ingest
  std::string ingest_in, ingest_out;
  double clamp_tol = 0.5;
  bool reject_range = false;
  auto* ingest = app.add_subcommand("ingest", "Validate raw landmark CSVs and write canonical ones");
  ingest->add_option("--in", ingest_in, "CSV file, directory of CSVs, or dataset manifest")->required();
  ingest->add_option("--out", ingest_out, "Output directory")->required();
  ingest->add_option("--clamp-tolerance", clamp_tol, "Accepted distance outside [0,1]");
  ingest->add_flag("--reject-out-of-range", reject_range, "Reject instead of clamping");

  // select
  std::string sel_in, sel_out, sel_strategy;
  auto* select = app.add_subcommand("select", "Project sequences onto a landmark subset");
  select->add_option("--in", sel_in, "CSV file, directory of CSVs, or dataset manifest")->required();
  select->add_option("--out", sel_out, "Output directory")->required();
  select->add_option("--strategy", sel_strategy, "Built-in strategy or manifest path")->required();

  // impute
  std::string imp_in, imp_out;
  int window = 5, cubic_min = 4;
  bool extrapolate = false;
  auto* impute = app.add_subcommand("impute", "Fill detection gaps by piecewise spline interpolation");
  impute->add_option("--in", imp_in, "CSV file, directory of CSVs, or dataset manifest")->required();
  impute->add_option("--out", imp_out, "Output directory")->required();
  impute->add_option("--window", window, "Frames considered on each side of a gap");
  impute->add_option("--cubic-min-points", cubic_min, "Observed points needed for a cubic fill");
  impute->add_flag("--allow-extrapolation", extrapolate, "Hold edge values over leading/trailing gaps");

  // encode
  std::string enc_in, enc_out, enc_strategy, pad = "zero_pad";
  bool no_impute = false;
  int augment_epoch = -1;
  auto* encode = app.add_subcommand("encode", "Encode sequences as skeleton PNG images");
  encode->add_option("--in", enc_in, "CSV file, directory of CSVs, or dataset manifest")->required();
  encode->add_option("--out", enc_out, "Output directory")->required();
  encode->add_option("--strategy", enc_strategy, "Built-in strategy or manifest path")->required();
  encode->add_option("--pad", pad, "Frame padding policy")->check(CLI::IsMember({"zero_pad", "repeat_last"}));
  encode->add_flag("--no-impute", no_impute, "Encode the raw stream");
  encode->add_option("--augment-epoch", augment_epoch,
                     "Apply augmentation from the config for this epoch")->check(CLI::NonNegativeNumber);
  encode->add_option("--window", window, "Imputation window");
  encode->add_option("--cubic-min-points", cubic_min, "Observed points needed for a cubic fill");

  // split
  std::string split_manifest, split_out = "split_plan.json";
  auto* split = app.add_subcommand("split", "Generate the nested leave-one-person-out plan");
  split->add_option("--manifest", split_manifest, "Dataset manifest")->required()->check(CLI::ExistingFile);
  split->add_option("--out", split_out, "Plan JSON path");

  // evaluate
  std::string eval_out, eval_strategy;
  bool with_raw = false;
  std::string dataset_name = "dataset";
  auto* evaluate = app.add_subcommand("evaluate", "Run every LOPO session and aggregate metrics");
  evaluate->add_option("--out", eval_out, "Output directory")->required();
  evaluate->add_option("--strategy", eval_strategy, "Override the configured strategy");
  evaluate->add_flag("--with-raw", with_raw, "Also evaluate the raw stream and report the F1 gain");
  evaluate->add_option("--dataset-name", dataset_name, "Dataset column of the results table");

  // bench
  int runs = 5;
  std::string video, stages = "ingest,select,impute,encode", baseline_report, bench_out = ".";
  auto* bench = app.add_subcommand("bench", "Time pipeline stages over repeated runs");
  bench->add_option("--runs", runs, "Recorded runs (one extra warm-up run is discarded)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--video", video, "Landmark sequence CSV")->required()->check(CLI::ExistingFile);
  bench->add_option("--stages", stages, "Comma-separated stage names");
  bench->add_option("--baseline-report", baseline_report, "Bench report JSON to compare against")
      ->check(CLI::ExistingFile);
  bench->add_option("--out", bench_out, "Output directory");

  // report
  std::vector<std::string> report_in;
  std::string report_baseline, report_out;
  auto* report = app.add_subcommand("report", "Render report JSON files as text tables");
  report->add_option("--in", report_in, "Evaluation or bench report JSON")->required()->check(CLI::ExistingFile);
  report->add_option("--baseline-report", report_baseline, "Baseline bench report")->check(CLI::ExistingFile);
  report->add_option("--out", report_out, "Write the table to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const Logger log(err, g.verbose);
  try {
    std::optional<ExperimentConfig> config;
    if (!g.config.empty()) config = LoadExperimentConfig(g.config);
    if (config && app.get_option("--seed")->count() == 0) g.seed = config->seed;

    if (*ingest) {
      ReadOptions read;
      read.clamp_tolerance = clamp_tol;
      read.out_of_range = reject_range ? OutOfRangePolicy::kReject : OutOfRangePolicy::kClamp;
      const int n = MapSequences(ingest_in, ingest_out, read, log,
                                 [](LandmarkSequence& s) { return std::move(s); });
      WriteStamp(fs::path(ingest_out) / "stamp.json", "ingest", args, g);
      out << "ingested " << n << " sequences into " << ingest_out << '\n';
    } else if (*select) {
      const SelectionManifest m = LoadManifest(sel_strategy);
      ReadOptions read;
      read.require_canonical = false;
      const int n = MapSequences(sel_in, sel_out, read, log,
                                 [&](LandmarkSequence& s) { return ApplySelection(s, m); });
      WriteStamp(fs::path(sel_out) / "stamp.json", "select", args, g);
      out << "selected " << m.name << " (" << m.ids.size() << " landmarks) for " << n
          << " sequences\n";
    } else if (*impute) {
      ImputeConfig cfg = config && config->impute ? *config->impute : ImputeConfig{};
      if (impute->get_option("--window")->count()) cfg.window = window;
      if (impute->get_option("--cubic-min-points")->count()) cfg.cubic_min_points = cubic_min;
      if (extrapolate) cfg.allow_extrapolation = true;
      cfg = ImputeFromFlags(cfg.window, cfg.cubic_min_points, cfg.allow_extrapolation);
      ReadOptions read;
      read.require_canonical = false;
      json per_video = json::object();
      ImputeStats totals;
      const int n = MapSequences(imp_in, imp_out, read, log, [&](LandmarkSequence& s) {
        ImputeResult r = ImputeSequence(s, cfg);
        per_video[s.video_id] = json::parse(r.stats.ToJson());
        totals += r.stats;
        return std::move(r.sequence);
      });
      json stats = json::parse(totals.ToJson());
      stats["videos"] = per_video;
      WriteJson(stats, fs::path(imp_out) / "impute_stats.json");
      WriteStamp(fs::path(imp_out) / "stamp.json", "impute", args, g);
      out << "imputed " << n << " sequences: " << totals.ToJson() << '\n';
    } else if (*encode) {
      EncodeDatasetOptions options;
      if (no_impute) {
        options.impute.reset();
      } else {
        ImputeConfig cfg = config && config->impute ? *config->impute : ImputeConfig{};
        if (encode->get_option("--window")->count()) cfg.window = window;
        if (encode->get_option("--cubic-min-points")->count()) cfg.cubic_min_points = cubic_min;
        options.impute = cfg;
      }
      options.spec.pad = pad == "repeat_last" ? PadPolicy::kRepeatLast : PadPolicy::kZeroPad;
      if (augment_epoch >= 0) {
        AugmentConfig aug = config ? config->augment : AugmentConfig{};
        if (app.get_option("--seed")->count()) aug.seed = g.seed;
        options.augment = aug;
        options.epoch = static_cast<std::uint64_t>(augment_epoch);
      }
      options.read.require_canonical = false;
      options.workers = g.workers;
      const SelectionManifest m = LoadManifest(enc_strategy);
      const EncodedIndex index = EncodeDataset(CollectInputs(enc_in), m, options, enc_out);
      WriteStamp(fs::path(enc_out) / "stamp.json", "encode", args, g);
      out << "encoded " << index.items.size() << " images (" << m.name << ", height "
          << m.ids.size() << ") into " << enc_out << '\n';
      for (const auto& f : index.failures) log.Warn("failed " + f.video_id + ": " + f.error);
      if (!index.failures.empty()) {
        err << "error: " << index.failures.size() << " sequences failed; see index.json\n";
        return kExitFailure;
      }
    } else if (*split) {
      const SplitPlan plan = MakeSplitPlan(LoadDatasetManifest(split_manifest));
      WriteJson(SplitPlanToJson(plan), split_out);
      WriteStamp(fs::path(split_out).replace_extension(".stamp.json"), "split", args, g);
      out << plan.signers.size() << " signers -> " << plan.sessions.size() << " sessions ("
          << split_out << ")\n";
    } else if (*evaluate) {
      if (!config) {
        err << "error: evaluate requires --config\n";
        return kExitUsage;
      }
      ExperimentConfig cfg = *config;
      if (!eval_strategy.empty()) cfg.strategy = eval_strategy;
      if (app.get_option("--workers")->count()) cfg.workers = g.workers;
      const fs::path out_dir = eval_out;
      EvaluationReport result = RunEvaluation(cfg, out_dir / (cfg.impute ? "imputed" : "raw"));
      json doc = EvaluationToJson(result);
      std::vector<ResultRow> rows;
      std::optional<EvaluationReport> raw;
      if (with_raw && cfg.impute) {
        ExperimentConfig raw_cfg = cfg;
        raw_cfg.impute.reset();
        raw = RunEvaluation(raw_cfg, out_dir / "raw");
        doc["raw"] = EvaluationToJson(*raw);
      }
      for (std::size_t i = 0; i < result.summaries.size(); ++i) {
        ResultRow row{dataset_name,
                      result.strategy + " [" + std::string(ModeName(result.summaries[i].mode)) + "]",
                      result.summaries[i],
                      std::nullopt};
        if (raw) row.f1_improvement_pp = F1ImprovementPp(result.summaries[i], raw->summaries[i]);
        rows.push_back(row);
      }
      doc["dataset_name"] = dataset_name;
      doc["table"] = json::array();
      for (const ResultRow& r : rows) {
        json j = {{"dataset", r.dataset}, {"subset", r.subset}, {"summary", SummaryToJson(r.summary)}};
        if (r.f1_improvement_pp) j["f1_improvement_pp"] = *r.f1_improvement_pp;
        doc["table"].push_back(j);
      }
      WriteJson(doc, out_dir / "report.json");
      const std::string table = RenderResultsTable(rows);
      WriteText(table, out_dir / "report.txt");
      WriteStamp(out_dir / "stamp.json", "evaluate", args, g);
      out << table;
    } else if (*bench) {
      BenchConfig cfg = config ? config->bench : BenchConfig{};
      const BenchReport result = RunBench(cfg, video, runs, SplitList(stages));
      const fs::path out_dir = bench_out;
      WriteJson(BenchReportToJson(result), out_dir / "bench_report.json");
      std::string text = RenderBenchTable(result);
      if (!baseline_report.empty() && result.valid) {
        const SpeedupTable speedup =
            CompareReports(result, BenchReportFromJson(LoadJsonFile(baseline_report)));
        WriteJson(SpeedupToJson(speedup), out_dir / "speedup.json");
        text += '\n' + RenderSpeedupTable(speedup);
      }
      WriteText(text, out_dir / "bench.txt");
      WriteStamp(out_dir / "stamp.json", "bench", args, g);
      out << text;
      if (!result.valid) {
        err << "error: " << result.error << '\n';
        return kExitFailure;
      }
    } else if (*report) {
      std::string text;
      std::vector<ResultRow> rows;
      for (const std::string& path : report_in) {
        const json doc = LoadJsonFile(path);
        if (doc.contains("stages")) {
          const BenchReport b = BenchReportFromJson(doc);
          text += RenderBenchTable(b);
          if (!report_baseline.empty()) {
            text += '\n' + RenderSpeedupTable(
                               CompareReports(b, BenchReportFromJson(LoadJsonFile(report_baseline))));
          }
        } else if (doc.contains("table")) {
          for (const auto& r : doc.at("table")) {
            ResultRow row{r.at("dataset").get<std::string>(), r.at("subset").get<std::string>(),
                          SummaryFromJson(r.at("summary")), std::nullopt};
            if (r.contains("f1_improvement_pp")) row.f1_improvement_pp = r["f1_improvement_pp"].get<double>();
            rows.push_back(row);
          }
        } else {
          throw SchemaError(path + ": neither a bench nor an evaluation report");
        }
      }
      if (!rows.empty()) text += RenderResultsTable(rows);
      if (!report_out.empty()) {
        WriteText(text, report_out);
        WriteStamp(fs::path(report_out).replace_extension(".stamp.json"), "report", args, g);
      }
      out << text;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace skelimg::cli
