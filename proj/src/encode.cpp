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

#include "skelimg/encode.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include "json.hpp"
#include "skelimg/errors.hpp"
#include "skelimg/png_io.hpp"

namespace skelimg {
namespace {

using nlohmann::json;

std::string SafeFileStem(const std::string& video_id) {
  std::string stem = video_id;
  for (char& c : stem) {
    if (c == '/' || c == '\\' || c == ':') c = '_';
  }
  return stem;
}

json StatsJson(const ImputeStats& s) {
  return {{"filled_cubic", s.filled_cubic},
          {"filled_linear", s.filled_linear},
          {"left_missing", s.left_missing}};
}

ImputeStats StatsFromJson(const json& j) {
  ImputeStats s;
  s.filled_cubic = j.value("filled_cubic", std::size_t{0});
  s.filled_linear = j.value("filled_linear", std::size_t{0});
  s.left_missing = j.value("left_missing", std::size_t{0});
  return s;
}

}  // namespace

std::uint8_t QuantizeCoordinate(double v) {
  const double c = std::clamp(std::isnan(v) ? 0.0 : v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(c * 255.0 + 0.5));
}

std::size_t EncodedWidth(std::size_t frame_count) {
  return 2 * ((frame_count + 2) / 3);
}

SkeletonImage Encode(const LandmarkSequence& seq, const EncodingSpec& spec,
                     const std::string& strategy) {
  const std::size_t rows = seq.landmark_count();
  const std::size_t frames = seq.frame_count();
  if (rows == 0 || frames == 0) {
    throw ValidationError("cannot encode empty sequence '" + seq.video_id +
                          "' (L=" + std::to_string(rows) +
                          ", T=" + std::to_string(frames) + ")");
  }
  SkeletonImage image;
  image.height = rows;
  image.width = EncodedWidth(frames);
  image.video_id = seq.video_id;
  image.strategy = strategy;
  image.frame_count = frames;
  image.landmark_count = rows;
  image.pixels.assign(image.height * image.width * SkeletonImage::kChannels, 0);

  const std::size_t groups = image.width / 2;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t f = 0; f < groups * 3; ++f) {
      std::size_t src = f;
      if (f >= frames) {
        if (spec.pad == PadPolicy::kZeroPad) continue;
        src = frames - 1;
      }
      double x = 0.0;
      double y = 0.0;
      if (seq.present(src, r)) {
        x = seq.x(src, r);
        y = seq.y(src, r);
      }
      const std::size_t col = f / 3;
      const std::size_t ch = f % 3;
      image.pixels[(r * image.width + col) * 3 + ch] = QuantizeCoordinate(x);
      image.pixels[(r * image.width + groups + col) * 3 + ch] = QuantizeCoordinate(y);
    }
  }
  return image;
}

EncodedIndex EncodeDataset(const DatasetManifest& manifest,
                           const SelectionManifest& selection,
                           const EncodeDatasetOptions& options,
                           const std::filesystem::path& out_dir) {
  if (options.impute) options.impute->Validate();
  if (options.augment) options.augment->Validate();
  std::filesystem::create_directories(out_dir);

  struct Outcome {
    std::vector<EncodedItem> items;
    std::vector<EncodeFailure> failures;
  };
  std::vector<Outcome> outcomes(manifest.entries.size());

  auto process = [&](std::size_t i) {
    const DatasetEntry& entry = manifest.entries[i];
    Outcome& outcome = outcomes[i];
    try {
      for (const LandmarkSequence& raw : LoadEntry(manifest, entry, options.read)) {
        try {
          LandmarkSequence seq = ApplySelection(raw, selection);
          ImputeStats stats;
          if (options.impute) {
            ImputeResult imputed = ImputeSequence(seq, *options.impute);
            seq = std::move(imputed.sequence);
            stats = imputed.stats;
          }
          if (options.augment) {
            seq = Augment(seq, *options.augment, SampleKeyFor(seq.video_id), options.epoch);
          }
          const SkeletonImage image = Encode(seq, options.spec, selection.name);
          const std::filesystem::path file = SafeFileStem(seq.video_id) + ".png";
          WritePng(image, out_dir / file);
          outcome.items.push_back({seq.video_id, seq.label, seq.signer_id,
                                   selection.name, file, seq.frame_count(), stats});
        } catch (const std::exception& e) {
          outcome.failures.push_back({raw.video_id, e.what()});
        }
      }
    } catch (const std::exception& e) {
      outcome.failures.push_back({entry.video_id, e.what()});
    }
  };

  const std::size_t workers = static_cast<std::size_t>(std::max(1, options.workers));
  if (workers == 1 || manifest.entries.size() < 2) {
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, manifest.entries.size()); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < manifest.entries.size(); i = next++) process(i);
      });
    }
  }

  EncodedIndex index;
  index.strategy = selection.name;
  for (Outcome& o : outcomes) {
    for (EncodedItem& item : o.items) {
      index.impute_totals += item.impute_stats;
      index.items.push_back(std::move(item));
    }
    for (EncodeFailure& f : o.failures) index.failures.push_back(std::move(f));
  }
  SaveIndex(index, out_dir / "index.json");
  return index;
}

void SaveIndex(const EncodedIndex& index, const std::filesystem::path& path) {
  json doc;
  doc["strategy"] = index.strategy;
  doc["items"] = json::array();
  for (const EncodedItem& item : index.items) {
    doc["items"].push_back({{"image", item.image.generic_string()},
                            {"label", item.label},
                            {"signer_id", item.signer_id},
                            {"video_id", item.video_id},
                            {"strategy", item.strategy},
                            {"frame_count", item.frame_count},
                            {"impute", StatsJson(item.impute_stats)}});
  }
  doc["failures"] = json::array();
  for (const EncodeFailure& f : index.failures) {
    doc["failures"].push_back({{"video_id", f.video_id}, {"error", f.error}});
  }
  doc["impute_stats"] = StatsJson(index.impute_totals);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

EncodedIndex LoadIndex(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  EncodedIndex index;
  try {
    const json doc = json::parse(in);
    index.strategy = doc.value("strategy", std::string());
    for (const auto& j : doc.at("items")) {
      EncodedItem item;
      item.image = j.at("image").get<std::string>();
      item.label = j.at("label").get<std::string>();
      item.signer_id = j.at("signer_id").get<std::string>();
      item.video_id = j.at("video_id").get<std::string>();
      item.strategy = j.value("strategy", index.strategy);
      item.frame_count = j.value("frame_count", std::size_t{0});
      if (j.contains("impute")) item.impute_stats = StatsFromJson(j.at("impute"));
      index.items.push_back(std::move(item));
    }
    if (doc.contains("failures")) {
      for (const auto& j : doc.at("failures")) {
        index.failures.push_back({j.at("video_id").get<std::string>(),
                                  j.at("error").get<std::string>()});
      }
    }
    if (doc.contains("impute_stats")) index.impute_totals = StatsFromJson(doc.at("impute_stats"));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  return index;
}

}  // namespace skelimg
