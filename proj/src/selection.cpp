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

#include "skelimg/selection.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "skelimg/errors.hpp"

namespace skelimg {
namespace internal {
std::string_view BuiltinManifestJson(std::string_view key);
}  // namespace internal

namespace {

using nlohmann::json;

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::size_t SelectionManifest::CountPart(BodyPart part) const {
  return static_cast<std::size_t>(std::count_if(
      ids.begin(), ids.end(), [part](const LandmarkId& id) { return id.part == part; }));
}

const std::vector<std::string>& BuiltinStrategies() {
  static const std::vector<std::string> keys = {"all", "laines", "arcanjo",
                                                "asl-1st", "asl-2nd"};
  return keys;
}

SelectionManifest ParseManifest(std::string_view json_text) {
  SelectionManifest m;
  try {
    const json doc = json::parse(json_text);
    m.name = doc.at("name").get<std::string>();
    m.expected_count = doc.at("expected_count").get<std::size_t>();
    m.version = doc.value("version", 1);
    m.status = doc.value("status", std::string());
    m.source = doc.value("source", std::string());
    for (const auto& entry : doc.at("ids")) {
      const std::string part_name = entry.at("part").get<std::string>();
      const auto part = ParsePart(part_name);
      if (!part) {
        throw ValidationError("manifest '" + m.name + "': unknown part '" +
                              part_name + "'");
      }
      LandmarkId id{*part, entry.at("index").get<int>()};
      if (!id.IsValid()) {
        throw ValidationError("manifest '" + m.name + "': index " +
                              std::to_string(id.index) + " out of range for " +
                              part_name);
      }
      m.ids.push_back(id);
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("manifest JSON: ") + e.what());
  }
  std::set<LandmarkId> seen;
  for (const LandmarkId& id : m.ids) {
    if (!seen.insert(id).second) {
      throw ValidationError("manifest '" + m.name + "': duplicate id " + ColumnStem(id));
    }
  }
  if (m.ids.size() != m.expected_count) {
    throw ValidationError("manifest '" + m.name + "': " + std::to_string(m.ids.size()) +
                          " ids but expected_count is " +
                          std::to_string(m.expected_count));
  }
  return m;
}

SelectionManifest LoadManifest(std::string_view name_or_path) {
  const std::string key = Lower(name_or_path);
  const std::string_view builtin = internal::BuiltinManifestJson(key);
  if (!builtin.empty()) return ParseManifest(builtin);

  std::ifstream in{std::string(name_or_path)};
  if (!in) {
    std::string known;
    for (const auto& k : BuiltinStrategies()) known += (known.empty() ? "" : ", ") + k;
    throw ValidationError("unknown strategy '" + std::string(name_or_path) +
                          "' (built-ins: " + known + "; or a manifest path)");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return ParseManifest(text.str());
}

std::string ManifestToJson(const SelectionManifest& manifest) {
  json doc;
  doc["name"] = manifest.name;
  doc["version"] = manifest.version;
  if (!manifest.status.empty()) doc["status"] = manifest.status;
  if (!manifest.source.empty()) doc["source"] = manifest.source;
  doc["expected_count"] = manifest.expected_count;
  doc["ids"] = json::array();
  for (const LandmarkId& id : manifest.ids) {
    doc["ids"].push_back({{"part", PartName(id.part)}, {"index", id.index}});
  }
  return doc.dump(2);
}

LandmarkSequence ApplySelection(const LandmarkSequence& seq,
                                const SelectionManifest& manifest) {
  std::vector<std::size_t> source;
  source.reserve(manifest.ids.size());
  for (const LandmarkId& id : manifest.ids) {
    const auto pos = seq.Find(id);
    if (!pos) {
      throw ValidationError("manifest '" + manifest.name + "' references " +
                            ColumnStem(id) + ", absent from sequence " + seq.video_id);
    }
    source.push_back(*pos);
  }
  LandmarkSequence out(manifest.ids, seq.frame_count());
  out.video_id = seq.video_id;
  out.signer_id = seq.signer_id;
  out.label = seq.label;
  for (std::size_t t = 0; t < seq.frame_count(); ++t) {
    for (std::size_t l = 0; l < source.size(); ++l) {
      if (auto p = seq.at(t, source[l])) out.Set(t, l, *p);
    }
  }
  return out;
}

}  // namespace skelimg
