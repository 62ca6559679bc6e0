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

#include "skelimg/sequence_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "skelimg/errors.hpp"

namespace skelimg {
namespace {

using nlohmann::json;

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(begin));
      break;
    }
    cells.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
  return cells;
}

std::optional<LandmarkId> ParseStem(std::string_view stem) {
  const std::size_t us = stem.rfind('_');
  if (us == std::string_view::npos) return std::nullopt;
  auto part = ParsePart(stem.substr(0, us));
  if (!part) return std::nullopt;
  const std::string_view digits = stem.substr(us + 1);
  int index = -1;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
  if (ec != std::errc() || p != digits.data() + digits.size()) return std::nullopt;
  LandmarkId id{*part, index};
  if (!id.IsValid()) return std::nullopt;
  return id;
}

std::vector<LandmarkId> ParseHeader(std::string_view line, bool require_canonical) {
  const auto cells = SplitCells(line);
  if (cells.empty() || cells[0] != "frame") {
    throw SchemaError("column 0: expected 'frame', got '" +
                      std::string(cells.empty() ? "" : cells[0]) + "'");
  }
  const auto& canonical = CanonicalLayout();
  std::vector<LandmarkId> layout;
  for (std::size_t c = 1; c < cells.size(); ++c) {
    const std::size_t landmark = (c - 1) / 2;
    const bool is_x = (c - 1) % 2 == 0;
    const std::string_view cell = cells[c];
    const std::string_view suffix = is_x ? "_x" : "_y";
    std::optional<LandmarkId> id;
    if (cell.size() > 2 && cell.substr(cell.size() - 2) == suffix) {
      id = ParseStem(cell.substr(0, cell.size() - 2));
    }
    if (require_canonical) {
      if (landmark >= canonical.size() || !id || *id != canonical[landmark]) {
        std::string expected =
            landmark < canonical.size()
                ? "'" + ColumnStem(canonical[landmark]) + std::string(suffix) + "'"
                : "end of header";
        throw SchemaError("column " + std::to_string(c) + ": expected " +
                          expected + ", got '" + std::string(cell) + "'");
      }
    } else if (!id || (!is_x && *id != layout.back())) {
      throw SchemaError("column " + std::to_string(c) + ": bad landmark column '" +
                        std::string(cell) + "'");
    }
    if (is_x) layout.push_back(*id);
  }
  if ((cells.size() - 1) % 2 != 0) {
    throw SchemaError("column " + std::to_string(cells.size()) +
                      ": missing y column for " + ColumnStem(layout.back()));
  }
  if (require_canonical && layout.size() != canonical.size()) {
    throw SchemaError("column " + std::to_string(cells.size()) + ": expected '" +
                      ColumnStem(canonical[layout.size()]) + "_x', got end of header");
  }
  return layout;
}

bool IsMissingCell(std::string_view cell) {
  return cell.empty() || cell == "nan" || cell == "NaN" || cell == "NAN";
}

double ParseCoordinate(std::string_view cell, std::size_t row, std::size_t column,
                       const ReadOptions& options) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || p != cell.data() + cell.size()) {
    throw SchemaError("row " + std::to_string(row) + ", column " +
                      std::to_string(column) + ": not a number '" +
                      std::string(cell) + "'");
  }
  const double lo = -options.clamp_tolerance;
  const double hi = 1.0 + options.clamp_tolerance;
  const bool in_unit = v >= 0.0 && v <= 1.0;
  if (!in_unit) {
    if (!(v >= lo && v <= hi) || options.out_of_range == OutOfRangePolicy::kReject) {
      throw RangeError("row " + std::to_string(row) + ", column " +
                       std::to_string(column) + ": coordinate " +
                       std::string(cell) + " outside accepted range");
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  return v;
}

std::string_view StripCr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

LandmarkSequence ParseSequence(std::istream& in, const ReadOptions& options) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty file: no header");
  const auto layout = ParseHeader(StripCr(line), options.require_canonical);
  const std::size_t columns = 1 + 2 * layout.size();

  struct Row {
    std::vector<std::optional<Point2>> points;
  };
  std::vector<Row> rows;
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    const std::string_view view = StripCr(line);
    if (view.empty()) continue;
    const auto cells = SplitCells(view);
    if (cells.size() != columns) {
      throw SchemaError("row " + std::to_string(row_no) + ": expected " +
                        std::to_string(columns) + " cells, got " +
                        std::to_string(cells.size()));
    }
    long long frame = -1;
    auto [p, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), frame);
    if (ec != std::errc() || p != cells[0].data() + cells[0].size()) {
      throw SchemaError("row " + std::to_string(row_no) + ", column 0: bad frame '" +
                        std::string(cells[0]) + "'");
    }
    if (frame < static_cast<long long>(row_no)) {
      throw OrderingError("row " + std::to_string(row_no) + ": frame " +
                          std::to_string(frame) + " is not increasing");
    }
    if (frame != static_cast<long long>(row_no)) {
      throw OrderingError("row " + std::to_string(row_no) + ": frame " +
                          std::to_string(frame) + " skips frame " +
                          std::to_string(row_no));
    }
    Row row;
    row.points.reserve(layout.size());
    for (std::size_t l = 0; l < layout.size(); ++l) {
      const std::string_view cx = cells[1 + 2 * l];
      const std::string_view cy = cells[2 + 2 * l];
      const bool mx = IsMissingCell(cx);
      const bool my = IsMissingCell(cy);
      if (mx != my) {
        throw SchemaError("row " + std::to_string(row_no) + ": " +
                          ColumnStem(layout[l]) + " has only one coordinate");
      }
      if (mx) {
        row.points.emplace_back();
      } else {
        row.points.push_back(Point2{ParseCoordinate(cx, row_no, 1 + 2 * l, options),
                                    ParseCoordinate(cy, row_no, 2 + 2 * l, options)});
      }
    }
    rows.push_back(std::move(row));
    ++row_no;
  }

  LandmarkSequence seq(layout, rows.size());
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (std::size_t l = 0; l < layout.size(); ++l) {
      if (rows[t].points[l]) seq.Set(t, l, *rows[t].points[l]);
    }
  }
  return seq;
}

LandmarkSequence ReadSequence(const std::filesystem::path& path,
                              const ReadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    LandmarkSequence seq = ParseSequence(in, options);
    seq.video_id = path.stem().string();
    return seq;
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  } catch (const OrderingError& e) {
    throw OrderingError(path.string() + ": " + e.what());
  } catch (const RangeError& e) {
    throw RangeError(path.string() + ": " + e.what());
  }
}

std::string CsvHeader(std::span<const LandmarkId> layout) {
  std::string header = "frame";
  for (const LandmarkId& id : layout) {
    const std::string stem = ColumnStem(id);
    header += ',';
    header += stem;
    header += "_x,";
    header += stem;
    header += "_y";
  }
  return header;
}

void FormatSequence(const LandmarkSequence& seq, std::ostream& out) {
  out << CsvHeader(seq.layout()) << '\n';
  std::string row;
  char buf[32];
  for (std::size_t t = 0; t < seq.frame_count(); ++t) {
    row = std::to_string(t);
    for (std::size_t l = 0; l < seq.landmark_count(); ++l) {
      if (!seq.present(t, l)) {
        row += ",,";
        continue;
      }
      std::snprintf(buf, sizeof(buf), ",%.6f", seq.x(t, l));
      row += buf;
      std::snprintf(buf, sizeof(buf), ",%.6f", seq.y(t, l));
      row += buf;
    }
    row += '\n';
    out << row;
  }
}

std::string FormatSequence(const LandmarkSequence& seq) {
  std::ostringstream out;
  FormatSequence(seq, out);
  return out.str();
}

void WriteSequence(const LandmarkSequence& seq, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  FormatSequence(seq, out);
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<LandmarkSequence> CutRepetitions(const LandmarkSequence& seq,
                                             std::span<const CutRange> cuts) {
  std::vector<CutRange> sorted(cuts.begin(), cuts.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const CutRange& a, const CutRange& b) { return a.start < b.start; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const CutRange& c = sorted[i];
    if (c.start >= c.end || c.end > seq.frame_count()) {
      throw ValidationError("cut [" + std::to_string(c.start) + ", " +
                            std::to_string(c.end) + ") invalid for " +
                            std::to_string(seq.frame_count()) + " frames in " +
                            seq.video_id);
    }
    if (i > 0 && c.start < sorted[i - 1].end) {
      throw ValidationError("cut [" + std::to_string(c.start) + ", " +
                            std::to_string(c.end) + ") overlaps [" +
                            std::to_string(sorted[i - 1].start) + ", " +
                            std::to_string(sorted[i - 1].end) + ") in " +
                            seq.video_id);
    }
  }
  std::vector<LandmarkSequence> out;
  out.reserve(cuts.size());
  for (const CutRange& c : cuts) {
    LandmarkSequence part = seq.Slice(c.start, c.end);
    part.video_id = seq.video_id + "_r" + std::to_string(c.repetition);
    out.push_back(std::move(part));
  }
  return out;
}

std::vector<CutRange> DatasetManifest::CutsFor(const std::string& video_id) const {
  std::vector<CutRange> cuts;
  for (const CutPoint& cp : cut_points) {
    if (cp.video_id == video_id) {
      cuts.push_back({cp.start_frame, cp.end_frame, cp.repetition_index});
    }
  }
  return cuts;
}

std::vector<std::string> DatasetManifest::Signers() const {
  std::set<std::string> signers;
  for (const auto& e : entries) signers.insert(e.signer_id);
  return {signers.begin(), signers.end()};
}

DatasetManifest LoadDatasetManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  const auto base = path.parent_path();
  DatasetManifest manifest;
  std::set<std::string> ids;
  try {
    for (const auto& e : doc.at("entries")) {
      DatasetEntry entry;
      entry.video_id = e.at("video_id").get<std::string>();
      entry.signer_id = e.at("signer_id").get<std::string>();
      entry.label = e.at("label").get<std::string>();
      std::filesystem::path p = e.at("path").get<std::string>();
      entry.path = p.is_absolute() ? p : base / p;
      if (!ids.insert(entry.video_id).second) {
        throw ValidationError(path.string() + ": duplicate video_id '" +
                              entry.video_id + "'");
      }
      if (!std::filesystem::exists(entry.path)) {
        throw IoError(path.string() + ": missing sequence file " +
                      entry.path.string());
      }
      manifest.entries.push_back(std::move(entry));
    }
    if (doc.contains("cut_points")) {
      for (const auto& c : doc.at("cut_points")) {
        CutPoint cp;
        cp.video_id = c.at("video_id").get<std::string>();
        cp.start_frame = c.at("start_frame").get<std::size_t>();
        cp.end_frame = c.at("end_frame").get<std::size_t>();
        cp.repetition_index = c.at("repetition_index").get<int>();
        if (!ids.count(cp.video_id)) {
          throw ValidationError(path.string() + ": cut point for unknown video '" +
                                cp.video_id + "'");
        }
        if (cp.start_frame >= cp.end_frame) {
          throw ValidationError(path.string() + ": empty cut range for '" +
                                cp.video_id + "'");
        }
        manifest.cut_points.push_back(std::move(cp));
      }
    }
  } catch (const json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  return manifest;
}

void SaveDatasetManifest(const DatasetManifest& manifest,
                         const std::filesystem::path& path) {
  json doc;
  doc["entries"] = json::array();
  const auto base = path.parent_path();
  for (const auto& e : manifest.entries) {
    std::error_code ec;
    auto rel = std::filesystem::relative(e.path, base.empty() ? "." : base, ec);
    doc["entries"].push_back({{"video_id", e.video_id},
                              {"signer_id", e.signer_id},
                              {"label", e.label},
                              {"path", (ec || rel.empty() ? e.path : rel).generic_string()}});
  }
  doc["cut_points"] = json::array();
  for (const auto& c : manifest.cut_points) {
    doc["cut_points"].push_back({{"video_id", c.video_id},
                                 {"start_frame", c.start_frame},
                                 {"end_frame", c.end_frame},
                                 {"repetition_index", c.repetition_index}});
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

std::vector<LandmarkSequence> LoadEntry(const DatasetManifest& manifest,
                                        const DatasetEntry& entry,
                                        const ReadOptions& options) {
  LandmarkSequence seq = ReadSequence(entry.path, options);
  seq.video_id = entry.video_id;
  seq.signer_id = entry.signer_id;
  seq.label = entry.label;
  const auto cuts = manifest.CutsFor(entry.video_id);
  if (cuts.empty()) return {std::move(seq)};
  return CutRepetitions(seq, cuts);
}

}  // namespace skelimg
