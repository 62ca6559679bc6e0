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

#ifndef SKELIMG_SEQUENCE_IO_HPP_
#define SKELIMG_SEQUENCE_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "skelimg/landmark.hpp"

namespace skelimg {

enum class OutOfRangePolicy { kClamp, kReject };

struct ReadOptions {
  // Values within [-tolerance, 1 + tolerance] are clamped (or rejected under
  // kReject); anything further out is always a RangeError.
  double clamp_tolerance = 0.5;
  OutOfRangePolicy out_of_range = OutOfRangePolicy::kClamp;
  // When false, any ordered subset of landmark columns is accepted; this is
  // how selected or imputed intermediate files are read back.
  bool require_canonical = true;
};

// Parses a landmark CSV. video_id defaults to the file stem.
LandmarkSequence ReadSequence(const std::filesystem::path& path,
                              const ReadOptions& options = {});
LandmarkSequence ParseSequence(std::istream& in, const ReadOptions& options = {});

// Canonical CSV: header, one row per frame, 6-decimal fixed point, empty
// cell for MISSING, LF line endings.
void WriteSequence(const LandmarkSequence& seq,
                   const std::filesystem::path& path);
void FormatSequence(const LandmarkSequence& seq, std::ostream& out);
std::string FormatSequence(const LandmarkSequence& seq);

std::string CsvHeader(std::span<const LandmarkId> layout);

struct CutRange {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  int repetition = 0;
};

// Splits a multi-repetition video. Output i corresponds to cuts[i]; frames are
// re-based to zero and video_id gets the suffix "_r<repetition>".
std::vector<LandmarkSequence> CutRepetitions(const LandmarkSequence& seq,
                                             std::span<const CutRange> cuts);

struct DatasetEntry {
  std::string video_id;
  std::string signer_id;
  std::string label;
  std::filesystem::path path;  // resolved against the manifest directory
};

struct CutPoint {
  std::string video_id;
  std::size_t start_frame = 0;
  std::size_t end_frame = 0;
  int repetition_index = 0;
};

struct DatasetManifest {
  std::vector<DatasetEntry> entries;
  std::vector<CutPoint> cut_points;

  // Cuts registered for `video_id`, in manifest order.
  std::vector<CutRange> CutsFor(const std::string& video_id) const;
  std::vector<std::string> Signers() const;  // sorted, unique
};

// Validates unique video ids and that every referenced file exists.
DatasetManifest LoadDatasetManifest(const std::filesystem::path& path);
void SaveDatasetManifest(const DatasetManifest& manifest,
                         const std::filesystem::path& path);

// Reads one entry, applies its metadata and any cut points.
std::vector<LandmarkSequence> LoadEntry(const DatasetManifest& manifest,
                                        const DatasetEntry& entry,
                                        const ReadOptions& options = {});

}  // namespace skelimg

#endif  // SKELIMG_SEQUENCE_IO_HPP_
