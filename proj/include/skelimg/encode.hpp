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

#ifndef SKELIMG_ENCODE_HPP_
#define SKELIMG_ENCODE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "skelimg/augment.hpp"
#include "skelimg/impute.hpp"
#include "skelimg/landmark.hpp"
#include "skelimg/selection.hpp"
#include "skelimg/sequence_io.hpp"

namespace skelimg {

enum class PadPolicy { kZeroPad, kRepeatLast };

struct EncodingSpec {
  PadPolicy pad = PadPolicy::kZeroPad;
};

// 8-bit, 3-channel, row-major interleaved (HWC) image.
struct SkeletonImage {
  std::size_t height = 0;
  std::size_t width = 0;
  static constexpr std::size_t kChannels = 3;
  std::vector<std::uint8_t> pixels;

  std::string video_id;
  std::string strategy;
  std::size_t frame_count = 0;
  std::size_t landmark_count = 0;

  std::uint8_t at(std::size_t row, std::size_t col, std::size_t channel) const {
    return pixels[(row * width + col) * kChannels + channel];
  }
  friend bool operator==(const SkeletonImage&, const SkeletonImage&) = default;
};

// round(clamp(v, 0, 1) * 255), halves rounded up.
std::uint8_t QuantizeCoordinate(double v);

// Output width for T frames: 2 * ceil(T / 3).
std::size_t EncodedWidth(std::size_t frame_count);

// Skeleton image of a selected sequence: rows follow the sequence layout,
// frames 3g, 3g+1, 3g+2 become the channels of column g; the x-image and the
// y-image are concatenated left to right. Remaining MISSING cells encode as
// 0.0. Throws ValidationError when L or T is zero.
SkeletonImage Encode(const LandmarkSequence& seq, const EncodingSpec& spec = {},
                     const std::string& strategy = {});

struct EncodeDatasetOptions {
  // std::nullopt skips imputation (raw stream).
  std::optional<ImputeConfig> impute = ImputeConfig{};
  // Applied after imputation with sample key SampleKeyFor(video_id).
  std::optional<AugmentConfig> augment;
  std::uint64_t epoch = 0;
  EncodingSpec spec;
  ReadOptions read;
  int workers = 1;
};

struct EncodedItem {
  std::string video_id;
  std::string label;
  std::string signer_id;
  std::string strategy;
  std::filesystem::path image;  // relative to the output directory
  std::size_t frame_count = 0;
  ImputeStats impute_stats;
};

struct EncodeFailure {
  std::string video_id;
  std::string error;
};

struct EncodedIndex {
  std::vector<EncodedItem> items;
  std::vector<EncodeFailure> failures;
  ImputeStats impute_totals;
  std::string strategy;
};

// Runs read -> cut -> select -> impute -> [augment] -> encode for every manifest entry and
// writes <out_dir>/<video_id>.png plus <out_dir>/index.json. Per-entry
// failures are collected, never thrown. Output is identical for any worker
// count.
EncodedIndex EncodeDataset(const DatasetManifest& manifest,
                           const SelectionManifest& selection,
                           const EncodeDatasetOptions& options,
                           const std::filesystem::path& out_dir);

void SaveIndex(const EncodedIndex& index, const std::filesystem::path& path);
EncodedIndex LoadIndex(const std::filesystem::path& path);

}  // namespace skelimg

#endif  // SKELIMG_ENCODE_HPP_
