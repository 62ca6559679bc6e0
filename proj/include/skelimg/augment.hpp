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

#ifndef SKELIMG_AUGMENT_HPP_
#define SKELIMG_AUGMENT_HPP_

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "skelimg/landmark.hpp"

namespace skelimg {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// Parameter ranges for on-the-fly geometric augmentation of landmark
// sequences. Defaults are conservative choices, not published values.
struct AugmentConfig {
  Range rotation_deg{-10.0, 10.0};
  Range zoom{0.9, 1.1};
  Range translation{-0.05, 0.05};  // per axis, normalized units
  double hflip_prob = 0.5;
  std::uint64_t seed = 0;
  // Pose landmarks exchanged on horizontal flip; hands always swap.
  std::vector<std::pair<int, int>> pose_mirror_pairs = DefaultPoseMirrorPairs();

  static std::vector<std::pair<int, int>> DefaultPoseMirrorPairs();
  // All ranges zero-width at the identity and no flip.
  static AugmentConfig Identity();

  // Throws ValidationError for reversed ranges, non-positive zoom or a
  // probability outside [0,1].
  void Validate() const;
};

// One sampled transform set.
struct AugmentParams {
  bool flip = false;
  double rotation_rad = 0.0;
  double zoom = 1.0;
  double tx = 0.0;
  double ty = 0.0;
};

// Deterministic in (cfg.seed, sample_key, epoch).
AugmentParams SampleAugmentParams(const AugmentConfig& cfg, std::uint64_t sample_key,
                                  std::uint64_t epoch = 0);

// Maps one point: rotation about (0.5, 0.5), then zoom about the center, then
// translation. No flip, no clamping.
Point2 TransformPoint(Point2 p, const AugmentParams& params);

// Applies flip (x -> 1 - x with left/right identifier swap), rotation, zoom and
// translation, then clamps to [0,1]. MISSING cells stay MISSING.
LandmarkSequence ApplyAugmentation(const LandmarkSequence& seq,
                                   const AugmentParams& params,
                                   const AugmentConfig& cfg);

// Stable 64-bit key for a sample name (FNV-1a).
std::uint64_t SampleKeyFor(std::string_view name);

LandmarkSequence Augment(const LandmarkSequence& seq, const AugmentConfig& cfg,
                         std::uint64_t sample_key, std::uint64_t epoch = 0);

}  // namespace skelimg

#endif  // SKELIMG_AUGMENT_HPP_
