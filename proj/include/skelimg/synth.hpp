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

#ifndef SKELIMG_SYNTH_HPP_
#define SKELIMG_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "skelimg/landmark.hpp"
#include "skelimg/sequence_io.hpp"

namespace skelimg {

// Synthetic signing data: a static body with the dominant (right) hand
// tracing a class-specific path. Used for smoke tests and demos.
struct SynthConfig {
  // Path families cycle through: circle, horizontal line, zig-zag, vertical
  // line, counter-clockwise circle, diagonal, figure eight, arc.
  int classes = 3;
  int signers = 4;
  int samples_per_class = 5;  // per signer
  int frames = 30;
  double noise = 0.004;         // per-coordinate jitter
  double signer_offset = 0.03;  // per-signer body shift
  double dropout = 0.0;         // fraction of hand detections removed
  std::uint64_t seed = 7;
};

std::vector<LandmarkSequence> SynthesizeDataset(const SynthConfig& cfg);

// Removes about `rate` of each hand's per-frame detections, in short bursts
// of whole-hand misses as a holistic tracker does.
void SimulateDropout(LandmarkSequence& seq, double rate, std::mt19937_64& rng);

// Writes one canonical CSV per sequence plus manifest.json into `dir`.
DatasetManifest WriteSynthDataset(const SynthConfig& cfg, const std::filesystem::path& dir);

}  // namespace skelimg

#endif  // SKELIMG_SYNTH_HPP_
