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

#include "skelimg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "skelimg/errors.hpp"

namespace skelimg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const char* const kPathNames[] = {"circle", "horizontal", "zigzag", "vertical",
                                  "circle_ccw", "diagonal", "figure8", "arc"};
constexpr int kPathCount = 8;

Point2 PathPoint(int family, double t, double amp) {
  const double cx = 0.45;
  const double cy = 0.55;
  switch (family % kPathCount) {
    case 0:
      return {cx + amp * std::cos(kTwoPi * t), cy + amp * std::sin(kTwoPi * t)};
    case 1:
      return {cx - amp + 2.0 * amp * t, cy};
    case 2: {
      const double saw = std::abs(std::fmod(4.0 * t, 2.0) - 1.0);
      return {cx - amp + 2.0 * amp * t, cy + 0.6 * amp * (saw - 0.5)};
    }
    case 3:
      return {cx, cy - amp + 2.0 * amp * t};
    case 4:
      return {cx + amp * std::cos(-kTwoPi * t), cy + amp * std::sin(-kTwoPi * t)};
    case 5:
      return {cx - amp + 2.0 * amp * t, cy - amp + 2.0 * amp * t};
    case 6:
      return {cx + amp * std::sin(kTwoPi * t), cy + 0.5 * amp * std::sin(2.0 * kTwoPi * t)};
    default:
      return {cx + amp * std::cos(std::numbers::pi * t), cy - amp * std::sin(std::numbers::pi * t)};
  }
}

// Finger offsets of a relaxed open hand relative to the wrist.
Point2 HandOffset(int k) {
  if (k == 0) return {0.0, 0.0};
  const int finger = (k - 1) / 4;  // thumb..pinky
  const int joint = (k - 1) % 4 + 1;
  const double angle = -2.2 + 0.35 * finger;
  const double len = 0.012 * joint;
  return {len * std::cos(angle), len * std::sin(angle)};
}

Point2 PoseBase(int i) {
  // Coarse upright body; indices follow the holistic pose topology.
  static const Point2 kKnown[] = {
      {0.50, 0.22}, {0.51, 0.20}, {0.52, 0.20}, {0.53, 0.20}, {0.49, 0.20},
      {0.48, 0.20}, {0.47, 0.20}, {0.55, 0.21}, {0.45, 0.21}, {0.51, 0.25},
      {0.49, 0.25}, {0.60, 0.38}, {0.40, 0.38}, {0.64, 0.55}, {0.36, 0.55},
      {0.62, 0.72}, {0.38, 0.72}, {0.62, 0.75}, {0.38, 0.75}, {0.61, 0.75},
      {0.39, 0.75}, {0.61, 0.74}, {0.39, 0.74}, {0.57, 0.80}, {0.43, 0.80},
      {0.57, 0.95}, {0.43, 0.95}, {0.57, 0.99}, {0.43, 0.99}, {0.57, 1.00},
      {0.43, 1.00}, {0.58, 1.00}, {0.42, 1.00}};
  return kKnown[i];
}

Point2 Clamp01(Point2 p) { return {std::clamp(p.x, 0.0, 1.0), std::clamp(p.y, 0.0, 1.0)}; }

}  // namespace

std::vector<LandmarkSequence> SynthesizeDataset(const SynthConfig& cfg) {
  if (cfg.classes < 1 || cfg.signers < 1 || cfg.samples_per_class < 1 || cfg.frames < 1) {
    throw ValidationError("synthetic dataset needs positive class, signer, sample and frame counts");
  }
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<LandmarkSequence> out;
  for (int s = 0; s < cfg.signers; ++s) {
    const double sdx = cfg.signer_offset * gauss(rng);
    const double sdy = cfg.signer_offset * gauss(rng);
    const double scale = 0.9 + 0.2 * unit(rng);
    auto body = [&](Point2 p) {
      return Point2{0.5 + scale * (p.x - 0.5) + sdx, 0.5 + scale * (p.y - 0.5) + sdy};
    };
    char signer[32];
    std::snprintf(signer, sizeof(signer), "signer%02d", s + 1);

    for (int c = 0; c < cfg.classes; ++c) {
      for (int k = 0; k < cfg.samples_per_class; ++k) {
        LandmarkSequence seq = LandmarkSequence::Canonical(static_cast<std::size_t>(cfg.frames));
        char vid[64];
        std::snprintf(vid, sizeof(vid), "%s_c%d_%02d", signer, c, k);
        seq.video_id = vid;
        seq.signer_id = signer;
        seq.label = kPathNames[c % kPathCount];
        if (c >= kPathCount) seq.label += "_" + std::to_string(c / kPathCount);

        const double amp = 0.12 * (0.9 + 0.2 * unit(rng)) * (1.0 + 0.15 * (c / kPathCount));
        const double phase = 0.05 * gauss(rng);
        auto jitter = [&](Point2 p) {
          return Clamp01({p.x + cfg.noise * gauss(rng), p.y + cfg.noise * gauss(rng)});
        };
        for (int t = 0; t < cfg.frames; ++t) {
          const double u = cfg.frames == 1 ? 0.0 : static_cast<double>(t) / (cfg.frames - 1);
          const Point2 wrist = body(PathPoint(c, std::clamp(u + phase, 0.0, 1.0), amp));
          const std::size_t frame = static_cast<std::size_t>(t);
          for (int i = 0; i < kFaceLandmarks; ++i) {
            const double a = kTwoPi * i / kFaceLandmarks;
            const double r = 0.02 + 0.05 * ((i * 7) % 13) / 13.0;
            seq.Set(frame, static_cast<std::size_t>(CanonicalSlot({BodyPart::kFace, i})),
                    jitter(body({0.5 + 0.8 * r * std::cos(a), 0.2 + r * std::sin(a)})));
          }
          for (int i = 0; i < kPoseLandmarks; ++i) {
            Point2 p = body(PoseBase(i));
            if (i == 16 || i == 18 || i == 20 || i == 22) p = wrist;
            if (i == 14) p = {0.5 * (wrist.x + body(PoseBase(12)).x), 0.5 * (wrist.y + 0.72)};
            seq.Set(frame, static_cast<std::size_t>(CanonicalSlot({BodyPart::kPose, i})), jitter(p));
          }
          const Point2 left_wrist = body({0.62, 0.72});
          for (int i = 0; i < kHandLandmarks; ++i) {
            const Point2 off = HandOffset(i);
            seq.Set(frame, static_cast<std::size_t>(CanonicalSlot({BodyPart::kLeftHand, i})),
                    jitter({left_wrist.x - off.x, left_wrist.y + off.y}));
            seq.Set(frame, static_cast<std::size_t>(CanonicalSlot({BodyPart::kRightHand, i})),
                    jitter({wrist.x + off.x, wrist.y + off.y}));
          }
        }
        if (cfg.dropout > 0.0) SimulateDropout(seq, cfg.dropout, rng);
        out.push_back(std::move(seq));
      }
    }
  }
  return out;
}

void SimulateDropout(LandmarkSequence& seq, double rate, std::mt19937_64& rng) {
  if (rate <= 0.0) return;
  const std::size_t frames = seq.frame_count();
  const std::size_t target = static_cast<std::size_t>(std::lround(rate * static_cast<double>(frames)));
  std::uniform_int_distribution<std::size_t> start_dist(0, frames - 1);
  std::uniform_int_distribution<std::size_t> len_dist(1, 3);
  for (BodyPart part : {BodyPart::kLeftHand, BodyPart::kRightHand}) {
    std::vector<std::size_t> slots;
    for (int i = 0; i < kHandLandmarks; ++i) {
      if (auto pos = seq.Find({part, i})) slots.push_back(*pos);
    }
    if (slots.empty()) continue;
    std::vector<bool> dropped(frames, false);
    std::size_t count = 0;
    for (int guard = 0; count < target && guard < 10000; ++guard) {
      const std::size_t start = start_dist(rng);
      const std::size_t len = len_dist(rng);
      for (std::size_t f = start; f < std::min(frames, start + len) && count < target; ++f) {
        if (!dropped[f]) {
          dropped[f] = true;
          ++count;
        }
      }
    }
    for (std::size_t f = 0; f < frames; ++f) {
      if (!dropped[f]) continue;
      for (std::size_t l : slots) seq.SetMissing(f, l);
    }
  }
}

DatasetManifest WriteSynthDataset(const SynthConfig& cfg, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  DatasetManifest manifest;
  for (const LandmarkSequence& seq : SynthesizeDataset(cfg)) {
    const auto path = dir / (seq.video_id + ".csv");
    WriteSequence(seq, path);
    manifest.entries.push_back({seq.video_id, seq.signer_id, seq.label, path});
  }
  SaveDatasetManifest(manifest, dir / "manifest.json");
  return manifest;
}

}  // namespace skelimg
