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

#include "skelimg/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "skelimg/errors.hpp"

namespace skelimg {
namespace {

double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double Sample(std::mt19937_64& rng, Range r) {
  // Always draw so the stream layout does not depend on the range widths.
  const double u = Uniform01(rng);
  return r.lo == r.hi ? r.lo : r.lo + (r.hi - r.lo) * u;
}

std::uint32_t Lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
std::uint32_t Hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

LandmarkId Mirror(LandmarkId id, const std::vector<std::pair<int, int>>& pose_pairs) {
  switch (id.part) {
    case BodyPart::kLeftHand:
      return {BodyPart::kRightHand, id.index};
    case BodyPart::kRightHand:
      return {BodyPart::kLeftHand, id.index};
    case BodyPart::kPose:
      for (const auto& [a, b] : pose_pairs) {
        if (id.index == a) return {BodyPart::kPose, b};
        if (id.index == b) return {BodyPart::kPose, a};
      }
      return id;
    case BodyPart::kFace:
      return id;
  }
  return id;
}

}  // namespace

std::vector<std::pair<int, int>> AugmentConfig::DefaultPoseMirrorPairs() {
  // Holistic pose topology: odd indices are the subject's left side.
  return {{1, 4},   {2, 5},   {3, 6},   {7, 8},   {9, 10},  {11, 12},
          {13, 14}, {15, 16}, {17, 18}, {19, 20}, {21, 22}, {23, 24},
          {25, 26}, {27, 28}, {29, 30}, {31, 32}};
}

AugmentConfig AugmentConfig::Identity() {
  AugmentConfig cfg;
  cfg.rotation_deg = {0.0, 0.0};
  cfg.zoom = {1.0, 1.0};
  cfg.translation = {0.0, 0.0};
  cfg.hflip_prob = 0.0;
  return cfg;
}

void AugmentConfig::Validate() const {
  for (const Range& r : {rotation_deg, zoom, translation}) {
    if (!(r.lo <= r.hi)) throw ValidationError("augment range is not well-ordered");
  }
  if (!(zoom.lo > 0.0)) throw ValidationError("augment zoom must be positive");
  if (!(hflip_prob >= 0.0 && hflip_prob <= 1.0)) {
    throw ValidationError("hflip_prob must lie in [0,1]");
  }
  for (const auto& [a, b] : pose_mirror_pairs) {
    if (a < 0 || a >= kPoseLandmarks || b < 0 || b >= kPoseLandmarks) {
      throw ValidationError("pose mirror pair out of range");
    }
  }
}

AugmentParams SampleAugmentParams(const AugmentConfig& cfg, std::uint64_t sample_key,
                                  std::uint64_t epoch) {
  cfg.Validate();
  std::seed_seq seq{Lo(cfg.seed), Hi(cfg.seed), Lo(sample_key),
                    Hi(sample_key), Lo(epoch),  Hi(epoch)};
  std::mt19937_64 rng(seq);
  AugmentParams p;
  p.flip = Uniform01(rng) < cfg.hflip_prob;
  p.rotation_rad = Sample(rng, cfg.rotation_deg) * std::numbers::pi / 180.0;
  p.zoom = Sample(rng, cfg.zoom);
  p.tx = Sample(rng, cfg.translation);
  p.ty = Sample(rng, cfg.translation);
  return p;
}

Point2 TransformPoint(Point2 p, const AugmentParams& params) {
  const double c = std::cos(params.rotation_rad);
  const double s = std::sin(params.rotation_rad);
  const double dx = p.x - 0.5;
  const double dy = p.y - 0.5;
  const double rx = c * dx - s * dy;
  const double ry = s * dx + c * dy;
  return {0.5 + params.zoom * rx + params.tx, 0.5 + params.zoom * ry + params.ty};
}

LandmarkSequence ApplyAugmentation(const LandmarkSequence& seq,
                                   const AugmentParams& params,
                                   const AugmentConfig& cfg) {
  const std::size_t count = seq.landmark_count();
  std::vector<std::size_t> source(count);
  for (std::size_t l = 0; l < count; ++l) {
    source[l] = l;
    if (params.flip) {
      if (auto pos = seq.Find(Mirror(seq.layout()[l], cfg.pose_mirror_pairs))) source[l] = *pos;
    }
  }
  const bool geometric = params.rotation_rad != 0.0 || params.zoom != 1.0 ||
                         params.tx != 0.0 || params.ty != 0.0;

  LandmarkSequence out(std::vector<LandmarkId>(seq.layout().begin(), seq.layout().end()),
                       seq.frame_count());
  out.video_id = seq.video_id;
  out.signer_id = seq.signer_id;
  out.label = seq.label;
  for (std::size_t t = 0; t < seq.frame_count(); ++t) {
    for (std::size_t l = 0; l < count; ++l) {
      auto p = seq.at(t, source[l]);
      if (!p) continue;
      if (params.flip) p->x = 1.0 - p->x;
      if (geometric) *p = TransformPoint(*p, params);
      out.Set(t, l, {std::clamp(p->x, 0.0, 1.0), std::clamp(p->y, 0.0, 1.0)});
    }
  }
  return out;
}

std::uint64_t SampleKeyFor(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

LandmarkSequence Augment(const LandmarkSequence& seq, const AugmentConfig& cfg,
                         std::uint64_t sample_key, std::uint64_t epoch) {
  return ApplyAugmentation(seq, SampleAugmentParams(cfg, sample_key, epoch), cfg);
}

}  // namespace skelimg
