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

#include "skelimg/landmark.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "skelimg/errors.hpp"

namespace skelimg {
namespace {

constexpr std::array<BodyPart, 4> kPartOrder = {
    BodyPart::kFace, BodyPart::kPose, BodyPart::kLeftHand,
    BodyPart::kRightHand};

int PartOffset(BodyPart part) {
  switch (part) {
    case BodyPart::kFace:
      return 0;
    case BodyPart::kPose:
      return kFaceLandmarks;
    case BodyPart::kLeftHand:
      return kFaceLandmarks + kPoseLandmarks;
    case BodyPart::kRightHand:
      return kFaceLandmarks + kPoseLandmarks + kHandLandmarks;
  }
  return 0;
}

}  // namespace

int PartSize(BodyPart part) {
  switch (part) {
    case BodyPart::kFace:
      return kFaceLandmarks;
    case BodyPart::kPose:
      return kPoseLandmarks;
    case BodyPart::kLeftHand:
    case BodyPart::kRightHand:
      return kHandLandmarks;
  }
  return 0;
}

std::string_view PartName(BodyPart part) {
  switch (part) {
    case BodyPart::kFace:
      return "face";
    case BodyPart::kPose:
      return "pose";
    case BodyPart::kLeftHand:
      return "left_hand";
    case BodyPart::kRightHand:
      return "right_hand";
  }
  return "?";
}

std::optional<BodyPart> ParsePart(std::string_view name) {
  for (BodyPart part : kPartOrder) {
    if (PartName(part) == name) return part;
  }
  return std::nullopt;
}

int CanonicalSlot(LandmarkId id) {
  if (!id.IsValid()) {
    throw ValidationError("landmark index " + std::to_string(id.index) +
                          " out of range for part " +
                          std::string(PartName(id.part)));
  }
  return PartOffset(id.part) + id.index;
}

LandmarkId FromCanonicalSlot(int slot) {
  if (slot < 0 || slot >= kTotalLandmarks) {
    throw ValidationError("canonical slot out of range: " +
                          std::to_string(slot));
  }
  for (auto it = kPartOrder.rbegin(); it != kPartOrder.rend(); ++it) {
    if (slot >= PartOffset(*it)) return {*it, slot - PartOffset(*it)};
  }
  return {};
}

std::string ColumnStem(LandmarkId id) {
  return std::string(PartName(id.part)) + "_" + std::to_string(id.index);
}

const std::vector<LandmarkId>& CanonicalLayout() {
  static const std::vector<LandmarkId> layout = [] {
    std::vector<LandmarkId> ids;
    ids.reserve(kTotalLandmarks);
    for (int s = 0; s < kTotalLandmarks; ++s) ids.push_back(FromCanonicalSlot(s));
    return ids;
  }();
  return layout;
}

LandmarkSequence::LandmarkSequence(std::vector<LandmarkId> layout,
                                   std::size_t frame_count)
    : layout_(std::move(layout)),
      frame_count_(frame_count),
      xs_(layout_.size() * frame_count, 0.0),
      ys_(layout_.size() * frame_count, 0.0),
      present_(layout_.size() * frame_count, 0) {
  std::vector<int> slots;
  slots.reserve(layout_.size());
  for (const LandmarkId& id : layout_) slots.push_back(CanonicalSlot(id));
  std::sort(slots.begin(), slots.end());
  if (std::adjacent_find(slots.begin(), slots.end()) != slots.end()) {
    throw ValidationError("duplicate landmark in sequence layout");
  }
}

LandmarkSequence LandmarkSequence::Canonical(std::size_t frame_count) {
  return LandmarkSequence(CanonicalLayout(), frame_count);
}

bool LandmarkSequence::IsCanonical() const {
  return layout_ == CanonicalLayout();
}

std::optional<std::size_t> LandmarkSequence::Find(LandmarkId id) const {
  if (IsCanonical()) {
    if (!id.IsValid()) return std::nullopt;
    return static_cast<std::size_t>(CanonicalSlot(id));
  }
  auto it = std::find(layout_.begin(), layout_.end(), id);
  if (it == layout_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - layout_.begin());
}

std::size_t LandmarkSequence::Offset(std::size_t frame,
                                     std::size_t landmark) const {
  if (frame >= frame_count_ || landmark >= layout_.size()) {
    throw std::out_of_range("landmark sequence index out of range");
  }
  return frame * layout_.size() + landmark;
}

std::optional<Point2> LandmarkSequence::at(std::size_t frame,
                                           std::size_t landmark) const {
  const std::size_t k = Offset(frame, landmark);
  if (!present_[k]) return std::nullopt;
  return Point2{xs_[k], ys_[k]};
}

void LandmarkSequence::Set(std::size_t frame, std::size_t landmark, Point2 p) {
  if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
    throw RangeError("coordinate outside [0,1] at frame " +
                     std::to_string(frame) + ", " +
                     ColumnStem(layout_.at(landmark)));
  }
  const std::size_t k = Offset(frame, landmark);
  xs_[k] = p.x;
  ys_[k] = p.y;
  present_[k] = 1;
}

void LandmarkSequence::SetMissing(std::size_t frame, std::size_t landmark) {
  const std::size_t k = Offset(frame, landmark);
  xs_[k] = 0.0;
  ys_[k] = 0.0;
  present_[k] = 0;
}

std::size_t LandmarkSequence::MissingCount() const {
  return static_cast<std::size_t>(
      std::count(present_.begin(), present_.end(), std::uint8_t{0}));
}

LandmarkSequence LandmarkSequence::Slice(std::size_t begin,
                                         std::size_t end) const {
  if (begin > end || end > frame_count_) {
    throw ValidationError("slice [" + std::to_string(begin) + ", " +
                          std::to_string(end) + ") outside 0.." +
                          std::to_string(frame_count_));
  }
  LandmarkSequence out;
  out.video_id = video_id;
  out.signer_id = signer_id;
  out.label = label;
  out.layout_ = layout_;
  out.frame_count_ = end - begin;
  const std::size_t l = layout_.size();
  out.xs_.assign(xs_.begin() + begin * l, xs_.begin() + end * l);
  out.ys_.assign(ys_.begin() + begin * l, ys_.begin() + end * l);
  out.present_.assign(present_.begin() + begin * l, present_.begin() + end * l);
  return out;
}

bool LandmarkSequence::ApproxEquals(const LandmarkSequence& other,
                                    double tol) const {
  if (video_id != other.video_id || signer_id != other.signer_id ||
      label != other.label || layout_ != other.layout_ ||
      frame_count_ != other.frame_count_ || present_ != other.present_) {
    return false;
  }
  for (std::size_t k = 0; k < xs_.size(); ++k) {
    if (!present_[k]) continue;
    if (std::abs(xs_[k] - other.xs_[k]) > tol) return false;
    if (std::abs(ys_[k] - other.ys_[k]) > tol) return false;
  }
  return true;
}

}  // namespace skelimg
