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

#ifndef SKELIMG_LANDMARK_HPP_
#define SKELIMG_LANDMARK_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skelimg {

enum class BodyPart : std::uint8_t { kFace, kPose, kLeftHand, kRightHand };

inline constexpr int kFaceLandmarks = 468;
inline constexpr int kPoseLandmarks = 33;
inline constexpr int kHandLandmarks = 21;
inline constexpr int kTotalLandmarks =
    kFaceLandmarks + kPoseLandmarks + 2 * kHandLandmarks;  // 543

int PartSize(BodyPart part);
std::string_view PartName(BodyPart part);
std::optional<BodyPart> ParsePart(std::string_view name);

// One body landmark of the holistic model, e.g. {kPose, 11} (left shoulder).
struct LandmarkId {
  BodyPart part = BodyPart::kFace;
  int index = 0;

  bool IsValid() const { return index >= 0 && index < PartSize(part); }

  friend bool operator==(const LandmarkId&, const LandmarkId&) = default;
  friend auto operator<=>(const LandmarkId&, const LandmarkId&) = default;
};

// Position in the canonical face/pose/left_hand/right_hand ordering, 0..542.
int CanonicalSlot(LandmarkId id);
LandmarkId FromCanonicalSlot(int slot);

// "face_10", "left_hand_3", ...
std::string ColumnStem(LandmarkId id);

// All 543 identifiers in canonical order.
const std::vector<LandmarkId>& CanonicalLayout();

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// Per-video time series of 2-D normalized landmark coordinates.
//
// The landmark layout (which identifiers, in which order) is fixed at
// construction. Storage is frame-major; a landmark is either fully present
// in a frame (both coordinates in [0,1]) or MISSING.
class LandmarkSequence {
 public:
  LandmarkSequence() = default;
  // All cells start MISSING.
  LandmarkSequence(std::vector<LandmarkId> layout, std::size_t frame_count);

  // Full 543-landmark canonical layout, all cells MISSING.
  static LandmarkSequence Canonical(std::size_t frame_count);

  std::string video_id;
  std::string signer_id;
  std::string label;

  std::size_t frame_count() const { return frame_count_; }
  std::size_t landmark_count() const { return layout_.size(); }
  std::span<const LandmarkId> layout() const { return layout_; }
  bool IsCanonical() const;

  // Layout position of `id`, if present.
  std::optional<std::size_t> Find(LandmarkId id) const;

  bool present(std::size_t frame, std::size_t landmark) const {
    return present_[Offset(frame, landmark)] != 0;
  }
  std::optional<Point2> at(std::size_t frame, std::size_t landmark) const;
  double x(std::size_t frame, std::size_t landmark) const {
    return xs_[Offset(frame, landmark)];
  }
  double y(std::size_t frame, std::size_t landmark) const {
    return ys_[Offset(frame, landmark)];
  }

  // Throws RangeError unless both coordinates lie in [0,1].
  void Set(std::size_t frame, std::size_t landmark, Point2 p);
  void SetMissing(std::size_t frame, std::size_t landmark);

  std::size_t MissingCount() const;

  // Copies metadata and frames [begin, end) into a new sequence.
  LandmarkSequence Slice(std::size_t begin, std::size_t end) const;

  // Same identity, coordinates within `tol`, identical MISSING masks.
  bool ApproxEquals(const LandmarkSequence& other, double tol) const;
  friend bool operator==(const LandmarkSequence&,
                         const LandmarkSequence&) = default;

 private:
  std::size_t Offset(std::size_t frame, std::size_t landmark) const;

  std::vector<LandmarkId> layout_;
  std::size_t frame_count_ = 0;
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<std::uint8_t> present_;
};

}  // namespace skelimg

#endif  // SKELIMG_LANDMARK_HPP_
