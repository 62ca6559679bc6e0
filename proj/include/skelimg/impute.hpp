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

#ifndef SKELIMG_IMPUTE_HPP_
#define SKELIMG_IMPUTE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skelimg/landmark.hpp"

namespace skelimg {

struct ImputeConfig {
  // Observed frames considered on each side of a gap, and the longest gap
  // filled by the local spline. Longer interior gaps are bridged linearly.
  int window = 5;
  // Minimum observed points in the window for a cubic fill.
  int cubic_min_points = 4;
  // Leading/trailing gaps are filled by holding the nearest observation.
  bool allow_extrapolation = false;

  // Throws ValidationError unless window >= 2 and cubic_min_points >= 4.
  void Validate() const;
};

struct ImputeStats {
  std::size_t filled_cubic = 0;
  std::size_t filled_linear = 0;
  std::size_t left_missing = 0;

  ImputeStats& operator+=(const ImputeStats& o) {
    filled_cubic += o.filled_cubic;
    filled_linear += o.filled_linear;
    left_missing += o.left_missing;
    return *this;
  }
  friend bool operator==(const ImputeStats&, const ImputeStats&) = default;

  std::string ToJson() const;
};

// Interpolating cubic spline with zero second derivative at both ends.
class NaturalCubicSpline {
 public:
  // Knots must be strictly increasing; at least two points.
  NaturalCubicSpline(std::vector<double> knots, std::vector<double> values);

  double operator()(double t) const;

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> second_;  // second derivative at each knot
};

// One coordinate series: std::nullopt marks a missing sample.
using Series = std::vector<std::optional<double>>;

enum class FillKind { kObserved, kCubic, kLinear, kMissing };

// Fills one series in place and reports what happened to each frame.
std::vector<FillKind> ImputeSeries(Series& series, const ImputeConfig& cfg);

struct ImputeResult {
  LandmarkSequence sequence;
  ImputeStats stats;
};

// Each landmark-coordinate series is processed independently. Stats count
// (frame, landmark) cells.
ImputeResult ImputeSequence(const LandmarkSequence& seq, const ImputeConfig& cfg = {});

}  // namespace skelimg

#endif  // SKELIMG_IMPUTE_HPP_
