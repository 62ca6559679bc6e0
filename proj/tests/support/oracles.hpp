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

// Reference implementations used only by tests. Each one is written from the
// textbook definition and deliberately avoids the library's own algorithms
// (dense elimination instead of the tridiagonal sweep, per-pixel index
// arithmetic instead of the encoder loop, counting instead of a confusion
// matrix).
#ifndef SKELIMG_TESTS_SUPPORT_ORACLES_HPP_
#define SKELIMG_TESTS_SUPPORT_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "skelimg/landmark.hpp"

namespace skelimg::oracle {

// Natural cubic spline through (xs, ys) evaluated at t. Builds the full
// n x n system for the knot second derivatives, including the two boundary
// rows M_0 = M_{n-1} = 0, and solves it with partial-pivot elimination. The
// segment is then evaluated in power form a + b*d + c*d^2 + e*d^3.
inline double NaturalSpline(const std::vector<double>& xs, const std::vector<double>& ys,
                            double t) {
  const std::size_t n = xs.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  a[0][0] = 1.0;
  a[n - 1][n - 1] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = xs[i] - xs[i - 1];
    const double h1 = xs[i + 1] - xs[i];
    a[i][i - 1] = h0;
    a[i][i] = 2.0 * (h0 + h1);
    a[i][i + 1] = h1;
    a[i][n] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t k = col; k <= n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  std::vector<double> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = a[i][n] / a[i][i];

  std::size_t seg = 0;
  while (seg + 2 < n && t > xs[seg + 1]) ++seg;
  const double h = xs[seg + 1] - xs[seg];
  const double d = t - xs[seg];
  const double c0 = ys[seg];
  const double c1 = (ys[seg + 1] - ys[seg]) / h - h * (2.0 * m[seg] + m[seg + 1]) / 6.0;
  const double c2 = m[seg] / 2.0;
  const double c3 = (m[seg + 1] - m[seg]) / (6.0 * h);
  return c0 + d * (c1 + d * (c2 + d * c3));
}

enum class Fill { kObserved, kCubic, kLinear, kMissing };

struct ImputedValue {
  std::optional<double> value;
  Fill fill = Fill::kObserved;
};

// Fill rule restated frame by frame: find the nearest observations on each
// side; a gap of at most `window` frames uses the observed frames within
// `window` of the gap on either side as spline knots when there are at least
// `cubic_min` of them, otherwise the two-point line.
inline std::vector<ImputedValue> Impute(const std::vector<std::optional<double>>& s, int window,
                                        int cubic_min) {
  const int n = static_cast<int>(s.size());
  std::vector<ImputedValue> out(s.size());
  for (int t = 0; t < n; ++t) {
    if (s[t]) {
      out[t] = {s[t], Fill::kObserved};
      continue;
    }
    int left = t - 1;
    while (left >= 0 && !s[left]) --left;
    int right = t + 1;
    while (right < n && !s[right]) ++right;
    if (left < 0 || right >= n) {
      out[t] = {std::nullopt, Fill::kMissing};
      continue;
    }
    const int gap = right - left - 1;
    std::vector<double> kx, ky;
    if (gap <= window) {
      for (int k = left - window + 1; k < right + window; ++k) {
        if (k < 0 || k >= n || (k > left && k < right) || !s[k]) continue;
        kx.push_back(k);
        ky.push_back(*s[k]);
      }
    }
    if (static_cast<int>(kx.size()) >= cubic_min) {
      out[t] = {std::clamp(NaturalSpline(kx, ky, t), 0.0, 1.0), Fill::kCubic};
    } else {
      const double w = static_cast<double>(t - left) / static_cast<double>(right - left);
      const double v = *s[left] + (*s[right] - *s[left]) * w;
      out[t] = {std::clamp(v, 0.0, 1.0), Fill::kLinear};
    }
  }
  return out;
}

// 8-bit intensity of a normalized coordinate, round half up.
inline std::uint8_t Pixel(double v) {
  v = std::min(1.0, std::max(0.0, v));
  const double scaled = v * 255.0;
  const double base = std::floor(scaled);
  return static_cast<std::uint8_t>(scaled - base >= 0.5 ? base + 1.0 : base);
}

// Expected pixel (row, col, channel) of the encoded image of `seq`.
inline std::uint8_t EncodedPixel(const LandmarkSequence& seq, bool repeat_last, std::size_t row,
                                 std::size_t col, std::size_t channel) {
  const std::size_t t = seq.frame_count();
  const std::size_t half = (t + 2) / 3;
  const bool y_half = col >= half;
  std::size_t frame = 3 * (y_half ? col - half : col) + channel;
  if (frame >= t) {
    if (!repeat_last) return 0;
    frame = t - 1;
  }
  if (!seq.present(frame, row)) return 0;
  return Pixel(y_half ? seq.y(frame, row) : seq.x(frame, row));
}

struct Counts {
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
};

// Macro metrics by direct TP/FP/FN counting per class.
inline Counts Metrics(const std::vector<std::string>& truth, const std::vector<std::string>& pred,
                      const std::vector<std::string>& classes) {
  Counts c;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) correct += truth[i] == pred[i];
  c.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  for (const std::string& k : classes) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (pred[i] == k && truth[i] == k) tp += 1;
      if (pred[i] == k && truth[i] != k) fp += 1;
      if (pred[i] != k && truth[i] == k) fn += 1;
    }
    const double p = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double r = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    c.macro_precision += p;
    c.macro_recall += r;
    c.macro_f1 += p + r > 0 ? 2 * p * r / (p + r) : 0.0;
  }
  const double k = static_cast<double>(classes.size());
  c.macro_precision /= k;
  c.macro_recall /= k;
  c.macro_f1 /= k;
  return c;
}

// Rotation by `theta` about (0.5, 0.5) as an explicit 2x2 matrix product.
inline Point2 Rotate(Point2 p, double theta) {
  const double m[2][2] = {{std::cos(theta), -std::sin(theta)}, {std::sin(theta), std::cos(theta)}};
  const double v[2] = {p.x - 0.5, p.y - 0.5};
  return {0.5 + m[0][0] * v[0] + m[0][1] * v[1], 0.5 + m[1][0] * v[0] + m[1][1] * v[1]};
}

// Random sequence over `layout` with roughly `missing` of the cells MISSING.
inline LandmarkSequence RandomSequence(std::mt19937_64& rng, std::vector<LandmarkId> layout,
                                       std::size_t frames, double missing) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LandmarkSequence seq(std::move(layout), frames);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t l = 0; l < seq.landmark_count(); ++l) {
      if (u(rng) < missing) continue;
      seq.Set(t, l, {u(rng), u(rng)});
    }
  }
  return seq;
}

}  // namespace skelimg::oracle

#endif  // SKELIMG_TESTS_SUPPORT_ORACLES_HPP_
