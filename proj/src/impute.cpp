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

#include "skelimg/impute.hpp"

#include <algorithm>
#include <iterator>

#include "json.hpp"
#include "skelimg/errors.hpp"

namespace skelimg {

void ImputeConfig::Validate() const {
  if (window < 2) throw ValidationError("impute window must be >= 2");
  if (cubic_min_points < 4) throw ValidationError("cubic_min_points must be >= 4");
}

std::string ImputeStats::ToJson() const {
  return nlohmann::json{{"filled_cubic", filled_cubic},
                        {"filled_linear", filled_linear},
                        {"left_missing", left_missing}}
      .dump();
}

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> knots,
                                       std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  const std::size_t n = knots_.size();
  if (n < 2 || values_.size() != n) {
    throw ValidationError("spline needs at least two knots and matching values");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(knots_[i] > knots_[i - 1])) {
      throw ValidationError("spline knots must be strictly increasing");
    }
  }
  second_.assign(n, 0.0);
  if (n == 2) return;

  // Tridiagonal system for the interior second derivatives (Thomas algorithm).
  const std::size_t m = n - 2;
  std::vector<double> diag(m), upper(m), rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + 1;
    const double h0 = knots_[i] - knots_[i - 1];
    const double h1 = knots_[i + 1] - knots_[i];
    diag[k] = 2.0 * (h0 + h1);
    upper[k] = h1;
    rhs[k] = 6.0 * ((values_[i + 1] - values_[i]) / h1 -
                    (values_[i] - values_[i - 1]) / h0);
  }
  for (std::size_t k = 1; k < m; ++k) {
    const double lower = knots_[k + 1] - knots_[k];
    const double w = lower / diag[k - 1];
    diag[k] -= w * upper[k - 1];
    rhs[k] -= w * rhs[k - 1];
  }
  second_[m] = rhs[m - 1] / diag[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) {
    second_[k + 1] = (rhs[k] - upper[k] * second_[k + 2]) / diag[k];
  }
}

double NaturalCubicSpline::operator()(double t) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  i = std::min(i, knots_.size() - 2);
  const double x0 = knots_[i];
  const double x1 = knots_[i + 1];
  const double h = x1 - x0;
  const double a = x1 - t;
  const double b = t - x0;
  return second_[i] * a * a * a / (6.0 * h) + second_[i + 1] * b * b * b / (6.0 * h) +
         (values_[i] / h - second_[i] * h / 6.0) * a +
         (values_[i + 1] / h - second_[i + 1] * h / 6.0) * b;
}

std::vector<FillKind> ImputeSeries(Series& series, const ImputeConfig& cfg) {
  cfg.Validate();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(series.size());
  std::vector<FillKind> kinds(series.size(), FillKind::kObserved);
  const Series original = series;

  std::ptrdiff_t first = -1;
  std::ptrdiff_t last = -1;
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    if (original[t]) {
      if (first < 0) first = t;
      last = t;
    }
  }

  std::ptrdiff_t t = 0;
  while (t < n) {
    if (original[t]) {
      ++t;
      continue;
    }
    const std::ptrdiff_t gap_begin = t;
    while (t < n && !original[t]) ++t;
    const std::ptrdiff_t gap_end = t;  // exclusive

    if (first < 0 || gap_begin == 0 || gap_end == n) {
      for (std::ptrdiff_t g = gap_begin; g < gap_end; ++g) {
        if (cfg.allow_extrapolation && first >= 0) {
          series[g] = original[g < first ? first : last];
          kinds[g] = FillKind::kLinear;
        } else {
          kinds[g] = FillKind::kMissing;
        }
      }
      continue;
    }

    const std::ptrdiff_t left = gap_begin - 1;
    const std::ptrdiff_t right = gap_end;
    const std::ptrdiff_t gap_len = gap_end - gap_begin;

    std::vector<double> knots;
    std::vector<double> values;
    if (gap_len <= cfg.window) {
      for (std::ptrdiff_t k = std::max<std::ptrdiff_t>(0, gap_begin - cfg.window); k < gap_begin; ++k) {
        if (original[k]) {
          knots.push_back(static_cast<double>(k));
          values.push_back(*original[k]);
        }
      }
      for (std::ptrdiff_t k = gap_end; k < std::min(n, gap_end + cfg.window); ++k) {
        if (original[k]) {
          knots.push_back(static_cast<double>(k));
          values.push_back(*original[k]);
        }
      }
    }

    if (static_cast<int>(knots.size()) >= cfg.cubic_min_points) {
      const NaturalCubicSpline spline(std::move(knots), std::move(values));
      for (std::ptrdiff_t g = gap_begin; g < gap_end; ++g) {
        series[g] = std::clamp(spline(static_cast<double>(g)), 0.0, 1.0);
        kinds[g] = FillKind::kCubic;
      }
    } else {
      const double v0 = *original[left];
      const double v1 = *original[right];
      const double span = static_cast<double>(right - left);
      for (std::ptrdiff_t g = gap_begin; g < gap_end; ++g) {
        const double w = static_cast<double>(g - left) / span;
        series[g] = std::clamp(v0 + (v1 - v0) * w, 0.0, 1.0);
        kinds[g] = FillKind::kLinear;
      }
    }
  }
  return kinds;
}

ImputeResult ImputeSequence(const LandmarkSequence& seq, const ImputeConfig& cfg) {
  cfg.Validate();
  ImputeResult result{seq, {}};
  const std::size_t frames = seq.frame_count();
  Series xs(frames), ys(frames);
  for (std::size_t l = 0; l < seq.landmark_count(); ++l) {
    for (std::size_t t = 0; t < frames; ++t) {
      if (seq.present(t, l)) {
        xs[t] = seq.x(t, l);
        ys[t] = seq.y(t, l);
      } else {
        xs[t].reset();
        ys[t].reset();
      }
    }
    const auto kinds = ImputeSeries(xs, cfg);
    ImputeSeries(ys, cfg);
    for (std::size_t t = 0; t < frames; ++t) {
      switch (kinds[t]) {
        case FillKind::kObserved:
          break;
        case FillKind::kCubic:
          ++result.stats.filled_cubic;
          result.sequence.Set(t, l, {*xs[t], *ys[t]});
          break;
        case FillKind::kLinear:
          ++result.stats.filled_linear;
          result.sequence.Set(t, l, {*xs[t], *ys[t]});
          break;
        case FillKind::kMissing:
          ++result.stats.left_missing;
          break;
      }
    }
  }
  return result;
}

}  // namespace skelimg
