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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "skelimg/augment.hpp"
#include "skelimg/bench.hpp"
#include "skelimg/encode.hpp"
#include "skelimg/errors.hpp"
#include "skelimg/eval.hpp"
#include "skelimg/impute.hpp"
#include "skelimg/selection.hpp"
#include "skelimg/sequence_io.hpp"

namespace py = pybind11;
using namespace skelimg;

namespace {

using Coords = py::array_t<double, py::array::c_style | py::array::forcecast>;

// (T, L, 2) float64 array; MISSING cells are NaN.
Coords ToNumpy(const LandmarkSequence& seq) {
  const auto t = static_cast<py::ssize_t>(seq.frame_count());
  const auto l = static_cast<py::ssize_t>(seq.landmark_count());
  Coords arr({t, l, py::ssize_t{2}});
  auto v = arr.mutable_unchecked<3>();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (py::ssize_t f = 0; f < t; ++f) {
    for (py::ssize_t k = 0; k < l; ++k) {
      const bool p = seq.present(f, k);
      v(f, k, 0) = p ? seq.x(f, k) : nan;
      v(f, k, 1) = p ? seq.y(f, k) : nan;
    }
  }
  return arr;
}

std::vector<LandmarkId> ParseLayout(const std::vector<std::string>& stems) {
  std::vector<LandmarkId> layout;
  layout.reserve(stems.size());
  for (const std::string& stem : stems) {
    const auto cut = stem.rfind('_');
    const auto part = cut == std::string::npos ? std::nullopt : ParsePart(stem.substr(0, cut));
    if (!part) throw ValidationError("bad landmark name '" + stem + "'");
    layout.push_back({*part, std::stoi(stem.substr(cut + 1))});
  }
  return layout;
}

LandmarkSequence FromNumpy(const Coords& arr, std::optional<std::vector<std::string>> layout) {
  if (arr.ndim() != 3 || arr.shape(2) != 2) {
    throw ValidationError("expected an array of shape (frames, landmarks, 2)");
  }
  auto v = arr.unchecked<3>();
  LandmarkSequence seq =
      layout ? LandmarkSequence(ParseLayout(*layout), static_cast<std::size_t>(arr.shape(0)))
             : LandmarkSequence::Canonical(static_cast<std::size_t>(arr.shape(0)));
  if (static_cast<py::ssize_t>(seq.landmark_count()) != arr.shape(1)) {
    throw ValidationError("array has " + std::to_string(arr.shape(1)) + " landmarks, layout has " +
                          std::to_string(seq.landmark_count()));
  }
  for (py::ssize_t f = 0; f < arr.shape(0); ++f) {
    for (py::ssize_t k = 0; k < arr.shape(1); ++k) {
      const double x = v(f, k, 0);
      const double y = v(f, k, 1);
      if (std::isnan(x) || std::isnan(y)) continue;
      seq.Set(f, k, {x, y});
    }
  }
  return seq;
}

std::vector<std::string> LayoutNames(const LandmarkSequence& seq) {
  std::vector<std::string> out;
  for (const LandmarkId& id : seq.layout()) out.push_back(ColumnStem(id));
  return out;
}

py::array_t<std::uint8_t> ImageArray(const SkeletonImage& img) {
  py::array_t<std::uint8_t> arr({static_cast<py::ssize_t>(img.height),
                                 static_cast<py::ssize_t>(img.width),
                                 static_cast<py::ssize_t>(SkeletonImage::kChannels)});
  std::copy(img.pixels.begin(), img.pixels.end(), arr.mutable_data());
  return arr;
}

ImputeConfig MakeImpute(int window, int cubic_min_points, bool allow_extrapolation) {
  ImputeConfig cfg{window, cubic_min_points, allow_extrapolation};
  cfg.Validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_skelimg, m) {
  m.doc() = "Landmark sequence to skeleton image pipeline";
  m.attr("__version__") = SKELIMG_VERSION;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<OrderingError>(m, "OrderingError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<LandmarkSequence>(m, "Sequence")
      .def_static("from_numpy", &FromNumpy, py::arg("coords"), py::arg("layout") = py::none(),
                  "Builds a sequence from a (T, L, 2) array; NaN marks MISSING. "
                  "The layout defaults to the canonical 543 landmarks.")
      .def("to_numpy", &ToNumpy)
      .def_property_readonly("frame_count", &LandmarkSequence::frame_count)
      .def_property_readonly("landmark_count", &LandmarkSequence::landmark_count)
      .def_property_readonly("layout", &LayoutNames)
      .def_property_readonly("missing_count", &LandmarkSequence::MissingCount)
      .def_readwrite("video_id", &LandmarkSequence::video_id)
      .def_readwrite("signer_id", &LandmarkSequence::signer_id)
      .def_readwrite("label", &LandmarkSequence::label)
      .def("to_csv", py::overload_cast<const LandmarkSequence&>(&FormatSequence))
      .def("__eq__", [](const LandmarkSequence& a, const LandmarkSequence& b) { return a == b; });

  m.def("read_sequence", [](const std::filesystem::path& p) { return ReadSequence(p); },
        py::arg("path"));
  m.def("parse_sequence", [](const std::string& text) {
    std::istringstream in(text);
    return ParseSequence(in);
  });
  m.def("write_sequence", [](const LandmarkSequence& s, const std::filesystem::path& p) {
    WriteSequence(s, p);
  });

  m.def("builtin_strategies", &BuiltinStrategies);
  m.def("manifest_ids", [](const std::string& name) {
    std::vector<std::string> out;
    for (const LandmarkId& id : LoadManifest(name).ids) out.push_back(ColumnStem(id));
    return out;
  }, py::arg("strategy"), "Ordered landmark names of a built-in strategy or manifest file.");
  m.def("apply_selection", [](const LandmarkSequence& s, const std::string& strategy) {
    return ApplySelection(s, LoadManifest(strategy));
  }, py::arg("sequence"), py::arg("strategy"));

  m.def("impute", [](const LandmarkSequence& s, int window, int cubic_min_points,
                     bool allow_extrapolation) {
    ImputeResult r = ImputeSequence(s, MakeImpute(window, cubic_min_points, allow_extrapolation));
    py::dict stats;
    stats["filled_cubic"] = r.stats.filled_cubic;
    stats["filled_linear"] = r.stats.filled_linear;
    stats["left_missing"] = r.stats.left_missing;
    return py::make_tuple(std::move(r.sequence), stats);
  }, py::arg("sequence"), py::arg("window") = 5, py::arg("cubic_min_points") = 4,
        py::arg("allow_extrapolation") = false, "Returns (imputed_sequence, stats).");

  m.def("encode", [](const LandmarkSequence& s, const std::string& pad) {
    EncodingSpec spec;
    if (pad == "repeat_last") {
      spec.pad = PadPolicy::kRepeatLast;
    } else if (pad != "zero_pad") {
      throw ValidationError("pad must be zero_pad or repeat_last");
    }
    return ImageArray(Encode(s, spec));
  }, py::arg("sequence"), py::arg("pad") = "zero_pad",
        "Skeleton image as a (L, 2*ceil(T/3), 3) uint8 array.");

  m.def("augment", [](const LandmarkSequence& s, std::uint64_t seed, const std::string& key,
                      std::uint64_t epoch, std::pair<double, double> rotation_deg,
                      std::pair<double, double> zoom, std::pair<double, double> translation,
                      double hflip_prob) {
    AugmentConfig cfg;
    cfg.seed = seed;
    cfg.rotation_deg = {rotation_deg.first, rotation_deg.second};
    cfg.zoom = {zoom.first, zoom.second};
    cfg.translation = {translation.first, translation.second};
    cfg.hflip_prob = hflip_prob;
    cfg.Validate();
    return Augment(s, cfg, SampleKeyFor(key.empty() ? s.video_id : key), epoch);
  }, py::arg("sequence"), py::arg("seed") = 0, py::arg("key") = "", py::arg("epoch") = 0,
        py::arg("rotation_deg") = std::pair{-10.0, 10.0}, py::arg("zoom") = std::pair{0.9, 1.1},
        py::arg("translation") = std::pair{-0.05, 0.05}, py::arg("hflip_prob") = 0.5);

  m.def("make_split_plan", [](std::vector<std::string> signers) {
    return SplitPlanToJson(MakeSplitPlan(std::move(signers))).dump();
  }, py::arg("signers"), "Split plan as a JSON string.");

  m.def("compute_metrics", [](const std::vector<std::string>& truth,
                              const std::vector<std::string>& predicted,
                              const std::vector<std::string>& classes) {
    return MetricsToJson(ComputeMetrics(truth, predicted, classes)).dump();
  }, py::arg("truth"), py::arg("predicted"), py::arg("classes"), "Metrics as a JSON string.");

  m.def("mean_sd", [](const std::vector<double>& values, bool sample) {
    const MeanSd r = ComputeMeanSd(values, sample ? SdKind::kSample : SdKind::kPopulation);
    return py::make_tuple(r.mean, r.sd);
  }, py::arg("values"), py::arg("sample") = false);

  m.def("compare_bench_reports", [](const std::string& candidate, const std::string& baseline) {
    return SpeedupToJson(CompareReports(BenchReportFromJson(nlohmann::json::parse(candidate)),
                                        BenchReportFromJson(nlohmann::json::parse(baseline))))
        .dump();
  }, py::arg("candidate_json"), py::arg("baseline_json"));
}
