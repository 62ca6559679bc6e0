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

#ifndef SKELIMG_SELECTION_HPP_
#define SKELIMG_SELECTION_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "skelimg/landmark.hpp"

namespace skelimg {

// Named, ordered landmark subset. The order of `ids` is the row order of the
// encoded skeleton image.
struct SelectionManifest {
  std::string name;
  std::vector<LandmarkId> ids;
  std::size_t expected_count = 0;
  int version = 1;
  // "verified", "transcribed" or "provisional"; informational only.
  std::string status;
  std::string source;

  std::size_t CountPart(BodyPart part) const;
};

// Built-in strategy keys: all, laines, arcanjo, asl-1st, asl-2nd.
const std::vector<std::string>& BuiltinStrategies();

// Accepts a built-in key (case-insensitive) or a path to a manifest JSON.
// Throws ValidationError on unknown names, duplicate ids, invalid ids or a
// count different from expected_count.
SelectionManifest LoadManifest(std::string_view name_or_path);
SelectionManifest ParseManifest(std::string_view json_text);
std::string ManifestToJson(const SelectionManifest& manifest);

// Projects `seq` onto `manifest.ids` in manifest order. Every manifest id must
// exist in the sequence layout.
LandmarkSequence ApplySelection(const LandmarkSequence& seq,
                                const SelectionManifest& manifest);

}  // namespace skelimg

#endif  // SKELIMG_SELECTION_HPP_
