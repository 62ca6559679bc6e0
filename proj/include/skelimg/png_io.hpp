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

#ifndef SKELIMG_PNG_IO_HPP_
#define SKELIMG_PNG_IO_HPP_

#include <filesystem>

#include "skelimg/encode.hpp"

namespace skelimg {

// 8-bit RGB, non-interlaced, no timestamp chunk; identical images give
// identical bytes.
void WritePng(const SkeletonImage& image, const std::filesystem::path& path);

// Reads an 8-bit RGB PNG written by WritePng. Metadata fields stay empty.
SkeletonImage ReadPng(const std::filesystem::path& path);

}  // namespace skelimg

#endif  // SKELIMG_PNG_IO_HPP_
