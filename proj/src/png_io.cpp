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

#include "skelimg/png_io.hpp"

#include <png.h>

#include <cstring>

#include "skelimg/errors.hpp"

namespace skelimg {

void WritePng(const SkeletonImage& image, const std::filesystem::path& path) {
  if (image.height == 0 || image.width == 0) {
    throw ValidationError("cannot write an empty image to " + path.string());
  }
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = PNG_FORMAT_RGB;
  const std::string file = path.string();
  if (!png_image_write_to_file(&png, file.c_str(), 0, image.pixels.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw IoError("PNG write failed for " + file + ": " + message);
  }
}

SkeletonImage ReadPng(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  const std::string file = path.string();
  if (!png_image_begin_read_from_file(&png, file.c_str())) {
    throw IoError("PNG read failed for " + file + ": " + png.message);
  }
  png.format = PNG_FORMAT_RGB;
  SkeletonImage image;
  image.height = png.height;
  image.width = png.width;
  image.pixels.resize(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, image.pixels.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw IoError("PNG decode failed for " + file + ": " + message);
  }
  return image;
}

}  // namespace skelimg
