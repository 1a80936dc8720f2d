/*
 * Copyright (C) 2026 The a11yaudit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "a11y/png_io.hpp"

#include <png.h>

#include <cstring>

namespace a11y::ui {

PixelGrid decode_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw PngError("cannot read PNG '" + path.string() +
                   "': " + image.message);
  }
  image.format = PNG_FORMAT_RGBA;
  PixelGrid grid;
  grid.width = static_cast<int>(image.width);
  grid.height = static_cast<int>(image.height);
  grid.rgba.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, grid.rgba.data(), 0, nullptr)) {
    std::string message = image.message;
    png_image_free(&image);
    throw PngError("cannot decode PNG '" + path.string() + "': " + message);
  }
  return grid;
}

void write_png(const std::filesystem::path& path, const PixelGrid& grid) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(grid.width);
  image.height = static_cast<png_uint_32>(grid.height);
  image.format = PNG_FORMAT_RGBA;
  if (grid.rgba.size() != PNG_IMAGE_SIZE(image))
    throw PngError("pixel buffer does not match " +
                   std::to_string(grid.width) + "x" +
                   std::to_string(grid.height));
  if (!png_image_write_to_file(&image, path.string().c_str(), 0,
                               grid.rgba.data(), 0, nullptr)) {
    throw PngError("cannot write PNG '" + path.string() +
                   "': " + image.message);
  }
}

}  // namespace a11y::ui
