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

#ifndef A11Y_PNG_IO_HPP_
#define A11Y_PNG_IO_HPP_

#include <filesystem>
#include <stdexcept>

#include "a11y/ui_model.hpp"

namespace a11y::ui {

struct PngError : UiModelError {
  using UiModelError::UiModelError;
};

// Decodes any PNG to straight RGBA.
PixelGrid decode_png(const std::filesystem::path& path);

// Encoder used by fixture generation and tools.
void write_png(const std::filesystem::path& path, const PixelGrid& grid);

}  // namespace a11y::ui

#endif  // A11Y_PNG_IO_HPP_
