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

#ifndef A11Y_UI_MODEL_HPP_
#define A11Y_UI_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "a11y/rational.hpp"

namespace a11y::ui {

struct UiModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dump has no <node> element at all.
struct MissingHierarchyError : UiModelError {
  using UiModelError::UiModelError;
};

// bounds attribute not of the form "[l,t][r,b]" with non-negative ints,
// right >= left and bottom >= top.
struct MalformedBoundsError : UiModelError {
  using UiModelError::UiModelError;
};

// Region with no pixels to sample (empty intersection with the screenshot,
// or fewer than 4 pixels).
struct DegenerateRegionError : UiModelError {
  using UiModelError::UiModelError;
};

struct Color {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Color&) const = default;

  std::string hex() const;                    // "#RRGGBB", uppercase
  static Color from_hex(std::string_view s);  // accepts "#RRGGBB" / "RRGGBB"
};

// Pixel-space rectangle, right/bottom exclusive.
struct Bounds {
  int left = 0;
  int top = 0;
  int right = 0;
  int bottom = 0;

  bool operator==(const Bounds&) const = default;

  int width() const { return right - left; }
  int height() const { return bottom - top; }
  std::int64_t area() const {
    return static_cast<std::int64_t>(width()) * height();
  }
  std::string str() const;
};

// Straight (non-premultiplied) RGBA rows, top to bottom.
struct PixelGrid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgba;

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
};

struct ViewNode {
  std::string class_name;
  std::string text;
  std::string content_desc;
  std::string resource_id;
  Bounds bounds;
  bool clickable = false;
  bool long_clickable = false;
  bool focusable = false;
  bool enabled = true;
  bool editable = false;
  std::vector<std::string> link_urls;
  std::vector<ViewNode> children;

  bool operator==(const ViewNode&) const = default;
};

struct Screen {
  std::string activity_name;
  int density_dpi = 420;
  int width_px = 0;
  int height_px = 0;
  ViewNode root;
  std::optional<PixelGrid> pixels;

  // Structural equality; the screenshot is carried alongside the tree and
  // does not participate.
  bool same_hierarchy(const Screen& other) const {
    return activity_name == other.activity_name &&
           density_dpi == other.density_dpi && width_px == other.width_px &&
           height_px == other.height_px && root == other.root;
  }
};

// Exact density-independent size: dp = px * 160 / density.
Rational px_to_dp(std::int64_t px, int density_dpi);

// What a screen reader would announce: trimmed content description if
// non-empty, else trimmed text, else "".
std::string speakable_text(const ViewNode& node);

// Accepts either a <hierarchy> document wrapping a single <node>, or a bare
// <node> root. Missing density defaults to 420dpi; missing screen size falls
// back to the root node bounds.
Screen parse_hierarchy(std::string_view xml_text);

// Canonical form: stable attribute order and indentation, so equal
// hierarchies serialize to identical bytes.
std::string serialize_hierarchy(const Screen& screen);

struct RegionColors {
  Color foreground;
  Color background;
  // Region is a single flat color; foreground == background == that color.
  bool uniform = false;
};

// Dominant foreground/background pair of the screenshot area under bounds.
// Pixels are composited over white, then split by 2-means on RGB with
// deterministic seeding (the extreme-luminance pixels). The smaller cluster
// is the foreground; equal sizes fall to the darker centroid. Throws
// DegenerateRegionError when the clipped region has fewer than 4 pixels.
RegionColors sample_region_colors(const PixelGrid& grid, const Bounds& bounds);

struct LoadedScreen {
  std::filesystem::path xml_path;
  Screen screen;
};

struct ScreenBundle {
  std::vector<LoadedScreen> screens;
  std::vector<std::string> warnings;
};

// Loads every *.xml under dir (recursive, lexicographic path order) and
// attaches the sibling screenshot with the same stem when present. A missing
// or mismatched screenshot degrades to a warning, never an error.
ScreenBundle load_screen_bundle(const std::filesystem::path& dir);

}  // namespace a11y::ui

#endif  // A11Y_UI_MODEL_HPP_
