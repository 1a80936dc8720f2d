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

#include "a11y/ui_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "a11y/kernels.hpp"
#include "a11y/png_io.hpp"
#include "a11y/xml.hpp"

namespace a11y::ui {
namespace {

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1])))
    --end;
  return std::string(s.substr(begin, end - begin));
}

int parse_int_strict(std::string_view s, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw UiModelError(std::string("bad ") + what + " value '" +
                       std::string(s) + "'");
  return value;
}

Bounds parse_bounds(const std::string& s) {
  // Exactly "[l,t][r,b]" with non-negative integers.
  int values[4];
  const char* p = s.data();
  const char* end = s.data() + s.size();
  auto expect = [&](char c) {
    if (p >= end || *p != c)
      throw MalformedBoundsError("malformed bounds '" + s + "'");
    ++p;
  };
  auto number = [&]() {
    int v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || next == p || v < 0)
      throw MalformedBoundsError("malformed bounds '" + s + "'");
    p = next;
    return v;
  };
  expect('[');
  values[0] = number();
  expect(',');
  values[1] = number();
  expect(']');
  expect('[');
  values[2] = number();
  expect(',');
  values[3] = number();
  expect(']');
  if (p != end) throw MalformedBoundsError("malformed bounds '" + s + "'");
  if (values[2] < values[0] || values[3] < values[1])
    throw MalformedBoundsError("inverted bounds '" + s + "'");
  return Bounds{values[0], values[1], values[2], values[3]};
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

ViewNode convert_node(const xml::Element& elem) {
  if (elem.name != "node")
    throw UiModelError("unexpected element <" + elem.name +
                       "> inside hierarchy");
  ViewNode node;
  node.class_name = elem.attribute_or("class", "");
  node.text = elem.attribute_or("text", "");
  node.content_desc = elem.attribute_or("content-desc", "");
  node.resource_id = elem.attribute_or("resource-id", "");
  const xml::Attribute* bounds_attr = elem.find_attribute("bounds");
  if (bounds_attr == nullptr)
    throw MalformedBoundsError("node missing bounds attribute");
  node.bounds = parse_bounds(bounds_attr->value);
  node.clickable = elem.attribute_or("clickable", "false") == "true";
  node.long_clickable = elem.attribute_or("long-clickable", "false") == "true";
  node.focusable = elem.attribute_or("focusable", "false") == "true";
  node.enabled = elem.attribute_or("enabled", "true") == "true";
  if (elem.find_attribute("editable") != nullptr)
    node.editable = elem.attribute_or("editable", "") == "true";
  else
    node.editable = ends_with(node.class_name, "EditText");
  std::string urls = elem.attribute_or("link-urls", "");
  std::size_t i = 0;
  while (i < urls.size()) {
    while (i < urls.size() &&
           std::isspace(static_cast<unsigned char>(urls[i])))
      ++i;
    std::size_t begin = i;
    while (i < urls.size() &&
           !std::isspace(static_cast<unsigned char>(urls[i])))
      ++i;
    if (i > begin) node.link_urls.push_back(urls.substr(begin, i - begin));
  }
  for (const xml::Element& child : elem.children)
    node.children.push_back(convert_node(child));
  return node;
}

void serialize_node(const ViewNode& node, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "<node class=\"" + xml::escape_attribute(node.class_name) + "\"";
  if (!node.text.empty())
    out += " text=\"" + xml::escape_attribute(node.text) + "\"";
  if (!node.content_desc.empty())
    out += " content-desc=\"" + xml::escape_attribute(node.content_desc) +
           "\"";
  if (!node.resource_id.empty())
    out += " resource-id=\"" + xml::escape_attribute(node.resource_id) + "\"";
  out += " bounds=\"" + node.bounds.str() + "\"";
  auto flag = [&](const char* name, bool value) {
    out += std::string(" ") + name + "=\"" + (value ? "true" : "false") +
           "\"";
  };
  flag("clickable", node.clickable);
  flag("long-clickable", node.long_clickable);
  flag("focusable", node.focusable);
  flag("enabled", node.enabled);
  flag("editable", node.editable);
  if (!node.link_urls.empty()) {
    std::string joined;
    for (const std::string& url : node.link_urls) {
      if (!joined.empty()) joined += ' ';
      joined += url;
    }
    out += " link-urls=\"" + xml::escape_attribute(joined) + "\"";
  }
  if (node.children.empty()) {
    out += " />\n";
    return;
  }
  out += ">\n";
  for (const ViewNode& child : node.children)
    serialize_node(child, depth + 1, out);
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "</node>\n";
}

}  // namespace

std::string Color::hex() const {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02X%02X%02X", r, g, b);
  return buf;
}

Color Color::from_hex(std::string_view s) {
  if (!s.empty() && s[0] == '#') s = s.substr(1);
  if (s.size() != 6) throw UiModelError("bad color '" + std::string(s) + "'");
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw UiModelError("bad color '" + std::string(s) + "'");
  };
  auto byte = [&](int i) {
    return static_cast<std::uint8_t>(nibble(s[i]) * 16 + nibble(s[i + 1]));
  };
  return Color{byte(0), byte(2), byte(4)};
}

std::string Bounds::str() const {
  return "[" + std::to_string(left) + "," + std::to_string(top) + "][" +
         std::to_string(right) + "," + std::to_string(bottom) + "]";
}

Rational px_to_dp(std::int64_t px, int density_dpi) {
  if (density_dpi <= 0)
    throw UiModelError("density must be positive, got " +
                       std::to_string(density_dpi));
  return Rational(px * 160, density_dpi);
}

std::string speakable_text(const ViewNode& node) {
  std::string desc = trim(node.content_desc);
  if (!desc.empty()) return desc;
  return trim(node.text);
}

Screen parse_hierarchy(std::string_view xml_text) {
  xml::Document doc = xml::parse(xml_text);
  Screen screen;
  const xml::Element* root_node = nullptr;
  if (doc.root.name == "hierarchy") {
    screen.activity_name = doc.root.attribute_or("activity", "");
    if (doc.root.has_attribute("density-dpi")) {
      screen.density_dpi = parse_int_strict(
          doc.root.attribute_or("density-dpi", ""), "density-dpi");
      if (screen.density_dpi <= 0)
        throw UiModelError("density-dpi must be positive");
    }
    if (doc.root.has_attribute("width"))
      screen.width_px =
          parse_int_strict(doc.root.attribute_or("width", ""), "width");
    if (doc.root.has_attribute("height"))
      screen.height_px =
          parse_int_strict(doc.root.attribute_or("height", ""), "height");
    for (const xml::Element& child : doc.root.children) {
      if (child.name != "node")
        throw UiModelError("unexpected element <" + child.name +
                           "> inside hierarchy");
      if (root_node != nullptr)
        throw UiModelError("hierarchy has more than one root node");
      root_node = &child;
    }
    if (root_node == nullptr)
      throw MissingHierarchyError("hierarchy has no <node> element");
  } else if (doc.root.name == "node") {
    root_node = &doc.root;
  } else {
    throw MissingHierarchyError("no <node> element in document (root is <" +
                                doc.root.name + ">)");
  }
  screen.root = convert_node(*root_node);
  if (screen.width_px == 0) screen.width_px = screen.root.bounds.width();
  if (screen.height_px == 0) screen.height_px = screen.root.bounds.height();
  return screen;
}

std::string serialize_hierarchy(const Screen& screen) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<hierarchy activity=\"" +
         xml::escape_attribute(screen.activity_name) + "\" density-dpi=\"" +
         std::to_string(screen.density_dpi) + "\" width=\"" +
         std::to_string(screen.width_px) + "\" height=\"" +
         std::to_string(screen.height_px) + "\">\n";
  serialize_node(screen.root, 1, out);
  out += "</hierarchy>\n";
  return out;
}

RegionColors sample_region_colors(const PixelGrid& grid,
                                  const Bounds& bounds) {
  int x0 = std::max(bounds.left, 0);
  int y0 = std::max(bounds.top, 0);
  int x1 = std::min(bounds.right, grid.width);
  int y1 = std::min(bounds.bottom, grid.height);
  std::int64_t region_pixels =
      (x1 > x0 && y1 > y0)
          ? static_cast<std::int64_t>(x1 - x0) * (y1 - y0)
          : 0;
  if (region_pixels < 4)
    throw DegenerateRegionError("region " + bounds.str() +
                                " has fewer than 4 screenshot pixels");

  std::size_t count = static_cast<std::size_t>(region_pixels);
  std::vector<std::uint8_t> raw(count * 4);
  std::size_t row_bytes = static_cast<std::size_t>(x1 - x0) * 4;
  for (int y = y0; y < y1; ++y) {
    const std::uint8_t* src =
        grid.rgba.data() +
        (static_cast<std::size_t>(y) * grid.width + x0) * 4;
    std::copy(src, src + row_bytes,
              raw.data() + static_cast<std::size_t>(y - y0) * row_bytes);
  }
  std::vector<std::uint8_t> composited(count * 4);
  kernels::composite_over_white(raw.data(), count, composited.data());

  auto [min_key, max_key] = kernels::luma_key_minmax(composited.data(), count);
  auto key_color = [](std::uint64_t key) {
    return Color{static_cast<std::uint8_t>((key >> 16) & 0xFF),
                 static_cast<std::uint8_t>((key >> 8) & 0xFF),
                 static_cast<std::uint8_t>(key & 0xFF)};
  };
  if (min_key == max_key) {
    Color only = key_color(min_key);
    return RegionColors{only, only, true};
  }

  // 2-means on RGB. Seeds are the darkest and brightest pixels under the
  // total luma-then-RGB order, so the result does not depend on pixel order.
  Color seed0 = key_color(min_key);
  Color seed1 = key_color(max_key);
  int c0[3] = {seed0.r, seed0.g, seed0.b};
  int c1[3] = {seed1.r, seed1.g, seed1.b};
  for (int iter = 0; iter < 20; ++iter) {
    kernels::ClusterAccum acc =
        kernels::assign_two_clusters(composited.data(), count, c0, c1);
    int n0[3] = {c0[0], c0[1], c0[2]};
    int n1[3] = {c1[0], c1[1], c1[2]};
    for (int ch = 0; ch < 3; ++ch) {
      // Round-half-up mean; an empty cluster keeps its previous centroid.
      if (acc.count[0] > 0)
        n0[ch] = static_cast<int>((acc.sum[0][ch] + acc.count[0] / 2) /
                                  acc.count[0]);
      if (acc.count[1] > 0)
        n1[ch] = static_cast<int>((acc.sum[1][ch] + acc.count[1] / 2) /
                                  acc.count[1]);
    }
    bool stable = n0[0] == c0[0] && n0[1] == c0[1] && n0[2] == c0[2] &&
                  n1[0] == c1[0] && n1[1] == c1[1] && n1[2] == c1[2];
    c0[0] = n0[0]; c0[1] = n0[1]; c0[2] = n0[2];
    c1[0] = n1[0]; c1[1] = n1[1]; c1[2] = n1[2];
    if (stable) break;
  }
  kernels::ClusterAccum final_acc =
      kernels::assign_two_clusters(composited.data(), count, c0, c1);

  Color color0{static_cast<std::uint8_t>(c0[0]),
               static_cast<std::uint8_t>(c0[1]),
               static_cast<std::uint8_t>(c0[2])};
  Color color1{static_cast<std::uint8_t>(c1[0]),
               static_cast<std::uint8_t>(c1[1]),
               static_cast<std::uint8_t>(c1[2])};
  bool zero_is_fg;
  if (final_acc.count[0] != final_acc.count[1]) {
    zero_is_fg = final_acc.count[0] < final_acc.count[1];
  } else {
    // Equal populations: the darker centroid is the foreground.
    zero_is_fg = kernels::pixel_sort_key(color0.r, color0.g, color0.b) <=
                 kernels::pixel_sort_key(color1.r, color1.g, color1.b);
  }
  RegionColors result;
  result.foreground = zero_is_fg ? color0 : color1;
  result.background = zero_is_fg ? color1 : color0;
  return result;
}

ScreenBundle load_screen_bundle(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw UiModelError("screen bundle '" + dir.string() +
                       "' is not a directory");
  std::vector<fs::path> xml_files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml")
      xml_files.push_back(entry.path());
  }
  std::sort(xml_files.begin(), xml_files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.generic_string() < b.generic_string();
            });

  ScreenBundle bundle;
  for (const fs::path& xml_path : xml_files) {
    std::string text;
    {
      std::FILE* f = std::fopen(xml_path.string().c_str(), "rb");
      if (f == nullptr) {
        bundle.warnings.push_back("skipping " + xml_path.string() +
                                  ": cannot open");
        continue;
      }
      char buf[4096];
      std::size_t n;
      while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) text.append(buf, n);
      std::fclose(f);
    }
    LoadedScreen loaded;
    loaded.xml_path = xml_path;
    try {
      loaded.screen = parse_hierarchy(text);
    } catch (const std::exception& e) {
      bundle.warnings.push_back("skipping " + xml_path.string() + ": " +
                                e.what());
      continue;
    }
    fs::path png_path = xml_path;
    png_path.replace_extension(".png");
    if (fs::exists(png_path)) {
      try {
        PixelGrid grid = decode_png(png_path);
        if (grid.width == loaded.screen.width_px &&
            grid.height == loaded.screen.height_px) {
          loaded.screen.pixels = std::move(grid);
        } else {
          bundle.warnings.push_back(
              png_path.string() + ": screenshot is " +
              std::to_string(grid.width) + "x" + std::to_string(grid.height) +
              " but screen is " + std::to_string(loaded.screen.width_px) +
              "x" + std::to_string(loaded.screen.height_px) +
              "; ignoring pixels");
        }
      } catch (const PngError& e) {
        bundle.warnings.push_back(std::string(e.what()) +
                                  "; ignoring pixels");
      }
    }
    bundle.screens.push_back(std::move(loaded));
  }
  return bundle;
}

}  // namespace a11y::ui
