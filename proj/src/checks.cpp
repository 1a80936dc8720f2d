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

#include "a11y/checks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace a11y::checks {
namespace {

constexpr std::array<std::string_view, kIssueTypeCount> kTypeNames = {
    "ItemLabel",        "ItemTypeLabel", "EditableItemLabel",
    "UnsupportedItemType", "ClickableItem", "ItemDescription",
    "TouchTarget",      "TextContrast",  "ImageContrast",
    "Link",
};

struct FlatNode {
  const ui::ViewNode* node;
  std::vector<int> path;
};

void flatten_into(const ui::ViewNode& node, std::vector<int>& path,
                  std::vector<FlatNode>& out) {
  out.push_back({&node, path});
  for (int i = 0; i < static_cast<int>(node.children.size()); ++i) {
    path.push_back(i);
    flatten_into(node.children[static_cast<std::size_t>(i)], path, out);
    path.pop_back();
  }
}

std::vector<FlatNode> flatten(const ui::ViewNode& root) {
  std::vector<FlatNode> out;
  std::vector<int> path;
  flatten_into(root, path, out);
  return out;
}

std::string path_string(const std::vector<int>& path) {
  std::string out;
  for (int idx : path) {
    if (!out.empty()) out += '.';
    out += std::to_string(idx);
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1])))
    --end;
  return std::string(s.substr(begin, end - begin));
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string format2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

Issue base_issue(IssueType type, const ui::Screen& screen,
                 const FlatNode& flat) {
  Issue issue;
  issue.type = type;
  issue.activity_name = screen.activity_name;
  issue.node_path = flat.path;
  issue.node_class = flat.node->class_name;
  issue.resource_id = flat.node->resource_id;
  issue.bounds = flat.node->bounds;
  return issue;
}

// True when a's path is a proper prefix of b's path.
bool is_ancestor(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() >= b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin());
}

bool has_uri_scheme(std::string_view url) {
  if (url.empty() || !std::isalpha(static_cast<unsigned char>(url[0])))
    return false;
  std::size_t i = 1;
  while (i < url.size()) {
    char c = url[i];
    if (c == ':') return true;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' &&
        c != '-' && c != '.')
      return false;
    ++i;
  }
  return false;
}

void contrast_rule(const ui::Screen& screen, const CheckConfig& config,
                   bool image_mode, AuditResult& out) {
  IssueType type =
      image_mode ? IssueType::kImageContrast : IssueType::kTextContrast;
  std::string check_name(issue_type_name(type));
  std::vector<FlatNode> nodes = flatten(screen.root);
  std::vector<const FlatNode*> eligible;
  for (const FlatNode& flat : nodes) {
    bool image = is_image_class(flat.node->class_name);
    if (image_mode) {
      if (image) eligible.push_back(&flat);
    } else {
      if (!image && is_text_class(flat.node->class_name) &&
          !trim(flat.node->text).empty())
        eligible.push_back(&flat);
    }
  }
  if (eligible.empty()) return;
  if (!screen.pixels.has_value()) {
    out.warnings.push_back(
        {check_name, "no screenshot; contrast not evaluated"});
    return;
  }
  for (const FlatNode* flat : eligible) {
    ui::RegionColors colors;
    try {
      colors = ui::sample_region_colors(*screen.pixels, flat->node->bounds);
    } catch (const ui::DegenerateRegionError& e) {
      out.warnings.push_back({check_name, e.what()});
      continue;
    }
    if (colors.uniform) {
      out.warnings.push_back(
          {check_name, "region " + flat->node->bounds.str() +
                           " is a single color; contrast not evaluated"});
      continue;
    }
    double ratio = contrast_ratio(colors.foreground, colors.background);
    if (ratio < config.contrast_threshold) {
      Issue issue = base_issue(type, screen, *flat);
      issue.metrics["background"] = colors.background.hex();
      issue.metrics["contrast_ratio"] = round2(ratio);
      issue.metrics["foreground"] = colors.foreground.hex();
      issue.message = std::string(image_mode ? "Image" : "Text") +
                      " contrast ratio " + format2(ratio) + " is below " +
                      format2(config.contrast_threshold) + " (" +
                      colors.foreground.hex() + " on " +
                      colors.background.hex() + ")";
      out.issues.push_back(std::move(issue));
    }
  }
}

}  // namespace

std::string_view issue_type_name(IssueType type) {
  return kTypeNames[static_cast<std::size_t>(type)];
}

std::optional<IssueType> issue_type_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kTypeNames.size(); ++i)
    if (kTypeNames[i] == name) return static_cast<IssueType>(i);
  return std::nullopt;
}

const std::array<IssueType, kIssueTypeCount>& all_issue_types() {
  static const std::array<IssueType, kIssueTypeCount> types = [] {
    std::array<IssueType, kIssueTypeCount> t{};
    for (int i = 0; i < kIssueTypeCount; ++i) t[i] = static_cast<IssueType>(i);
    return t;
  }();
  return types;
}

bool screen_reader_focusable(const ui::ViewNode& node) {
  return (node.focusable || node.clickable || node.long_clickable) &&
         node.enabled;
}

bool is_text_class(std::string_view class_name) {
  return ends_with(class_name, "TextView") ||
         ends_with(class_name, "EditText") ||
         ends_with(class_name, "Button") ||
         ends_with(class_name, "CheckedTextView");
}

bool is_image_class(std::string_view class_name) {
  return ends_with(class_name, "ImageView") ||
         ends_with(class_name, "ImageButton");
}

double relative_luminance(ui::Color color) {
  auto linear = [](std::uint8_t v) {
    double x = v / 255.0;
    return x <= 0.03928 ? x / 12.92 : std::pow((x + 0.055) / 1.055, 2.4);
  };
  return 0.2126 * linear(color.r) + 0.7152 * linear(color.g) +
         0.0722 * linear(color.b);
}

double contrast_ratio(ui::Color a, ui::Color b) {
  double la = relative_luminance(a);
  double lb = relative_luminance(b);
  double hi = std::max(la, lb);
  double lo = std::min(la, lb);
  return (hi + 0.05) / (lo + 0.05);
}

double round2(double value) { return std::round(value * 100.0) / 100.0; }

AuditResult check_item_label(const ui::Screen& screen,
                             const CheckConfig& /*config*/) {
  AuditResult out;
  for (const FlatNode& flat : flatten(screen.root)) {
    const ui::ViewNode& node = *flat.node;
    if (!screen_reader_focusable(node) || node.editable) continue;
    if (!ui::speakable_text(node).empty()) continue;
    Issue issue = base_issue(IssueType::kItemLabel, screen, flat);
    issue.message = "Item has no text alternative for screen readers";
    out.issues.push_back(std::move(issue));
  }
  return out;
}

AuditResult check_item_type_label(const ui::Screen& screen,
                                  const CheckConfig& config) {
  AuditResult out;
  std::vector<std::string> words;
  words.reserve(config.redundant_type_words.size());
  for (const std::string& w : config.redundant_type_words)
    words.push_back(to_lower(w));
  for (const FlatNode& flat : flatten(screen.root)) {
    std::string spoken = ui::speakable_text(*flat.node);
    if (spoken.empty()) continue;
    std::string lower = to_lower(spoken);
    // Whole-word scan; separators are any non-alphanumeric characters.
    std::string matched;
    std::size_t i = 0;
    while (i < lower.size() && matched.empty()) {
      while (i < lower.size() &&
             !std::isalnum(static_cast<unsigned char>(lower[i])))
        ++i;
      std::size_t begin = i;
      while (i < lower.size() &&
             std::isalnum(static_cast<unsigned char>(lower[i])))
        ++i;
      if (i > begin) {
        std::string token = lower.substr(begin, i - begin);
        if (std::find(words.begin(), words.end(), token) != words.end())
          matched = token;
      }
    }
    if (matched.empty()) continue;
    Issue issue = base_issue(IssueType::kItemTypeLabel, screen, flat);
    issue.metrics["redundant_word"] = matched;
    issue.message =
        "Label '" + spoken + "' repeats the item type word '" + matched + "'";
    out.issues.push_back(std::move(issue));
  }
  return out;
}

AuditResult check_editable_item_label(const ui::Screen& screen,
                                      const CheckConfig& /*config*/) {
  AuditResult out;
  for (const FlatNode& flat : flatten(screen.root)) {
    const ui::ViewNode& node = *flat.node;
    if (!node.editable) continue;
    std::string desc = trim(node.content_desc);
    if (desc.empty()) continue;
    Issue issue = base_issue(IssueType::kEditableItemLabel, screen, flat);
    issue.metrics["content_desc"] = desc;
    issue.message =
        "Editable item has a content description; screen readers announce "
        "it instead of the typed text";
    out.issues.push_back(std::move(issue));
  }
  return out;
}

AuditResult check_unsupported_type(const ui::Screen& screen,
                                   const CheckConfig& config) {
  AuditResult out;
  if (config.unsupported_classes.empty()) return out;
  for (const FlatNode& flat : flatten(screen.root)) {
    const ui::ViewNode& node = *flat.node;
    if (!screen_reader_focusable(node)) continue;
    const std::string* hit = nullptr;
    for (const std::string& prefix : config.unsupported_classes) {
      if (!prefix.empty() &&
          node.class_name.compare(0, prefix.size(), prefix) == 0) {
        hit = &prefix;
        break;
      }
    }
    if (hit == nullptr) continue;
    Issue issue = base_issue(IssueType::kUnsupportedItemType, screen, flat);
    issue.metrics["matched_prefix"] = *hit;
    issue.message = "Item type " + node.class_name +
                    " is not supported by accessibility services";
    out.issues.push_back(std::move(issue));
  }
  return out;
}

AuditResult check_clickable_overlap(const ui::Screen& screen,
                                    const CheckConfig& config) {
  AuditResult out;
  std::vector<FlatNode> nodes = flatten(screen.root);
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ui::ViewNode& node = *nodes[i].node;
    if (node.clickable || node.long_clickable) eligible.push_back(i);
  }
  for (std::size_t a = 0; a < eligible.size(); ++a) {
    for (std::size_t b = a + 1; b < eligible.size(); ++b) {
      const FlatNode& fa = nodes[eligible[a]];
      const FlatNode& fb = nodes[eligible[b]];
      if (is_ancestor(fa.path, fb.path) || is_ancestor(fb.path, fa.path))
        continue;
      std::int64_t area_a = fa.node->bounds.area();
      std::int64_t area_b = fb.node->bounds.area();
      if (area_a == 0 || area_b == 0) continue;
      const ui::Bounds& ba = fa.node->bounds;
      const ui::Bounds& bb = fb.node->bounds;
      std::int64_t iw = std::min(ba.right, bb.right) -
                        std::max(ba.left, bb.left);
      std::int64_t ih = std::min(ba.bottom, bb.bottom) -
                        std::max(ba.top, bb.top);
      if (iw <= 0 || ih <= 0) continue;
      std::int64_t inter = iw * ih;
      std::int64_t smaller = std::min(area_a, area_b);
      double coverage = static_cast<double>(inter) /
                        static_cast<double>(smaller);
      if (coverage < config.overlap_coverage_threshold) continue;
      auto emit = [&](const FlatNode& self, const FlatNode& partner) {
        Issue issue = base_issue(IssueType::kClickableItem, screen, self);
        issue.metrics["coverage"] = round2(coverage);
        issue.metrics["overlap_partner_path"] = path_string(partner.path);
        issue.message = "Clickable item overlaps another clickable item at " +
                        partner.node->bounds.str();
        out.issues.push_back(std::move(issue));
      };
      emit(fa, fb);
      emit(fb, fa);
    }
  }
  return out;
}

AuditResult check_duplicate_description(const ui::Screen& screen,
                                        const CheckConfig& /*config*/) {
  AuditResult out;
  std::vector<FlatNode> nodes = flatten(screen.root);
  // Spoken text -> pre-order indices of screen-reader-focusable nodes.
  std::map<std::string, std::vector<std::size_t>> groups;
  std::vector<std::string> spoken_by_index(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!screen_reader_focusable(*nodes[i].node)) continue;
    std::string spoken = ui::speakable_text(*nodes[i].node);
    if (spoken.empty()) continue;
    spoken_by_index[i] = spoken;
    groups[spoken].push_back(i);
  }
  // Group ids are 0-based in order of each group's first appearance.
  std::map<std::string, std::int64_t> group_id;
  std::vector<std::pair<std::size_t, const std::string*>> firsts;
  for (const auto& [text, members] : groups) {
    if (members.size() >= 2) firsts.push_back({members.front(), &text});
  }
  std::sort(firsts.begin(), firsts.end());
  for (std::size_t k = 0; k < firsts.size(); ++k)
    group_id[*firsts[k].second] = static_cast<std::int64_t>(k);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string& spoken = spoken_by_index[i];
    if (spoken.empty()) continue;
    auto it = group_id.find(spoken);
    if (it == group_id.end()) continue;
    Issue issue = base_issue(IssueType::kItemDescription, screen, nodes[i]);
    issue.metrics["duplicate_group"] = it->second;
    issue.metrics["speakable_text"] = spoken;
    issue.message = "Description '" + spoken +
                    "' is announced for more than one item";
    out.issues.push_back(std::move(issue));
  }
  return out;
}

AuditResult check_touch_target(const ui::Screen& screen,
                               const CheckConfig& config) {
  AuditResult out;
  for (const FlatNode& flat : flatten(screen.root)) {
    const ui::ViewNode& node = *flat.node;
    if (!node.clickable || !node.enabled) continue;
    Rational width_dp = ui::px_to_dp(node.bounds.width(), screen.density_dpi);
    Rational height_dp =
        ui::px_to_dp(node.bounds.height(), screen.density_dpi);
    // Exact rational comparison; 48dp itself is acceptable.
    bool narrow = width_dp < config.touch_target_min_dp;
    bool short_ = height_dp < config.touch_target_min_dp;
    if (!narrow && !short_) continue;
    Issue issue = base_issue(IssueType::kTouchTarget, screen, flat);
    issue.metrics["height_dp"] = round2(height_dp.to_double());
    issue.metrics["min_dp"] = round2(config.touch_target_min_dp.to_double());
    issue.metrics["width_dp"] = round2(width_dp.to_double());
    issue.message = "Touch target is " + format2(width_dp.to_double()) + "x" +
                    format2(height_dp.to_double()) + "dp; minimum is " +
                    format2(config.touch_target_min_dp.to_double()) + "dp";
    out.issues.push_back(std::move(issue));
  }
  return out;
}

AuditResult check_text_contrast(const ui::Screen& screen,
                                const CheckConfig& config) {
  AuditResult out;
  contrast_rule(screen, config, /*image_mode=*/false, out);
  return out;
}

AuditResult check_image_contrast(const ui::Screen& screen,
                                 const CheckConfig& config) {
  AuditResult out;
  contrast_rule(screen, config, /*image_mode=*/true, out);
  return out;
}

AuditResult check_link(const ui::Screen& screen,
                       const CheckConfig& /*config*/) {
  AuditResult out;
  for (const FlatNode& flat : flatten(screen.root)) {
    const ui::ViewNode& node = *flat.node;
    if (node.link_urls.empty()) continue;
    const std::string* bad = nullptr;
    for (const std::string& url : node.link_urls) {
      if (!has_uri_scheme(url)) {
        bad = &url;
        break;
      }
    }
    if (bad == nullptr) continue;
    Issue issue = base_issue(IssueType::kLink, screen, flat);
    issue.metrics["url"] = *bad;
    issue.message = "Link target '" + *bad + "' has no URI scheme";
    out.issues.push_back(std::move(issue));
  }
  return out;
}

AuditResult audit_screen(const ui::Screen& screen, const CheckConfig& config) {
  using CheckFn = AuditResult (*)(const ui::Screen&, const CheckConfig&);
  static constexpr std::array<CheckFn, kIssueTypeCount> kChecks = {
      check_item_label,        check_item_type_label,
      check_editable_item_label, check_unsupported_type,
      check_clickable_overlap, check_duplicate_description,
      check_touch_target,      check_text_contrast,
      check_image_contrast,    check_link,
  };
  AuditResult out;
  for (CheckFn fn : kChecks) {
    AuditResult part = fn(screen, config);
    std::move(part.issues.begin(), part.issues.end(),
              std::back_inserter(out.issues));
    std::move(part.warnings.begin(), part.warnings.end(),
              std::back_inserter(out.warnings));
  }
  return out;
}

nlohmann::ordered_json issue_to_json(const Issue& issue) {
  nlohmann::ordered_json j;
  j["issue_type"] = std::string(issue_type_name(issue.type));
  j["activity_name"] = issue.activity_name;
  j["node_path"] = issue.node_path;
  j["node_class"] = issue.node_class;
  j["resource_id"] = issue.resource_id;
  j["bounds"] = issue.bounds.str();
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  for (const auto& [key, value] : issue.metrics) {
    std::visit([&](const auto& v) { metrics[key] = v; }, value);
  }
  j["metrics"] = std::move(metrics);
  j["message"] = issue.message;
  return j;
}

Issue issue_from_json(const nlohmann::json& j) {
  Issue issue;
  std::string type_name = j.at("issue_type").get<std::string>();
  std::optional<IssueType> type = issue_type_from_name(type_name);
  if (!type.has_value())
    throw std::runtime_error("unknown issue_type '" + type_name + "'");
  issue.type = *type;
  issue.activity_name = j.at("activity_name").get<std::string>();
  issue.node_path = j.at("node_path").get<std::vector<int>>();
  issue.node_class = j.at("node_class").get<std::string>();
  issue.resource_id = j.value("resource_id", "");
  std::string bounds = j.at("bounds").get<std::string>();
  int l, t, r, b;
  if (std::sscanf(bounds.c_str(), "[%d,%d][%d,%d]", &l, &t, &r, &b) != 4)
    throw std::runtime_error("bad bounds '" + bounds + "'");
  issue.bounds = ui::Bounds{l, t, r, b};
  if (j.contains("metrics")) {
    for (const auto& [key, value] : j.at("metrics").items()) {
      if (value.is_number_integer()) {
        issue.metrics[key] = value.get<std::int64_t>();
      } else if (value.is_number_float()) {
        issue.metrics[key] = value.get<double>();
      } else if (value.is_string()) {
        issue.metrics[key] = value.get<std::string>();
      } else {
        throw std::runtime_error("unsupported metric type for '" + key + "'");
      }
    }
  }
  issue.message = j.value("message", "");
  return issue;
}

std::string issues_to_jsonl(const std::vector<Issue>& issues) {
  std::string out;
  for (const Issue& issue : issues) {
    out += issue_to_json(issue).dump();
    out += '\n';
  }
  return out;
}

std::vector<Issue> issues_from_jsonl(std::string_view text) {
  std::vector<Issue> issues;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    issues.push_back(issue_from_json(nlohmann::json::parse(trimmed)));
  }
  return issues;
}

}  // namespace a11y::checks
