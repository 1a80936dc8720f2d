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

#ifndef A11Y_CHECKS_HPP_
#define A11Y_CHECKS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "a11y/rational.hpp"
#include "a11y/ui_model.hpp"

namespace a11y::checks {

// The ten issue types, in canonical reporting order. Enum order, name table
// and serialized strings must stay in sync; analytics relies on the order
// being stable across runs and versions.
enum class IssueType {
  kItemLabel = 0,
  kItemTypeLabel,
  kEditableItemLabel,
  kUnsupportedItemType,
  kClickableItem,
  kItemDescription,
  kTouchTarget,
  kTextContrast,
  kImageContrast,
  kLink,
};

inline constexpr int kIssueTypeCount = 10;

std::string_view issue_type_name(IssueType type);
std::optional<IssueType> issue_type_from_name(std::string_view name);
const std::array<IssueType, kIssueTypeCount>& all_issue_types();

using MetricValue = std::variant<std::int64_t, double, std::string>;

struct Issue {
  IssueType type = IssueType::kItemLabel;
  std::string activity_name;
  std::vector<int> node_path;  // child indices from the root; root is []
  std::string node_class;
  std::string resource_id;
  ui::Bounds bounds;
  std::map<std::string, MetricValue> metrics;
  std::string message;

  bool operator==(const Issue&) const = default;
};

struct CheckConfig {
  double contrast_threshold = 3.0;
  Rational touch_target_min_dp{48};
  double overlap_coverage_threshold = 0.9;
  std::vector<std::string> redundant_type_words = {
      "button", "checkbox", "switch", "image", "view", "tab", "link"};
  // Class-name prefixes that accessibility services cannot handle. Deny
  // list; empty means the check reports nothing.
  std::vector<std::string> unsupported_classes;
};

struct CheckWarning {
  std::string check;
  std::string message;

  bool operator==(const CheckWarning&) const = default;
};

struct AuditResult {
  std::vector<Issue> issues;
  std::vector<CheckWarning> warnings;
};

// A node a screen reader will stop on: focusable, clickable or
// long-clickable, and enabled.
bool screen_reader_focusable(const ui::ViewNode& node);

bool is_text_class(std::string_view class_name);
bool is_image_class(std::string_view class_name);

// WCAG relative luminance of an sRGB color (0 for black, 1 for white).
double relative_luminance(ui::Color color);
// WCAG contrast ratio, in [1, 21]. Symmetric in its arguments.
double contrast_ratio(ui::Color a, ui::Color b);

// Rounding applied to every numeric metric before serialization. Threshold
// comparisons always use the unrounded value.
double round2(double value);

// Individual rules. Each returns issues ordered by the flagged node's
// pre-order position (pair rules order by pair, then by member).
AuditResult check_item_label(const ui::Screen& screen,
                             const CheckConfig& config);
AuditResult check_item_type_label(const ui::Screen& screen,
                                  const CheckConfig& config);
AuditResult check_editable_item_label(const ui::Screen& screen,
                                      const CheckConfig& config);
AuditResult check_unsupported_type(const ui::Screen& screen,
                                   const CheckConfig& config);
AuditResult check_clickable_overlap(const ui::Screen& screen,
                                    const CheckConfig& config);
AuditResult check_duplicate_description(const ui::Screen& screen,
                                        const CheckConfig& config);
AuditResult check_touch_target(const ui::Screen& screen,
                               const CheckConfig& config);
AuditResult check_text_contrast(const ui::Screen& screen,
                                const CheckConfig& config);
AuditResult check_image_contrast(const ui::Screen& screen,
                                 const CheckConfig& config);
AuditResult check_link(const ui::Screen& screen, const CheckConfig& config);

// Runs all ten rules in canonical order and concatenates their results.
AuditResult audit_screen(const ui::Screen& screen, const CheckConfig& config);

nlohmann::ordered_json issue_to_json(const Issue& issue);
Issue issue_from_json(const nlohmann::json& j);
std::string issues_to_jsonl(const std::vector<Issue>& issues);
std::vector<Issue> issues_from_jsonl(std::string_view text);

}  // namespace a11y::checks

#endif  // A11Y_CHECKS_HPP_
