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

#ifndef A11Y_EXPLORER_HPP_
#define A11Y_EXPLORER_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "a11y/checks.hpp"
#include "a11y/intent_flow.hpp"
#include "a11y/ui_model.hpp"

namespace a11y::explorer {

struct ExplorerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-activity behavior of a recorded app. Screens come from bundled
// hierarchy dumps; gates model what kept a real run from reaching the
// activity.
struct ActivitySpec {
  std::string name;
  std::vector<std::pair<std::string, intent_flow::ValueType>> required_extras;
  bool requires_login = false;
  // Launching without the required extras crashes instead of showing a
  // degraded screen.
  bool crash_without_extras = false;
  std::string screen;  // hierarchy XML path, relative to the model file
};

struct AppModel {
  std::string package;
  std::filesystem::path base_dir;
  std::vector<ActivitySpec> activities;  // declaration order
  // Activity -> permissions asked on first launch.
  std::map<std::string, std::vector<std::string>> permission_gates;
};

AppModel load_app_model(const std::filesystem::path& json_path);

enum class ScreenState { kNormal, kCrash, kPermissionDialog };

// Keyword classifier: any node text or description containing "has stopped"
// or "keeps stopping" (case-insensitive) is a crash dialog; otherwise a pair
// of clickable ALLOW/DENY buttons is a runtime permission dialog. Crash
// wins when both patterns appear.
ScreenState classify_screen_state(const ui::Screen& screen);

enum class OutcomeKind {
  kLaunched,
  kPermissionGranted,  // dialog accepted, then the screen loaded
  kCrashed,
  kSkipped,
};

std::string_view outcome_name(OutcomeKind kind);

// Value sent for a provided extra; matching is by key and type.
std::string placeholder_value(intent_flow::ValueType type);

struct LaunchRecord {
  std::string activity;
  OutcomeKind outcome = OutcomeKind::kSkipped;
  std::string detail;
  std::vector<std::string> lifecycle;    // callbacks in firing order
  std::vector<std::string> extras_sent;  // "key=value", launch order
  std::optional<ui::Screen> screen;      // present when a screen was shown
};

struct ExploreResult {
  std::vector<LaunchRecord> records;  // declaration order
  int total = 0;
  int launched = 0;  // kLaunched + kPermissionGranted
  std::vector<checks::Issue> issues;
  std::vector<checks::CheckWarning> warnings;

  double coverage() const {
    return total == 0 ? 0.0 : static_cast<double>(launched) / total;
  }
};

// Launches every declared activity once, in declaration order. params may
// be null ("no extras" run). Launched screens are audited with config.
// Providing more extras never turns a launch into a failure.
ExploreResult explore_app(const AppModel& model,
                          const intent_flow::ExtractedParams* params,
                          const checks::CheckConfig& config);

}  // namespace a11y::explorer

#endif  // A11Y_EXPLORER_HPP_
