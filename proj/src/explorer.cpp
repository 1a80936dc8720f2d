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

#include "a11y/explorer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "a11y/png_io.hpp"

namespace a11y::explorer {
namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
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

bool contains_crash_keyword(const std::string& lower_text) {
  return lower_text.find("has stopped") != std::string::npos ||
         lower_text.find("keeps stopping") != std::string::npos;
}

void scan_nodes(const ui::ViewNode& node, bool& crash, bool& allow,
                bool& deny) {
  for (const std::string* field : {&node.text, &node.content_desc}) {
    if (field->empty()) continue;
    std::string lower = to_lower(*field);
    if (contains_crash_keyword(lower)) crash = true;
  }
  if (node.clickable) {
    std::string label = to_lower(trim(node.text));
    if (label == "allow") allow = true;
    if (label == "deny") deny = true;
  }
  for (const ui::ViewNode& child : node.children)
    scan_nodes(child, crash, allow, deny);
}

std::optional<ui::Screen> load_screen_file(
    const std::filesystem::path& xml_path, std::vector<std::string>& problems) {
  std::ifstream in(xml_path, std::ios::binary);
  if (!in) {
    problems.push_back("cannot open screen '" + xml_path.string() + "'");
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  ui::Screen screen;
  try {
    screen = ui::parse_hierarchy(buffer.str());
  } catch (const std::exception& e) {
    problems.push_back("bad screen '" + xml_path.string() + "': " + e.what());
    return std::nullopt;
  }
  std::filesystem::path png_path = xml_path;
  png_path.replace_extension(".png");
  if (std::filesystem::exists(png_path)) {
    try {
      ui::PixelGrid grid = ui::decode_png(png_path);
      if (grid.width == screen.width_px && grid.height == screen.height_px)
        screen.pixels = std::move(grid);
      else
        problems.push_back("screenshot size mismatch for '" +
                           png_path.string() + "'");
    } catch (const ui::PngError& e) {
      problems.push_back(e.what());
    }
  }
  return screen;
}

}  // namespace

AppModel load_app_model(const std::filesystem::path& json_path) {
  std::ifstream in(json_path, std::ios::binary);
  if (!in)
    throw ExplorerError("cannot open app model '" + json_path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ExplorerError("bad app model '" + json_path.string() +
                        "': " + e.what());
  }
  AppModel model;
  model.package = j.value("package", "");
  model.base_dir = json_path.parent_path();
  std::set<std::string> names;
  for (const nlohmann::json& activity_json : j.at("activities")) {
    ActivitySpec spec;
    spec.name = activity_json.at("name").get<std::string>();
    if (!names.insert(spec.name).second)
      throw ExplorerError("duplicate activity '" + spec.name +
                          "' in app model");
    spec.screen = activity_json.value("screen", "");
    spec.requires_login = activity_json.value("requires_login", false);
    spec.crash_without_extras =
        activity_json.value("crash_without_extras", false);
    if (activity_json.contains("required_extras")) {
      for (const nlohmann::json& extra :
           activity_json.at("required_extras")) {
        std::string type_name = extra.at("type").get<std::string>();
        auto type = intent_flow::value_type_from_name(type_name);
        if (!type.has_value())
          throw ExplorerError("unknown extra type '" + type_name + "' for '" +
                              spec.name + "'");
        spec.required_extras.emplace_back(extra.at("key").get<std::string>(),
                                          *type);
      }
    }
    model.activities.push_back(std::move(spec));
  }
  if (j.contains("permission_gates")) {
    for (const auto& [activity, permissions] :
         j.at("permission_gates").items())
      model.permission_gates[activity] =
          permissions.get<std::vector<std::string>>();
  }
  return model;
}

ScreenState classify_screen_state(const ui::Screen& screen) {
  bool crash = false;
  bool allow = false;
  bool deny = false;
  scan_nodes(screen.root, crash, allow, deny);
  if (crash) return ScreenState::kCrash;
  if (allow && deny) return ScreenState::kPermissionDialog;
  return ScreenState::kNormal;
}

std::string_view outcome_name(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kLaunched: return "Launched";
    case OutcomeKind::kPermissionGranted: return "PermissionGranted";
    case OutcomeKind::kCrashed: return "Crashed";
    case OutcomeKind::kSkipped: return "Skipped";
  }
  return "Skipped";
}

std::string placeholder_value(intent_flow::ValueType type) {
  switch (type) {
    case intent_flow::ValueType::kString: return "xbot";
    case intent_flow::ValueType::kInteger:
    case intent_flow::ValueType::kLong:
    case intent_flow::ValueType::kFloat: return "1";
    case intent_flow::ValueType::kBoolean: return "true";
  }
  return "xbot";
}

ExploreResult explore_app(const AppModel& model,
                          const intent_flow::ExtractedParams* params,
                          const checks::CheckConfig& config) {
  ExploreResult result;
  result.total = static_cast<int>(model.activities.size());
  std::set<std::string> granted;  // permission gates already consumed

  for (const ActivitySpec& spec : model.activities) {
    LaunchRecord record;
    record.activity = spec.name;

    std::vector<std::pair<std::string, intent_flow::ValueType>> provided;
    if (params != nullptr) {
      if (const intent_flow::ActivityParams* ap = params->find(spec.name)) {
        for (const intent_flow::ExtraParam& extra : ap->extras) {
          provided.emplace_back(extra.key, extra.value_type);
          record.extras_sent.push_back(
              extra.key + "=" + placeholder_value(extra.value_type));
        }
      }
    }

    if (spec.requires_login) {
      record.outcome = OutcomeKind::kSkipped;
      record.detail = "requires an authenticated session";
      result.records.push_back(std::move(record));
      continue;
    }

    bool extras_met = true;
    for (const auto& required : spec.required_extras) {
      if (std::find(provided.begin(), provided.end(), required) ==
          provided.end()) {
        extras_met = false;
        break;
      }
    }
    if (!extras_met && spec.crash_without_extras) {
      record.outcome = OutcomeKind::kCrashed;
      record.detail = "missing required extras";
      record.lifecycle = {"onCreate"};
      result.records.push_back(std::move(record));
      continue;
    }

    bool gated = model.permission_gates.count(spec.name) > 0 &&
                 granted.insert(spec.name).second;
    record.outcome =
        gated ? OutcomeKind::kPermissionGranted : OutcomeKind::kLaunched;
    if (gated) {
      const auto& permissions = model.permission_gates.at(spec.name);
      std::string joined;
      for (const std::string& p : permissions) {
        if (!joined.empty()) joined += ' ';
        joined += p;
      }
      record.detail = "granted " + joined;
    }
    record.lifecycle = {"onCreate", "onStart", "onResume"};

    if (!spec.screen.empty()) {
      std::vector<std::string> problems;
      std::optional<ui::Screen> screen =
          load_screen_file(model.base_dir / spec.screen, problems);
      for (const std::string& problem : problems)
        result.warnings.push_back({"explore", problem});
      if (screen.has_value()) {
        switch (classify_screen_state(*screen)) {
          case ScreenState::kCrash:
            record.outcome = OutcomeKind::kCrashed;
            record.detail = "crash dialog on screen";
            record.screen = std::move(screen);
            break;
          case ScreenState::kPermissionDialog:
            record.outcome = OutcomeKind::kPermissionGranted;
            if (record.detail.empty())
              record.detail = "granted permission dialog on screen";
            record.screen = std::move(screen);
            break;
          case ScreenState::kNormal:
            record.screen = std::move(screen);
            break;
        }
      }
    }
    result.records.push_back(std::move(record));
  }

  for (LaunchRecord& record : result.records) {
    if (record.outcome == OutcomeKind::kLaunched ||
        record.outcome == OutcomeKind::kPermissionGranted) {
      ++result.launched;
      if (record.screen.has_value()) {
        if (record.screen->activity_name.empty())
          record.screen->activity_name = record.activity;
        checks::AuditResult audit =
            checks::audit_screen(*record.screen, config);
        std::move(audit.issues.begin(), audit.issues.end(),
                  std::back_inserter(result.issues));
        std::move(audit.warnings.begin(), audit.warnings.end(),
                  std::back_inserter(result.warnings));
      }
    }
  }
  return result;
}

}  // namespace a11y::explorer
