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

#include "a11y/manifest.hpp"

#include <algorithm>

#include "a11y/xml.hpp"

namespace a11y::manifest {
namespace {

std::string resolve_name(const std::string& package,
                         const std::string& declared) {
  if (declared.empty())
    throw ManifestError("activity with empty android:name");
  if (declared[0] == '.') return package + declared;
  if (declared.find('.') == std::string::npos)
    return package + "." + declared;
  return declared;
}

IntentFilter parse_filter(const xml::Element& elem) {
  IntentFilter filter;
  for (const xml::Element& child : elem.children) {
    if (child.name == "action") {
      filter.actions.push_back(child.attribute_or("android:name", ""));
    } else if (child.name == "category") {
      filter.categories.push_back(child.attribute_or("android:name", ""));
    } else if (child.name == "data") {
      IntentDataSpec data;
      data.scheme = child.attribute_or("android:scheme", "");
      data.host = child.attribute_or("android:host", "");
      data.path = child.attribute_or("android:path", "");
      if (data.path.empty())
        data.path = child.attribute_or("android:pathPrefix", "");
      data.mime_type = child.attribute_or("android:mimeType", "");
      filter.data.push_back(std::move(data));
    }
  }
  return filter;
}

void collect_activities(const xml::Element& elem, std::string_view source,
                        const std::string& package, ManifestModel& model,
                        std::vector<std::string>& warnings) {
  for (const xml::Element& child : elem.children) {
    if (child.name == "activity") {
      ActivityDecl activity;
      activity.name =
          resolve_name(package, child.attribute_or("android:name", ""));
      activity.exported =
          child.attribute_or("android:exported", "false") == "true";
      for (const xml::Element& sub : child.children)
        if (sub.name == "intent-filter")
          activity.intent_filters.push_back(parse_filter(sub));
      for (const ActivityDecl& existing : model.activities) {
        if (existing.name == activity.name) {
          auto [line, col] = xml::line_column(source, child.start_offset);
          throw DuplicateActivityError(
              "duplicate activity '" + activity.name + "' at line " +
              std::to_string(line) + ", column " + std::to_string(col));
        }
      }
      model.activities.push_back(std::move(activity));
    } else if (child.name == "activity-alias") {
      warnings.push_back("ignoring <activity-alias> '" +
                         child.attribute_or("android:name", "?") + "'");
    } else {
      collect_activities(child, source, package, model, warnings);
    }
  }
}

void append_unique(std::vector<std::string>& out, const std::string& value) {
  if (value.empty()) return;
  if (std::find(out.begin(), out.end(), value) == out.end())
    out.push_back(value);
}

}  // namespace

const ActivityDecl* ManifestModel::find(std::string_view name) const {
  for (const ActivityDecl& activity : activities)
    if (activity.name == name) return &activity;
  return nullptr;
}

ParsedManifest parse_manifest(std::string_view xml_text) {
  xml::Document doc = xml::parse(xml_text);
  if (doc.root.name != "manifest")
    throw ManifestError("root element is <" + doc.root.name +
                        ">, expected <manifest>");
  ParsedManifest out;
  out.model.package = doc.root.attribute_or("package", "");
  if (out.model.package.empty())
    throw ManifestError("manifest has no package attribute");
  for (const xml::Element& child : doc.root.children) {
    if (child.name != "application") continue;
    collect_activities(child, xml_text, out.model.package, out.model,
                       out.warnings);
  }
  return out;
}

std::string instrument_exported(std::string_view xml_text) {
  xml::Document doc = xml::parse(xml_text);

  struct Edit {
    std::size_t begin;
    std::size_t end;  // == begin for pure insertion
    std::string replacement;
  };
  std::vector<Edit> edits;

  // Walk the raw tree; only <activity> start tags are touched.
  auto visit = [&](auto&& self, const xml::Element& elem) -> void {
    if (elem.name == "activity") {
      const xml::Attribute* exported =
          elem.find_attribute("android:exported");
      if (exported == nullptr) {
        edits.push_back({elem.insert_offset, elem.insert_offset,
                         " android:exported=\"true\""});
      } else if (exported->value != "true") {
        edits.push_back({exported->value_begin, exported->value_end, "true"});
      }
    }
    for (const xml::Element& child : elem.children) self(self, child);
  };
  visit(visit, doc.root);

  std::sort(edits.begin(), edits.end(),
            [](const Edit& a, const Edit& b) { return a.begin < b.begin; });
  std::string out;
  out.reserve(xml_text.size() + edits.size() * 26);
  std::size_t cursor = 0;
  for (const Edit& edit : edits) {
    out.append(xml_text.substr(cursor, edit.begin - cursor));
    out.append(edit.replacement);
    cursor = edit.end;
  }
  out.append(xml_text.substr(cursor));
  return out;
}

BasicParams basic_params_for(const ActivityDecl& activity) {
  BasicParams params;
  for (const IntentFilter& filter : activity.intent_filters) {
    for (const std::string& action : filter.actions)
      append_unique(params.actions, action);
    for (const std::string& category : filter.categories)
      append_unique(params.categories, category);
    for (const IntentDataSpec& data : filter.data) {
      if (!data.scheme.empty()) {
        std::string uri = data.scheme;
        if (!data.host.empty()) {
          uri += "://" + data.host;
          uri += data.path;
        } else {
          uri += ":";
        }
        append_unique(params.data_uris, uri);
      }
      append_unique(params.mime_types, data.mime_type);
    }
  }
  return params;
}

}  // namespace a11y::manifest
