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

#ifndef A11Y_MANIFEST_HPP_
#define A11Y_MANIFEST_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace a11y::manifest {

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two <activity> declarations resolve to the same fully qualified name.
struct DuplicateActivityError : ManifestError {
  using ManifestError::ManifestError;
};

struct IntentDataSpec {
  std::string scheme;
  std::string host;
  std::string path;
  std::string mime_type;

  bool operator==(const IntentDataSpec&) const = default;
};

struct IntentFilter {
  std::vector<std::string> actions;
  std::vector<std::string> categories;
  std::vector<IntentDataSpec> data;

  bool operator==(const IntentFilter&) const = default;
};

struct ActivityDecl {
  std::string name;  // fully qualified
  bool exported = false;
  std::vector<IntentFilter> intent_filters;

  bool operator==(const ActivityDecl&) const = default;
};

struct ManifestModel {
  std::string package;
  std::vector<ActivityDecl> activities;  // declaration order

  const ActivityDecl* find(std::string_view name) const;
};

struct ParsedManifest {
  ManifestModel model;
  std::vector<std::string> warnings;
};

// Resolves android:name against the package: a leading dot prepends the
// package, a name without any dot gets "package." prefixed, anything else is
// taken verbatim. <activity-alias> is reported as a warning and skipped.
ParsedManifest parse_manifest(std::string_view xml_text);

// Returns the manifest with android:exported="true" on every <activity>.
// Existing attribute values are rewritten in place, missing attributes are
// inserted after the last attribute; every other byte of the input is
// preserved. Idempotent.
std::string instrument_exported(std::string_view xml_text);

// Launch parameters that need no code analysis: the activity's declared
// actions, categories, data URIs (scheme://host/path) and MIME types,
// deduplicated in declaration order.
struct BasicParams {
  std::vector<std::string> actions;
  std::vector<std::string> categories;
  std::vector<std::string> data_uris;
  std::vector<std::string> mime_types;

  bool operator==(const BasicParams&) const = default;
};

BasicParams basic_params_for(const ActivityDecl& activity);

}  // namespace a11y::manifest

#endif  // A11Y_MANIFEST_HPP_
