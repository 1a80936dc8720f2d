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

#ifndef A11Y_INTENT_FLOW_HPP_
#define A11Y_INTENT_FLOW_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "a11y/manifest.hpp"

namespace a11y::intent_flow {

struct IrError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Three-address style statements in single-pass form: a variable is defined
// before any use within the statement list.
enum class Op { kConstString, kMove, kCall };

struct Statement {
  Op op = Op::kConstString;
  std::string dest;              // "" for result-less calls
  std::string value;             // const_string payload
  std::string src;               // move source
  std::string callee;            // dotted name; last segment is the method
  std::string receiver;          // call receiver variable or "this"
  std::vector<std::string> args;
};

struct Method {
  std::string name;       // simple name, e.g. "onCreate"
  std::string signature;  // globally unique id
  std::vector<Statement> statements;
};

struct IrClass {
  std::string name;  // fully qualified
  std::vector<Method> methods;
};

struct ProgramIR {
  std::vector<IrClass> classes;
  // caller signature -> callee signature
  std::vector<std::pair<std::string, std::string>> call_edges;

  const IrClass* find_class(std::string_view name) const;
  const Method* find_method(std::string_view signature) const;
};

// Parses and validates the IR: signatures must be unique and every call
// graph edge must reference existing signatures.
ProgramIR load_ir_json(const nlohmann::json& j);
ProgramIR parse_ir(std::string_view text);

// Activity lifecycle entry points, in invocation order.
const std::array<std::string_view, 8>& lifecycle_callbacks();
bool is_lifecycle_callback(std::string_view method_name);

enum class ValueType { kString, kInteger, kLong, kFloat, kBoolean };
enum class Provenance { kDirect, kBundle };

std::string_view value_type_name(ValueType type);
std::optional<ValueType> value_type_from_name(std::string_view name);
std::string_view provenance_name(Provenance provenance);

// Classifies a callee's last dotted segment as an extras accessor.
// getStringExtra/getIntExtra/getLongExtra/getFloatExtra/getBooleanExtra read
// the intent directly; getString/getInt/getLong/getFloat/getBoolean read a
// Bundle obtained from getExtras().
std::optional<std::pair<ValueType, Provenance>> extras_getter_type(
    std::string_view callee);

// Resolves the variable used at statements[use_index].args[arg] (or the
// receiver for arg < 0) to a constant string by walking definitions
// backwards through moves. Returns nullopt when the chain leaves constants.
std::optional<std::string> trace_constant(const Method& method,
                                          std::size_t use_index,
                                          const std::string& var);

// True when var at use_index holds the result of a getExtras() call,
// possibly through moves.
bool traces_to_extras_bundle(const Method& method, std::size_t use_index,
                             const std::string& var);

struct ExtraParam {
  std::string key;
  ValueType value_type = ValueType::kString;
  Provenance provenance = Provenance::kDirect;
  std::string found_in;  // method signature containing the accessor

  bool operator==(const ExtraParam&) const = default;
};

// Walks every method reachable from the activity's lifecycle callbacks
// through the call graph (callee direction, at most 10 hops, cycle safe) and
// collects each extras accessor whose key resolves to a constant.
// Deduplicated by (key, value type), first find wins.
std::vector<ExtraParam> extract_extras_params(
    const ProgramIR& ir, const std::string& activity_class);

struct ActivityParams {
  manifest::BasicParams basic;
  std::vector<ExtraParam> extras;

  bool operator==(const ActivityParams&) const = default;
};

struct ExtractedParams {
  // Manifest declaration order.
  std::vector<std::pair<std::string, ActivityParams>> activities;

  const ActivityParams* find(std::string_view activity) const;
};

// Joins manifest-declared launch data with IR-derived extras. ir may be
// null (basic params only).
ExtractedParams extract_all(const manifest::ManifestModel& model,
                            const ProgramIR* ir);

nlohmann::ordered_json params_to_json(const ExtractedParams& params);
ExtractedParams params_from_json(const nlohmann::ordered_json& j);

}  // namespace a11y::intent_flow

#endif  // A11Y_INTENT_FLOW_HPP_
