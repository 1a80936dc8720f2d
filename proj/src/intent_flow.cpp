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

#include "a11y/intent_flow.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace a11y::intent_flow {
namespace {

constexpr int kMaxCallDepth = 10;

std::string_view last_segment(std::string_view dotted) {
  std::size_t dot = dotted.rfind('.');
  return dot == std::string_view::npos ? dotted : dotted.substr(dot + 1);
}

Op op_from_name(const std::string& name) {
  if (name == "const_string") return Op::kConstString;
  if (name == "move") return Op::kMove;
  if (name == "call") return Op::kCall;
  throw IrError("unknown statement op '" + name + "'");
}

Statement statement_from_json(const nlohmann::json& j) {
  Statement stmt;
  stmt.op = op_from_name(j.at("op").get<std::string>());
  switch (stmt.op) {
    case Op::kConstString:
      stmt.dest = j.at("dest").get<std::string>();
      stmt.value = j.at("value").get<std::string>();
      break;
    case Op::kMove:
      stmt.dest = j.at("dest").get<std::string>();
      stmt.src = j.at("src").get<std::string>();
      break;
    case Op::kCall:
      stmt.callee = j.at("method").get<std::string>();
      stmt.receiver = j.value("receiver", "");
      stmt.dest = j.value("dest", "");
      if (j.contains("args"))
        stmt.args = j.at("args").get<std::vector<std::string>>();
      break;
  }
  return stmt;
}

// Index of the definition of var strictly before use_index, or npos.
std::size_t last_def_before(const Method& method, std::size_t use_index,
                            const std::string& var) {
  for (std::size_t i = use_index; i > 0; --i) {
    const Statement& stmt = method.statements[i - 1];
    if (!stmt.dest.empty() && stmt.dest == var) return i - 1;
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

const IrClass* ProgramIR::find_class(std::string_view name) const {
  for (const IrClass& cls : classes)
    if (cls.name == name) return &cls;
  return nullptr;
}

const Method* ProgramIR::find_method(std::string_view signature) const {
  for (const IrClass& cls : classes)
    for (const Method& method : cls.methods)
      if (method.signature == signature) return &method;
  return nullptr;
}

ProgramIR load_ir_json(const nlohmann::json& j) {
  ProgramIR ir;
  std::set<std::string> signatures;
  for (const nlohmann::json& class_json : j.at("classes")) {
    IrClass cls;
    cls.name = class_json.at("name").get<std::string>();
    if (class_json.contains("methods")) {
      for (const nlohmann::json& method_json : class_json.at("methods")) {
        Method method;
        method.name = method_json.at("name").get<std::string>();
        method.signature = method_json.at("signature").get<std::string>();
        if (!signatures.insert(method.signature).second)
          throw IrError("duplicate method signature '" + method.signature +
                        "'");
        if (method_json.contains("statements")) {
          for (const nlohmann::json& stmt_json :
               method_json.at("statements"))
            method.statements.push_back(statement_from_json(stmt_json));
        }
        cls.methods.push_back(std::move(method));
      }
    }
    ir.classes.push_back(std::move(cls));
  }
  if (j.contains("call_graph")) {
    for (const nlohmann::json& edge : j.at("call_graph")) {
      std::string from = edge.at("from").get<std::string>();
      std::string to = edge.at("to").get<std::string>();
      if (signatures.find(from) == signatures.end())
        throw IrError("call edge from unknown method '" + from + "'");
      if (signatures.find(to) == signatures.end())
        throw IrError("call edge to unknown method '" + to + "'");
      ir.call_edges.emplace_back(std::move(from), std::move(to));
    }
  }
  return ir;
}

ProgramIR parse_ir(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IrError(std::string("bad IR JSON: ") + e.what());
  }
  return load_ir_json(j);
}

const std::array<std::string_view, 8>& lifecycle_callbacks() {
  static const std::array<std::string_view, 8> kCallbacks = {
      "onCreate", "onStart",  "onResume",  "onRestart",
      "onPause",  "onStop",   "onDestroy", "onNewIntent",
  };
  return kCallbacks;
}

bool is_lifecycle_callback(std::string_view method_name) {
  const auto& callbacks = lifecycle_callbacks();
  return std::find(callbacks.begin(), callbacks.end(), method_name) !=
         callbacks.end();
}

std::string_view value_type_name(ValueType type) {
  switch (type) {
    case ValueType::kString: return "String";
    case ValueType::kInteger: return "Integer";
    case ValueType::kLong: return "Long";
    case ValueType::kFloat: return "Float";
    case ValueType::kBoolean: return "Boolean";
  }
  return "String";
}

std::optional<ValueType> value_type_from_name(std::string_view name) {
  if (name == "String") return ValueType::kString;
  if (name == "Integer") return ValueType::kInteger;
  if (name == "Long") return ValueType::kLong;
  if (name == "Float") return ValueType::kFloat;
  if (name == "Boolean") return ValueType::kBoolean;
  return std::nullopt;
}

std::string_view provenance_name(Provenance provenance) {
  return provenance == Provenance::kDirect ? "Direct" : "Bundle";
}

std::optional<std::pair<ValueType, Provenance>> extras_getter_type(
    std::string_view callee) {
  std::string_view name = last_segment(callee);
  if (name == "getStringExtra")
    return std::pair{ValueType::kString, Provenance::kDirect};
  if (name == "getIntExtra")
    return std::pair{ValueType::kInteger, Provenance::kDirect};
  if (name == "getLongExtra")
    return std::pair{ValueType::kLong, Provenance::kDirect};
  if (name == "getFloatExtra")
    return std::pair{ValueType::kFloat, Provenance::kDirect};
  if (name == "getBooleanExtra")
    return std::pair{ValueType::kBoolean, Provenance::kDirect};
  if (name == "getString")
    return std::pair{ValueType::kString, Provenance::kBundle};
  if (name == "getInt")
    return std::pair{ValueType::kInteger, Provenance::kBundle};
  if (name == "getLong")
    return std::pair{ValueType::kLong, Provenance::kBundle};
  if (name == "getFloat")
    return std::pair{ValueType::kFloat, Provenance::kBundle};
  if (name == "getBoolean")
    return std::pair{ValueType::kBoolean, Provenance::kBundle};
  return std::nullopt;
}

std::optional<std::string> trace_constant(const Method& method,
                                          std::size_t use_index,
                                          const std::string& var) {
  std::string current = var;
  std::size_t from = use_index;
  // Moves cannot cycle in single-pass form, but guard anyway.
  for (int hops = 0; hops < 1000; ++hops) {
    std::size_t def = last_def_before(method, from, current);
    if (def == static_cast<std::size_t>(-1)) return std::nullopt;
    const Statement& stmt = method.statements[def];
    switch (stmt.op) {
      case Op::kConstString:
        return stmt.value;
      case Op::kMove:
        current = stmt.src;
        from = def;
        break;
      case Op::kCall:
        return std::nullopt;
    }
  }
  return std::nullopt;
}

bool traces_to_extras_bundle(const Method& method, std::size_t use_index,
                             const std::string& var) {
  std::string current = var;
  std::size_t from = use_index;
  for (int hops = 0; hops < 1000; ++hops) {
    std::size_t def = last_def_before(method, from, current);
    if (def == static_cast<std::size_t>(-1)) return false;
    const Statement& stmt = method.statements[def];
    switch (stmt.op) {
      case Op::kConstString:
        return false;
      case Op::kMove:
        current = stmt.src;
        from = def;
        break;
      case Op::kCall:
        return last_segment(stmt.callee) == "getExtras";
    }
  }
  return false;
}

std::vector<ExtraParam> extract_extras_params(
    const ProgramIR& ir, const std::string& activity_class) {
  const IrClass* cls = ir.find_class(activity_class);
  std::vector<ExtraParam> out;
  if (cls == nullptr) return out;

  // Roots: the class's lifecycle callbacks, in callback order then
  // declaration order.
  std::deque<std::pair<const Method*, int>> queue;
  std::set<std::string> visited;
  for (std::string_view callback : lifecycle_callbacks()) {
    for (const Method& method : cls->methods) {
      if (method.name == callback && visited.insert(method.signature).second)
        queue.emplace_back(&method, 0);
    }
  }

  std::set<std::pair<std::string, ValueType>> seen;
  while (!queue.empty()) {
    auto [method, depth] = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < method->statements.size(); ++i) {
      const Statement& stmt = method->statements[i];
      if (stmt.op != Op::kCall) continue;
      auto getter = extras_getter_type(stmt.callee);
      if (!getter.has_value()) continue;
      auto [type, provenance] = *getter;
      if (provenance == Provenance::kBundle &&
          !traces_to_extras_bundle(*method, i, stmt.receiver))
        continue;
      if (stmt.args.empty()) continue;
      std::optional<std::string> key = trace_constant(*method, i, stmt.args[0]);
      if (!key.has_value()) continue;
      if (!seen.insert({*key, type}).second) continue;
      out.push_back(ExtraParam{*key, type, provenance, method->signature});
    }
    if (depth >= kMaxCallDepth) continue;
    for (const auto& [from, to] : ir.call_edges) {
      if (from != method->signature) continue;
      if (!visited.insert(to).second) continue;
      const Method* callee = ir.find_method(to);
      if (callee != nullptr) queue.emplace_back(callee, depth + 1);
    }
  }
  return out;
}

const ActivityParams* ExtractedParams::find(std::string_view activity) const {
  for (const auto& [name, params] : activities)
    if (name == activity) return &params;
  return nullptr;
}

ExtractedParams extract_all(const manifest::ManifestModel& model,
                            const ProgramIR* ir) {
  ExtractedParams out;
  for (const manifest::ActivityDecl& activity : model.activities) {
    ActivityParams params;
    params.basic = manifest::basic_params_for(activity);
    if (ir != nullptr)
      params.extras = extract_extras_params(*ir, activity.name);
    out.activities.emplace_back(activity.name, std::move(params));
  }
  return out;
}

nlohmann::ordered_json params_to_json(const ExtractedParams& params) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [name, activity] : params.activities) {
    nlohmann::ordered_json entry;
    entry["basic"] = {
        {"actions", activity.basic.actions},
        {"categories", activity.basic.categories},
        {"data_uris", activity.basic.data_uris},
        {"mime_types", activity.basic.mime_types},
    };
    nlohmann::ordered_json extras = nlohmann::ordered_json::array();
    for (const ExtraParam& extra : activity.extras) {
      extras.push_back({
          {"key", extra.key},
          {"value_type", std::string(value_type_name(extra.value_type))},
          {"provenance", std::string(provenance_name(extra.provenance))},
          {"found_in", extra.found_in},
      });
    }
    entry["extras"] = std::move(extras);
    j[name] = std::move(entry);
  }
  return j;
}

ExtractedParams params_from_json(const nlohmann::ordered_json& j) {
  ExtractedParams out;
  for (const auto& [name, entry] : j.items()) {
    ActivityParams params;
    if (entry.contains("basic")) {
      const nlohmann::ordered_json& basic = entry.at("basic");
      params.basic.actions =
          basic.value("actions", std::vector<std::string>{});
      params.basic.categories =
          basic.value("categories", std::vector<std::string>{});
      params.basic.data_uris =
          basic.value("data_uris", std::vector<std::string>{});
      params.basic.mime_types =
          basic.value("mime_types", std::vector<std::string>{});
    }
    if (entry.contains("extras")) {
      for (const nlohmann::ordered_json& extra_json : entry.at("extras")) {
        ExtraParam extra;
        extra.key = extra_json.at("key").get<std::string>();
        std::string type_name =
            extra_json.at("value_type").get<std::string>();
        std::optional<ValueType> type = value_type_from_name(type_name);
        if (!type.has_value())
          throw IrError("unknown value_type '" + type_name + "'");
        extra.value_type = *type;
        extra.provenance =
            extra_json.value("provenance", "Direct") == "Bundle"
                ? Provenance::kBundle
                : Provenance::kDirect;
        extra.found_in = extra_json.value("found_in", "");
        params.extras.push_back(std::move(extra));
      }
    }
    out.activities.emplace_back(name, std::move(params));
  }
  return out;
}

}  // namespace a11y::intent_flow
