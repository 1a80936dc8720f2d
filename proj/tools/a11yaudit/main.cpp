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

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "a11y/analytics.hpp"
#include "a11y/checks.hpp"
#include "a11y/explorer.hpp"
#include "a11y/intent_flow.hpp"
#include "a11y/kernels.hpp"
#include "a11y/manifest.hpp"
#include "a11y/ui_model.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out.write(content.data(),
            static_cast<std::streamsize>(content.size()));
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += "\"";
  return quoted;
}

std::string issues_to_csv(const std::vector<a11y::checks::Issue>& issues) {
  std::string out =
      "issue_type,activity_name,node_path,node_class,resource_id,bounds,"
      "metrics,message\n";
  for (const a11y::checks::Issue& issue : issues) {
    nlohmann::ordered_json j = a11y::checks::issue_to_json(issue);
    std::string path;
    for (int idx : issue.node_path) {
      if (!path.empty()) path += '.';
      path += std::to_string(idx);
    }
    out += csv_field(std::string(a11y::checks::issue_type_name(issue.type))) +
           "," + csv_field(issue.activity_name) + "," + csv_field(path) +
           "," + csv_field(issue.node_class) + "," +
           csv_field(issue.resource_id) + "," +
           csv_field(issue.bounds.str()) + "," +
           csv_field(j["metrics"].dump()) + "," + csv_field(issue.message) +
           "\n";
  }
  return out;
}

struct AuditOptions {
  std::string input_dir;
  std::string out_dir;
  int jobs = 1;
  std::string format = "jsonl";
  double contrast_threshold = 3.0;
  std::string touch_target_min_dp = "48";
  double overlap_threshold = 0.9;
  std::vector<std::string> unsupported_classes;
};

a11y::checks::CheckConfig config_from(const AuditOptions& options) {
  a11y::checks::CheckConfig config;
  config.contrast_threshold = options.contrast_threshold;
  config.touch_target_min_dp =
      a11y::Rational::parse(options.touch_target_min_dp);
  config.overlap_coverage_threshold = options.overlap_threshold;
  config.unsupported_classes = options.unsupported_classes;
  return config;
}

int run_audit(const AuditOptions& options) {
  a11y::checks::CheckConfig config = config_from(options);
  a11y::ui::ScreenBundle bundle =
      a11y::ui::load_screen_bundle(options.input_dir);
  if (bundle.screens.empty() && bundle.warnings.empty())
    std::cerr << "warning: no screens under '" << options.input_dir << "'\n";

  struct PerScreen {
    a11y::checks::AuditResult result;
  };
  std::vector<PerScreen> audited(bundle.screens.size());

  int jobs = std::max(1, options.jobs);
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t index = cursor.fetch_add(1);
      if (index >= bundle.screens.size()) return;
      audited[index].result =
          a11y::checks::audit_screen(bundle.screens[index].screen, config);
    }
  };
  if (jobs == 1 || bundle.screens.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }

  // Merge in input order so output bytes never depend on scheduling.
  fs::path out_dir(options.out_dir);
  fs::create_directories(out_dir);
  nlohmann::ordered_json summary;
  std::array<std::int64_t, a11y::checks::kIssueTypeCount> counts{};
  std::int64_t issue_total = 0;
  nlohmann::ordered_json screens_json = nlohmann::ordered_json::array();
  nlohmann::ordered_json warnings_json = nlohmann::ordered_json::array();
  for (const std::string& warning : bundle.warnings)
    warnings_json.push_back({{"check", "load"}, {"message", warning}});

  for (std::size_t i = 0; i < bundle.screens.size(); ++i) {
    const a11y::ui::LoadedScreen& loaded = bundle.screens[i];
    const a11y::checks::AuditResult& result = audited[i].result;
    fs::path rel = fs::relative(loaded.xml_path, options.input_dir);
    fs::path issues_rel = rel;
    issues_rel.replace_extension(
        options.format == "csv" ? ".issues.csv" : ".issues.jsonl");
    std::string payload =
        options.format == "csv"
            ? issues_to_csv(result.issues)
            : a11y::checks::issues_to_jsonl(result.issues);
    write_file(out_dir / issues_rel, payload);
    for (const a11y::checks::Issue& issue : result.issues) {
      counts[static_cast<std::size_t>(issue.type)] += 1;
      ++issue_total;
    }
    for (const a11y::checks::CheckWarning& warning : result.warnings)
      warnings_json.push_back({{"check", warning.check},
                               {"source", rel.generic_string()},
                               {"message", warning.message}});
    screens_json.push_back(
        {{"source", rel.generic_string()},
         {"activity", loaded.screen.activity_name},
         {"issue_count", result.issues.size()},
         {"issues_file", issues_rel.generic_string()}});
  }

  summary["screen_count"] = bundle.screens.size();
  summary["issue_count"] = issue_total;
  nlohmann::ordered_json by_type = nlohmann::ordered_json::object();
  for (a11y::checks::IssueType type : a11y::checks::all_issue_types())
    by_type[std::string(a11y::checks::issue_type_name(type))] =
        counts[static_cast<std::size_t>(type)];
  summary["counts_by_type"] = std::move(by_type);
  summary["screens"] = std::move(screens_json);
  summary["warnings"] = warnings_json;
  write_file(out_dir / "summary.json", summary.dump(2) + "\n");

  for (const nlohmann::ordered_json& warning : warnings_json)
    std::cerr << "warning: " << warning["message"].get<std::string>() << "\n";
  return kExitOk;
}

struct ExtractOptions {
  std::string manifest_path;
  std::string ir_path;
  std::string out_path;
  std::string instrumented_out;
  bool list_activities = false;
};

int run_extract(const ExtractOptions& options) {
  std::string manifest_text = read_file(options.manifest_path);
  a11y::manifest::ParsedManifest parsed =
      a11y::manifest::parse_manifest(manifest_text);
  for (const std::string& warning : parsed.warnings)
    std::cerr << "warning: " << warning << "\n";

  if (!options.instrumented_out.empty()) {
    write_file(options.instrumented_out,
               a11y::manifest::instrument_exported(manifest_text));
  }
  if (options.list_activities) {
    for (const a11y::manifest::ActivityDecl& activity :
         parsed.model.activities)
      std::cout << activity.name << "\n";
    return kExitOk;
  }

  a11y::intent_flow::ProgramIR ir;
  const a11y::intent_flow::ProgramIR* ir_ptr = nullptr;
  if (!options.ir_path.empty()) {
    ir = a11y::intent_flow::parse_ir(read_file(options.ir_path));
    ir_ptr = &ir;
  } else {
    std::cerr << "warning: no IR given; extracting basic parameters only\n";
  }
  a11y::intent_flow::ExtractedParams params =
      a11y::intent_flow::extract_all(parsed.model, ir_ptr);
  std::string payload = a11y::intent_flow::params_to_json(params).dump(2);
  payload += "\n";
  if (options.out_path.empty())
    std::cout << payload;
  else
    write_file(options.out_path, payload);
  return kExitOk;
}

struct ExploreOptions {
  std::string model_path;
  std::string params_path;
  bool without_extras = false;
  std::string out_dir;
  AuditOptions audit;  // check thresholds reused
};

int run_explore(const ExploreOptions& options) {
  a11y::explorer::AppModel model =
      a11y::explorer::load_app_model(options.model_path);
  a11y::intent_flow::ExtractedParams params;
  const a11y::intent_flow::ExtractedParams* params_ptr = nullptr;
  if (!options.without_extras && !options.params_path.empty()) {
    params = a11y::intent_flow::params_from_json(
        nlohmann::ordered_json::parse(read_file(options.params_path)));
    params_ptr = &params;
  }
  a11y::checks::CheckConfig config = config_from(options.audit);
  a11y::explorer::ExploreResult result =
      a11y::explorer::explore_app(model, params_ptr, config);

  nlohmann::ordered_json coverage;
  coverage["total"] = result.total;
  coverage["launched"] = result.launched;
  coverage["coverage"] = result.coverage();
  nlohmann::ordered_json activities = nlohmann::ordered_json::array();
  for (const a11y::explorer::LaunchRecord& record : result.records) {
    activities.push_back(
        {{"name", record.activity},
         {"outcome", std::string(a11y::explorer::outcome_name(
                         record.outcome))},
         {"detail", record.detail},
         {"lifecycle", record.lifecycle},
         {"extras_sent", record.extras_sent}});
  }
  coverage["activities"] = std::move(activities);

  fs::path out_dir(options.out_dir);
  fs::create_directories(out_dir);
  write_file(out_dir / "coverage.json", coverage.dump(2) + "\n");
  write_file(out_dir / "issues.jsonl",
             a11y::checks::issues_to_jsonl(result.issues));
  for (const a11y::checks::CheckWarning& warning : result.warnings)
    std::cerr << "warning: [" << warning.check << "] " << warning.message
              << "\n";
  return kExitOk;
}

struct ReportOptions {
  std::string dataset_path;
  std::string out_dir;
  std::size_t top_pairs = 10;
  std::size_t max_components = 0;
};

int run_report(const ReportOptions& options) {
  a11y::analytics::IssueDataset dataset =
      a11y::analytics::load_dataset_jsonl(read_file(options.dataset_path));
  fs::path out_dir(options.out_dir);
  fs::create_directories(out_dir);

  a11y::analytics::SummaryStats stats = a11y::analytics::summarize(dataset);
  write_file(out_dir / "summary.csv", a11y::analytics::summary_csv(stats));
  write_file(out_dir / "summary.json",
             a11y::analytics::summary_to_json(stats).dump(2) + "\n");
  write_file(out_dir / "type_distribution.csv",
             a11y::analytics::type_distribution_csv(
                 a11y::analytics::type_distribution(dataset)));
  write_file(out_dir / "category_matrix.csv",
             a11y::analytics::category_matrix_csv(
                 a11y::analytics::category_matrix(dataset)));
  write_file(out_dir / "component_matrix.csv",
             a11y::analytics::component_matrix_csv(
                 a11y::analytics::component_matrix(dataset,
                                                   options.max_components)));
  write_file(out_dir / "contrast.csv",
             a11y::analytics::contrast_csv(
                 a11y::analytics::contrast_histogram(dataset)));
  a11y::analytics::TouchSizeStats touch =
      a11y::analytics::touch_size_stats(dataset);
  write_file(out_dir / "touch_size.csv",
             a11y::analytics::touch_size_csv(touch));
  write_file(out_dir / "touch_size_quartiles.csv",
             a11y::analytics::touch_size_quartiles_csv(touch));
  write_file(out_dir / "top_color_pairs.csv",
             a11y::analytics::top_color_pairs_csv(
                 a11y::analytics::top_color_pairs(dataset,
                                                  options.top_pairs)));
  return kExitOk;
}

struct DiffOptions {
  std::string old_path;
  std::string new_path;
  std::string out_path;
};

int run_diff(const DiffOptions& options) {
  a11y::analytics::AppRecord old_record = a11y::analytics::app_record_from_json(
      nlohmann::json::parse(read_file(options.old_path)));
  a11y::analytics::AppRecord new_record = a11y::analytics::app_record_from_json(
      nlohmann::json::parse(read_file(options.new_path)));
  a11y::analytics::VersionDiff diff =
      a11y::analytics::version_diff(old_record, new_record);
  std::string payload =
      a11y::analytics::version_diff_to_json(diff).dump(2) + "\n";
  if (options.out_path.empty())
    std::cout << payload;
  else
    write_file(options.out_path, payload);
  return kExitOk;
}

void add_check_flags(CLI::App* cmd, AuditOptions& options) {
  cmd->add_option("--contrast-threshold", options.contrast_threshold,
                  "Contrast ratio below which text or images are flagged")
      ->capture_default_str();
  cmd->add_option("--touch-target-min-dp", options.touch_target_min_dp,
                  "Minimum acceptable touch target side in dp")
      ->capture_default_str();
  cmd->add_option("--overlap-threshold", options.overlap_threshold,
                  "Fraction of the smaller node an overlap must cover")
      ->capture_default_str();
  cmd->add_option("--unsupported-class", options.unsupported_classes,
                  "Class prefix accessibility services cannot handle "
                  "(repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offline accessibility audit toolkit for Android UI captures"};
  app.require_subcommand(1);

  AuditOptions audit_options;
  CLI::App* audit = app.add_subcommand(
      "audit", "Audit a directory of screen captures");
  audit->add_option("input", audit_options.input_dir,
                    "Directory of hierarchy XML / screenshot pairs")
      ->required();
  audit->add_option("--out", audit_options.out_dir,
                    "Output directory for issue files and summary.json")
      ->required();
  audit->add_option("--jobs", audit_options.jobs,
                    "Worker threads (output is identical for any value)")
      ->capture_default_str();
  audit->add_option("--format", audit_options.format,
                    "Issue file format: jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();
  add_check_flags(audit, audit_options);

  ExtractOptions extract_options;
  CLI::App* extract = app.add_subcommand(
      "extract", "Extract launch parameters from a manifest and program IR");
  extract->add_option("--manifest", extract_options.manifest_path,
                      "AndroidManifest.xml path")
      ->required();
  extract->add_option("--ir", extract_options.ir_path,
                      "Program IR JSON path");
  extract->add_option("--out", extract_options.out_path,
                      "Write parameters JSON here instead of stdout");
  extract->add_option("--instrumented-manifest",
                      extract_options.instrumented_out,
                      "Write a copy of the manifest with every activity "
                      "exported");
  extract->add_flag("--list-activities", extract_options.list_activities,
                    "Print declared activity names and exit");

  ExploreOptions explore_options;
  CLI::App* explore = app.add_subcommand(
      "explore", "Replay an app model, launching every activity once");
  explore->add_option("--model", explore_options.model_path,
                      "App model JSON path")
      ->required();
  CLI::Option* params_opt =
      explore->add_option("--params", explore_options.params_path,
                          "Extracted parameters JSON to launch with");
  explore->add_flag("--without-extras", explore_options.without_extras,
                    "Launch with no extras even if --params is given")
      ->excludes(params_opt);
  explore->add_option("--out", explore_options.out_dir,
                      "Output directory for coverage.json and issues.jsonl")
      ->required();
  add_check_flags(explore, explore_options.audit);

  ReportOptions report_options;
  CLI::App* report = app.add_subcommand(
      "report", "Aggregate a JSONL dataset of audited apps into tables");
  report->add_option("--dataset", report_options.dataset_path,
                     "App records, one JSON object per line")
      ->required();
  report->add_option("--out", report_options.out_dir,
                     "Output directory for CSV tables and summary.json")
      ->required();
  report->add_option("--top-pairs", report_options.top_pairs,
                     "How many color pairs to rank")
      ->capture_default_str();
  report->add_option("--max-components", report_options.max_components,
                     "Limit component matrix rows (0 = all)")
      ->capture_default_str();

  DiffOptions diff_options;
  CLI::App* diff = app.add_subcommand(
      "diff", "Classify issue changes between two versions of one app");
  diff->add_option("--old", diff_options.old_path,
                   "App record JSON for the earlier version")
      ->required();
  diff->add_option("--new", diff_options.new_path,
                   "App record JSON for the later version")
      ->required();
  diff->add_option("--out", diff_options.out_path,
                   "Write the diff JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (audit->parsed()) return run_audit(audit_options);
    if (extract->parsed()) return run_extract(extract_options);
    if (explore->parsed()) return run_explore(explore_options);
    if (report->parsed()) return run_report(report_options);
    if (diff->parsed()) return run_diff(diff_options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
