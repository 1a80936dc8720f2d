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

#ifndef A11Y_ANALYTICS_HPP_
#define A11Y_ANALYTICS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "a11y/checks.hpp"

namespace a11y::analytics {

struct AnalyticsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Version pair does not describe the same app.
struct MismatchedAppError : AnalyticsError {
  using AnalyticsError::AnalyticsError;
};

enum class Market { kGooglePlay, kFDroid };

std::string_view market_name(Market market);
Market market_from_name(std::string_view name);

// One audited app version. "activities" (launched activity names) and
// "node_inventory" (activity -> resource ids present on its screen) are
// optional; when given they sharpen version comparisons.
struct AppRecord {
  std::string app_id;
  Market market = Market::kGooglePlay;
  std::string category;
  std::string version;
  int total_activities = 0;
  int launched_activities = 0;
  std::vector<std::string> activities;
  std::map<std::string, std::vector<std::string>> node_inventory;
  std::vector<checks::Issue> issues;
};

struct IssueDataset {
  std::vector<AppRecord> apps;
};

nlohmann::ordered_json app_record_to_json(const AppRecord& record);
AppRecord app_record_from_json(const nlohmann::json& j);

// One record per line. Validates per-record invariants: launched count
// within total, and issue activities within the launched set when activity
// names are given.
IssueDataset load_dataset_jsonl(std::string_view text);
std::string dataset_to_jsonl(const IssueDataset& dataset);

struct MarketSlice {
  std::int64_t apps = 0;
  std::int64_t apps_with_issues = 0;
  std::int64_t activities = 0;
  std::int64_t launched = 0;
  std::int64_t flawed_pages = 0;  // distinct (app, activity) with issues
  std::int64_t issues = 0;

  // Fractions in [0, 1]; 0 when the denominator is 0.
  double apps_with_issues_ratio = 0.0;
  double launched_ratio = 0.0;
  double flawed_page_ratio = 0.0;  // flawed pages over launched pages
  double issues_per_flawed_app = 0.0;
  double issues_per_flawed_page = 0.0;
};

struct SummaryStats {
  MarketSlice total;
  MarketSlice google_play;
  MarketSlice fdroid;
};

SummaryStats summarize(const IssueDataset& dataset);

struct TypeDistribution {
  std::array<std::int64_t, checks::kIssueTypeCount> counts{};
  // Shares sum to 1 when any issues exist.
  std::array<double, checks::kIssueTypeCount> shares{};
};

TypeDistribution type_distribution(const IssueDataset& dataset);

// Rows are app categories (sorted, categories with no issues omitted);
// each issue type column is normalized to sum to 1 over the categories.
struct CategoryMatrix {
  std::vector<std::string> categories;
  std::vector<std::array<std::int64_t, checks::kIssueTypeCount>> counts;
  std::vector<std::array<double, checks::kIssueTypeCount>> shares;
};

CategoryMatrix category_matrix(const IssueDataset& dataset);

// Rows are flagged component classes (simple names), ranked by total issue
// count descending then name; each row is normalized to sum to 1.
struct ComponentMatrix {
  std::vector<std::string> components;
  std::vector<std::int64_t> totals;
  std::vector<std::array<std::int64_t, checks::kIssueTypeCount>> counts;
  std::vector<std::array<double, checks::kIssueTypeCount>> shares;
};

ComponentMatrix component_matrix(const IssueDataset& dataset,
                                 std::size_t max_rows = 0);

struct Histogram {
  double lo = 0.0;
  double bin_width = 0.0;
  double hi = 0.0;  // values >= hi land in overflow
  std::vector<std::int64_t> counts;
  std::int64_t overflow = 0;
};

// Contrast ratios of flagged text and image regions, 0.25-wide bins over
// [1, 4.5), per market plus combined.
struct ContrastStats {
  Histogram total;
  Histogram google_play;
  Histogram fdroid;
};

ContrastStats contrast_histogram(const IssueDataset& dataset);

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

// Flagged touch target sizes: 5dp-wide bins over [0, 48) with an overflow
// bucket, plus quartiles (linear interpolation between order statistics).
struct TouchSizeStats {
  Histogram width;
  Histogram height;
  Quartiles width_quartiles;
  Quartiles height_quartiles;
};

TouchSizeStats touch_size_stats(const IssueDataset& dataset);

struct ColorPairCount {
  std::string foreground;  // "#RRGGBB"
  std::string background;
  std::int64_t count = 0;

  bool operator==(const ColorPairCount&) const = default;
};

// Most frequent ordered (foreground, background) pairs among flagged
// contrast issues; ties broken by hex codes.
std::vector<ColorPairCount> top_color_pairs(const IssueDataset& dataset,
                                            std::size_t k);

enum class DiffStatus { kUnchanged, kIncreased, kDecreased };

std::string_view diff_status_name(DiffStatus status);

// Issues matched between versions by (activity, type, anchor) where the
// anchor is the resource id when present, the node path otherwise.
// A vanished issue whose activity is gone from the new version was removed
// with its feature; one whose anchor node persists was fixed.
struct VersionDiff {
  DiffStatus status = DiffStatus::kUnchanged;
  std::vector<checks::Issue> fixed;
  std::vector<checks::Issue> feature_removed;
  std::vector<checks::Issue> introduced;
};

VersionDiff version_diff(const AppRecord& old_version,
                         const AppRecord& new_version);

// CSV renderings (plot-ready). Numbers use fixed formatting so output is
// byte-stable.
std::string summary_csv(const SummaryStats& stats);
std::string type_distribution_csv(const TypeDistribution& dist);
std::string category_matrix_csv(const CategoryMatrix& matrix);
std::string component_matrix_csv(const ComponentMatrix& matrix);
std::string contrast_csv(const ContrastStats& stats);
std::string touch_size_csv(const TouchSizeStats& stats);
std::string touch_size_quartiles_csv(const TouchSizeStats& stats);
std::string top_color_pairs_csv(const std::vector<ColorPairCount>& pairs);

nlohmann::ordered_json summary_to_json(const SummaryStats& stats);
nlohmann::ordered_json version_diff_to_json(const VersionDiff& diff);

}  // namespace a11y::analytics

#endif  // A11Y_ANALYTICS_HPP_
