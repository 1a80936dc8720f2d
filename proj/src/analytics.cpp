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

#include "a11y/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace a11y::analytics {
namespace {

std::string format(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, value);
  return buf;
}

double metric_number(const checks::Issue& issue, const std::string& key) {
  auto it = issue.metrics.find(key);
  if (it == issue.metrics.end()) return std::nan("");
  if (const double* d = std::get_if<double>(&it->second)) return *d;
  if (const std::int64_t* i = std::get_if<std::int64_t>(&it->second))
    return static_cast<double>(*i);
  return std::nan("");
}

const std::string* metric_string(const checks::Issue& issue,
                                 const std::string& key) {
  auto it = issue.metrics.find(key);
  if (it == issue.metrics.end()) return nullptr;
  return std::get_if<std::string>(&it->second);
}

bool is_contrast_issue(const checks::Issue& issue) {
  return issue.type == checks::IssueType::kTextContrast ||
         issue.type == checks::IssueType::kImageContrast;
}

void finish_slice(MarketSlice& slice) {
  auto ratio = [](std::int64_t num, std::int64_t den) {
    return den == 0 ? 0.0
                    : static_cast<double>(num) / static_cast<double>(den);
  };
  slice.apps_with_issues_ratio = ratio(slice.apps_with_issues, slice.apps);
  slice.launched_ratio = ratio(slice.launched, slice.activities);
  slice.flawed_page_ratio = ratio(slice.flawed_pages, slice.launched);
  slice.issues_per_flawed_app = ratio(slice.issues, slice.apps_with_issues);
  slice.issues_per_flawed_page = ratio(slice.issues, slice.flawed_pages);
}

void add_record(MarketSlice& slice, const AppRecord& record) {
  slice.apps += 1;
  if (!record.issues.empty()) slice.apps_with_issues += 1;
  slice.activities += record.total_activities;
  slice.launched += record.launched_activities;
  std::set<std::string> flawed;
  for (const checks::Issue& issue : record.issues)
    flawed.insert(issue.activity_name);
  slice.flawed_pages += static_cast<std::int64_t>(flawed.size());
  slice.issues += static_cast<std::int64_t>(record.issues.size());
}

Histogram make_histogram(double lo, double width, double hi) {
  Histogram h;
  h.lo = lo;
  h.bin_width = width;
  h.hi = hi;
  h.counts.assign(
      static_cast<std::size_t>(std::ceil((hi - lo) / width)), 0);
  return h;
}

void histogram_add(Histogram& h, double value) {
  if (value >= h.hi) {
    h.overflow += 1;
    return;
  }
  double offset = (value - h.lo) / h.bin_width;
  std::int64_t idx = static_cast<std::int64_t>(std::floor(offset));
  if (idx < 0) idx = 0;
  if (idx >= static_cast<std::int64_t>(h.counts.size()))
    idx = static_cast<std::int64_t>(h.counts.size()) - 1;
  h.counts[static_cast<std::size_t>(idx)] += 1;
}

Quartiles quartiles_of(std::vector<double> values) {
  Quartiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    double h = (static_cast<double>(values.size()) - 1.0) * p;
    std::size_t lo_i = static_cast<std::size_t>(std::floor(h));
    double frac = h - static_cast<double>(lo_i);
    if (lo_i + 1 >= values.size()) return values.back();
    return values[lo_i] + frac * (values[lo_i + 1] - values[lo_i]);
  };
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  return q;
}

std::string simple_class_name(const std::string& class_name) {
  if (class_name.empty()) return "(unknown)";
  std::size_t dot = class_name.rfind('.');
  return dot == std::string::npos ? class_name : class_name.substr(dot + 1);
}

std::string path_string(const std::vector<int>& path) {
  std::string out;
  for (int idx : path) {
    if (!out.empty()) out += '.';
    out += std::to_string(idx);
  }
  return out;
}

std::string issue_anchor(const checks::Issue& issue) {
  if (!issue.resource_id.empty()) return "id:" + issue.resource_id;
  return "path:" + path_string(issue.node_path);
}

void histogram_csv_rows(std::string& out, const std::string& label,
                        const Histogram& h) {
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    double lo = h.lo + h.bin_width * static_cast<double>(i);
    double hi = std::min(h.lo + h.bin_width * static_cast<double>(i + 1),
                         h.hi);
    out += label + "," + format("%.2f", lo) + "," + format("%.2f", hi) +
           "," + std::to_string(h.counts[i]) + "\n";
  }
  out += label + "," + format("%.2f", h.hi) + ",inf," +
         std::to_string(h.overflow) + "\n";
}

nlohmann::ordered_json slice_to_json(const MarketSlice& slice) {
  return {
      {"apps", slice.apps},
      {"apps_with_issues", slice.apps_with_issues},
      {"apps_with_issues_ratio", slice.apps_with_issues_ratio},
      {"activities", slice.activities},
      {"launched", slice.launched},
      {"launched_ratio", slice.launched_ratio},
      {"flawed_pages", slice.flawed_pages},
      {"flawed_page_ratio", slice.flawed_page_ratio},
      {"issues", slice.issues},
      {"issues_per_flawed_app", slice.issues_per_flawed_app},
      {"issues_per_flawed_page", slice.issues_per_flawed_page},
  };
}

}  // namespace

std::string_view market_name(Market market) {
  return market == Market::kGooglePlay ? "GooglePlay" : "FDroid";
}

Market market_from_name(std::string_view name) {
  if (name == "GooglePlay") return Market::kGooglePlay;
  if (name == "FDroid") return Market::kFDroid;
  throw AnalyticsError("unknown market '" + std::string(name) + "'");
}

nlohmann::ordered_json app_record_to_json(const AppRecord& record) {
  nlohmann::ordered_json j;
  j["app_id"] = record.app_id;
  j["market"] = std::string(market_name(record.market));
  j["category"] = record.category;
  j["version"] = record.version;
  j["total_activities"] = record.total_activities;
  j["launched_activities"] = record.launched_activities;
  if (!record.activities.empty()) j["activities"] = record.activities;
  if (!record.node_inventory.empty()) {
    nlohmann::ordered_json inventory = nlohmann::ordered_json::object();
    for (const auto& [activity, ids] : record.node_inventory)
      inventory[activity] = ids;
    j["node_inventory"] = std::move(inventory);
  }
  nlohmann::ordered_json issues = nlohmann::ordered_json::array();
  for (const checks::Issue& issue : record.issues)
    issues.push_back(checks::issue_to_json(issue));
  j["issues"] = std::move(issues);
  return j;
}

AppRecord app_record_from_json(const nlohmann::json& j) {
  AppRecord record;
  record.app_id = j.at("app_id").get<std::string>();
  record.market = market_from_name(j.at("market").get<std::string>());
  record.category = j.value("category", "");
  record.version = j.value("version", "");
  record.total_activities = j.value("total_activities", 0);
  record.launched_activities = j.value("launched_activities", 0);
  if (record.total_activities < 0 || record.launched_activities < 0 ||
      record.launched_activities > record.total_activities)
    throw AnalyticsError("app '" + record.app_id +
                         "': launched_activities must be within "
                         "total_activities");
  if (j.contains("activities"))
    record.activities = j.at("activities").get<std::vector<std::string>>();
  if (j.contains("node_inventory")) {
    for (const auto& [activity, ids] : j.at("node_inventory").items())
      record.node_inventory[activity] =
          ids.get<std::vector<std::string>>();
  }
  if (j.contains("issues")) {
    for (const nlohmann::json& issue_json : j.at("issues"))
      record.issues.push_back(checks::issue_from_json(issue_json));
  }
  if (!record.activities.empty()) {
    std::set<std::string> launched(record.activities.begin(),
                                   record.activities.end());
    for (const checks::Issue& issue : record.issues) {
      if (launched.find(issue.activity_name) == launched.end())
        throw AnalyticsError("app '" + record.app_id + "': issue activity '" +
                             issue.activity_name +
                             "' is not in the launched activity list");
    }
  }
  return record;
}

IssueDataset load_dataset_jsonl(std::string_view text) {
  IssueDataset dataset;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) continue;
    try {
      dataset.apps.push_back(
          app_record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw AnalyticsError("line " + std::to_string(line_no) + ": " +
                           e.what());
    }
  }
  return dataset;
}

std::string dataset_to_jsonl(const IssueDataset& dataset) {
  std::string out;
  for (const AppRecord& record : dataset.apps) {
    out += app_record_to_json(record).dump();
    out += '\n';
  }
  return out;
}

SummaryStats summarize(const IssueDataset& dataset) {
  SummaryStats stats;
  for (const AppRecord& record : dataset.apps) {
    add_record(stats.total, record);
    add_record(record.market == Market::kGooglePlay ? stats.google_play
                                                    : stats.fdroid,
               record);
  }
  finish_slice(stats.total);
  finish_slice(stats.google_play);
  finish_slice(stats.fdroid);
  return stats;
}

TypeDistribution type_distribution(const IssueDataset& dataset) {
  TypeDistribution dist;
  std::int64_t total = 0;
  for (const AppRecord& record : dataset.apps) {
    for (const checks::Issue& issue : record.issues) {
      dist.counts[static_cast<std::size_t>(issue.type)] += 1;
      ++total;
    }
  }
  if (total > 0) {
    for (std::size_t i = 0; i < dist.counts.size(); ++i)
      dist.shares[i] = static_cast<double>(dist.counts[i]) /
                       static_cast<double>(total);
  }
  return dist;
}

CategoryMatrix category_matrix(const IssueDataset& dataset) {
  std::map<std::string, std::array<std::int64_t, checks::kIssueTypeCount>>
      counts;
  for (const AppRecord& record : dataset.apps) {
    if (record.issues.empty()) continue;
    auto& row = counts[record.category];
    for (const checks::Issue& issue : record.issues)
      row[static_cast<std::size_t>(issue.type)] += 1;
  }
  CategoryMatrix matrix;
  std::array<std::int64_t, checks::kIssueTypeCount> column_totals{};
  for (const auto& [category, row] : counts) {
    matrix.categories.push_back(category);
    matrix.counts.push_back(row);
    for (std::size_t t = 0; t < row.size(); ++t) column_totals[t] += row[t];
  }
  for (const auto& row : matrix.counts) {
    std::array<double, checks::kIssueTypeCount> shares{};
    for (std::size_t t = 0; t < row.size(); ++t) {
      if (column_totals[t] > 0)
        shares[t] = static_cast<double>(row[t]) /
                    static_cast<double>(column_totals[t]);
    }
    matrix.shares.push_back(shares);
  }
  return matrix;
}

ComponentMatrix component_matrix(const IssueDataset& dataset,
                                 std::size_t max_rows) {
  std::map<std::string, std::array<std::int64_t, checks::kIssueTypeCount>>
      counts;
  for (const AppRecord& record : dataset.apps) {
    for (const checks::Issue& issue : record.issues) {
      counts[simple_class_name(issue.node_class)]
            [static_cast<std::size_t>(issue.type)] += 1;
    }
  }
  struct Row {
    std::string component;
    std::int64_t total;
    std::array<std::int64_t, checks::kIssueTypeCount> counts;
  };
  std::vector<Row> rows;
  for (const auto& [component, row] : counts) {
    std::int64_t total = 0;
    for (std::int64_t c : row) total += c;
    rows.push_back({component, total, row});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.total != b.total) return a.total > b.total;
    return a.component < b.component;
  });
  if (max_rows > 0 && rows.size() > max_rows) rows.resize(max_rows);
  ComponentMatrix matrix;
  for (const Row& row : rows) {
    matrix.components.push_back(row.component);
    matrix.totals.push_back(row.total);
    matrix.counts.push_back(row.counts);
    std::array<double, checks::kIssueTypeCount> shares{};
    if (row.total > 0) {
      for (std::size_t t = 0; t < row.counts.size(); ++t)
        shares[t] = static_cast<double>(row.counts[t]) /
                    static_cast<double>(row.total);
    }
    matrix.shares.push_back(shares);
  }
  return matrix;
}

ContrastStats contrast_histogram(const IssueDataset& dataset) {
  ContrastStats stats;
  stats.total = make_histogram(1.0, 0.25, 4.5);
  stats.google_play = make_histogram(1.0, 0.25, 4.5);
  stats.fdroid = make_histogram(1.0, 0.25, 4.5);
  for (const AppRecord& record : dataset.apps) {
    Histogram& market = record.market == Market::kGooglePlay
                            ? stats.google_play
                            : stats.fdroid;
    for (const checks::Issue& issue : record.issues) {
      if (!is_contrast_issue(issue)) continue;
      double ratio = metric_number(issue, "contrast_ratio");
      if (std::isnan(ratio)) continue;
      histogram_add(stats.total, ratio);
      histogram_add(market, ratio);
    }
  }
  return stats;
}

TouchSizeStats touch_size_stats(const IssueDataset& dataset) {
  TouchSizeStats stats;
  stats.width = make_histogram(0.0, 5.0, 48.0);
  stats.height = make_histogram(0.0, 5.0, 48.0);
  std::vector<double> widths;
  std::vector<double> heights;
  for (const AppRecord& record : dataset.apps) {
    for (const checks::Issue& issue : record.issues) {
      if (issue.type != checks::IssueType::kTouchTarget) continue;
      double width = metric_number(issue, "width_dp");
      double height = metric_number(issue, "height_dp");
      if (!std::isnan(width)) {
        histogram_add(stats.width, width);
        widths.push_back(width);
      }
      if (!std::isnan(height)) {
        histogram_add(stats.height, height);
        heights.push_back(height);
      }
    }
  }
  stats.width_quartiles = quartiles_of(std::move(widths));
  stats.height_quartiles = quartiles_of(std::move(heights));
  return stats;
}

std::vector<ColorPairCount> top_color_pairs(const IssueDataset& dataset,
                                            std::size_t k) {
  std::map<std::pair<std::string, std::string>, std::int64_t> counts;
  for (const AppRecord& record : dataset.apps) {
    for (const checks::Issue& issue : record.issues) {
      if (!is_contrast_issue(issue)) continue;
      const std::string* fg = metric_string(issue, "foreground");
      const std::string* bg = metric_string(issue, "background");
      if (fg == nullptr || bg == nullptr) continue;
      counts[{*fg, *bg}] += 1;
    }
  }
  std::vector<ColorPairCount> pairs;
  for (const auto& [pair, count] : counts)
    pairs.push_back({pair.first, pair.second, count});
  std::sort(pairs.begin(), pairs.end(),
            [](const ColorPairCount& a, const ColorPairCount& b) {
              if (a.count != b.count) return a.count > b.count;
              if (a.foreground != b.foreground)
                return a.foreground < b.foreground;
              return a.background < b.background;
            });
  if (pairs.size() > k) pairs.resize(k);
  return pairs;
}

std::string_view diff_status_name(DiffStatus status) {
  switch (status) {
    case DiffStatus::kUnchanged: return "unchanged";
    case DiffStatus::kIncreased: return "increased";
    case DiffStatus::kDecreased: return "decreased";
  }
  return "unchanged";
}

VersionDiff version_diff(const AppRecord& old_version,
                         const AppRecord& new_version) {
  if (old_version.app_id != new_version.app_id)
    throw MismatchedAppError("version pair compares '" + old_version.app_id +
                             "' with '" + new_version.app_id + "'");
  VersionDiff diff;

  auto issue_key = [](const checks::Issue& issue) {
    return issue.activity_name + "\x1f" +
           std::string(checks::issue_type_name(issue.type)) + "\x1f" +
           issue_anchor(issue);
  };

  std::map<std::string, std::vector<std::size_t>> old_by_key;
  for (std::size_t i = 0; i < old_version.issues.size(); ++i)
    old_by_key[issue_key(old_version.issues[i])].push_back(i);
  std::map<std::string, std::vector<std::size_t>> new_by_key;
  for (std::size_t i = 0; i < new_version.issues.size(); ++i)
    new_by_key[issue_key(new_version.issues[i])].push_back(i);

  std::vector<std::size_t> vanished;
  for (const auto& [key, old_indices] : old_by_key) {
    std::size_t matched = 0;
    auto it = new_by_key.find(key);
    if (it != new_by_key.end()) matched = it->second.size();
    for (std::size_t i = matched; i < old_indices.size(); ++i)
      vanished.push_back(old_indices[i]);
  }
  std::sort(vanished.begin(), vanished.end());

  std::vector<std::size_t> introduced;
  for (const auto& [key, new_indices] : new_by_key) {
    std::size_t matched = 0;
    auto it = old_by_key.find(key);
    if (it != old_by_key.end()) matched = it->second.size();
    for (std::size_t i = matched; i < new_indices.size(); ++i)
      introduced.push_back(new_indices[i]);
  }
  std::sort(introduced.begin(), introduced.end());

  // An activity counts as gone only when the new version names its launched
  // activities and the list lacks it; without the list we assume it
  // persists. Node persistence uses the inventory when one covers the
  // activity, falling back to any new issue referencing the same id.
  std::set<std::string> new_activities(new_version.activities.begin(),
                                       new_version.activities.end());
  auto activity_gone = [&](const std::string& activity) {
    return !new_version.activities.empty() &&
           new_activities.find(activity) == new_activities.end();
  };
  auto node_persists = [&](const checks::Issue& issue) {
    const std::string& rid = issue.resource_id;
    if (rid.empty()) return true;  // path anchors cannot witness removal
    auto it = new_version.node_inventory.find(issue.activity_name);
    if (it != new_version.node_inventory.end()) {
      return std::find(it->second.begin(), it->second.end(), rid) !=
             it->second.end();
    }
    return true;
  };

  for (std::size_t index : vanished) {
    const checks::Issue& issue = old_version.issues[index];
    if (activity_gone(issue.activity_name) || !node_persists(issue))
      diff.feature_removed.push_back(issue);
    else
      diff.fixed.push_back(issue);
  }
  for (std::size_t index : introduced)
    diff.introduced.push_back(new_version.issues[index]);

  std::size_t old_total = old_version.issues.size();
  std::size_t new_total = new_version.issues.size();
  if (new_total > old_total)
    diff.status = DiffStatus::kIncreased;
  else if (new_total < old_total)
    diff.status = DiffStatus::kDecreased;
  else
    diff.status = DiffStatus::kUnchanged;
  return diff;
}

std::string summary_csv(const SummaryStats& stats) {
  std::string out =
      "market,apps,apps_with_issues,apps_with_issues_pct,activities,"
      "launched,launched_pct,flawed_pages,flawed_page_pct,issues,"
      "issues_per_flawed_app,issues_per_flawed_page\n";
  auto row = [&](const char* label, const MarketSlice& slice) {
    out += std::string(label) + "," + std::to_string(slice.apps) + "," +
           std::to_string(slice.apps_with_issues) + "," +
           format("%.2f", slice.apps_with_issues_ratio * 100.0) + "," +
           std::to_string(slice.activities) + "," +
           std::to_string(slice.launched) + "," +
           format("%.2f", slice.launched_ratio * 100.0) + "," +
           std::to_string(slice.flawed_pages) + "," +
           format("%.2f", slice.flawed_page_ratio * 100.0) + "," +
           std::to_string(slice.issues) + "," +
           format("%.2f", slice.issues_per_flawed_app) + "," +
           format("%.2f", slice.issues_per_flawed_page) + "\n";
  };
  row("Total", stats.total);
  row("GooglePlay", stats.google_play);
  row("FDroid", stats.fdroid);
  return out;
}

std::string type_distribution_csv(const TypeDistribution& dist) {
  std::string out = "issue_type,count,share\n";
  for (std::size_t i = 0; i < dist.counts.size(); ++i) {
    out += std::string(checks::issue_type_name(
               static_cast<checks::IssueType>(i))) +
           "," + std::to_string(dist.counts[i]) + "," +
           format("%.6f", dist.shares[i]) + "\n";
  }
  return out;
}

std::string category_matrix_csv(const CategoryMatrix& matrix) {
  std::string out = "category";
  for (checks::IssueType type : checks::all_issue_types())
    out += "," + std::string(checks::issue_type_name(type));
  out += "\n";
  for (std::size_t r = 0; r < matrix.categories.size(); ++r) {
    out += matrix.categories[r];
    for (double share : matrix.shares[r]) out += "," + format("%.6f", share);
    out += "\n";
  }
  return out;
}

std::string component_matrix_csv(const ComponentMatrix& matrix) {
  std::string out = "component,total";
  for (checks::IssueType type : checks::all_issue_types())
    out += "," + std::string(checks::issue_type_name(type));
  out += "\n";
  for (std::size_t r = 0; r < matrix.components.size(); ++r) {
    out += matrix.components[r] + "," + std::to_string(matrix.totals[r]);
    for (double share : matrix.shares[r]) out += "," + format("%.6f", share);
    out += "\n";
  }
  return out;
}

std::string contrast_csv(const ContrastStats& stats) {
  std::string out = "market,bin_lo,bin_hi,count\n";
  histogram_csv_rows(out, "Total", stats.total);
  histogram_csv_rows(out, "GooglePlay", stats.google_play);
  histogram_csv_rows(out, "FDroid", stats.fdroid);
  return out;
}

std::string touch_size_csv(const TouchSizeStats& stats) {
  std::string out = "dimension,bin_lo,bin_hi,count\n";
  histogram_csv_rows(out, "width", stats.width);
  histogram_csv_rows(out, "height", stats.height);
  return out;
}

std::string touch_size_quartiles_csv(const TouchSizeStats& stats) {
  std::string out = "dimension,q1,median,q3\n";
  out += "width," + format("%.2f", stats.width_quartiles.q1) + "," +
         format("%.2f", stats.width_quartiles.median) + "," +
         format("%.2f", stats.width_quartiles.q3) + "\n";
  out += "height," + format("%.2f", stats.height_quartiles.q1) + "," +
         format("%.2f", stats.height_quartiles.median) + "," +
         format("%.2f", stats.height_quartiles.q3) + "\n";
  return out;
}

std::string top_color_pairs_csv(const std::vector<ColorPairCount>& pairs) {
  std::string out = "rank,foreground,background,count\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out += std::to_string(i + 1) + "," + pairs[i].foreground + "," +
           pairs[i].background + "," + std::to_string(pairs[i].count) + "\n";
  }
  return out;
}

nlohmann::ordered_json summary_to_json(const SummaryStats& stats) {
  nlohmann::ordered_json j;
  j["total"] = slice_to_json(stats.total);
  j["google_play"] = slice_to_json(stats.google_play);
  j["fdroid"] = slice_to_json(stats.fdroid);
  return j;
}

nlohmann::ordered_json version_diff_to_json(const VersionDiff& diff) {
  nlohmann::ordered_json j;
  j["status"] = std::string(diff_status_name(diff.status));
  j["counts"] = {
      {"fixed", diff.fixed.size()},
      {"feature_removed", diff.feature_removed.size()},
      {"introduced", diff.introduced.size()},
  };
  auto issues_json = [](const std::vector<checks::Issue>& issues) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const checks::Issue& issue : issues)
      arr.push_back(checks::issue_to_json(issue));
    return arr;
  };
  j["fixed"] = issues_json(diff.fixed);
  j["feature_removed"] = issues_json(diff.feature_removed);
  j["introduced"] = issues_json(diff.introduced);
  return j;
}

}  // namespace a11y::analytics
