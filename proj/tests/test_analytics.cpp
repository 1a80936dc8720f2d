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

#include <doctest.h>

#include "a11y/analytics.hpp"

using namespace a11y;
using namespace a11y::analytics;
using checks::Issue;
using checks::IssueType;

namespace {

Issue make_issue(IssueType type, const char* activity, const char* rid,
                 const char* node_class = "android.widget.Button") {
  Issue issue;
  issue.type = type;
  issue.activity_name = activity;
  issue.node_path = {0, 1};
  issue.node_class = node_class;
  issue.resource_id = rid;
  issue.bounds = {0, 0, 10, 10};
  issue.message = "msg";
  return issue;
}

Issue contrast_issue(IssueType type, const char* activity, double ratio,
                     const char* fg, const char* bg) {
  Issue issue = make_issue(type, activity, "");
  issue.metrics["contrast_ratio"] = ratio;
  issue.metrics["foreground"] = std::string(fg);
  issue.metrics["background"] = std::string(bg);
  return issue;
}

Issue touch_issue(const char* activity, double width_dp, double height_dp) {
  Issue issue = make_issue(IssueType::kTouchTarget, activity, "");
  issue.metrics["width_dp"] = width_dp;
  issue.metrics["height_dp"] = height_dp;
  issue.metrics["min_dp"] = 48.0;
  return issue;
}

AppRecord make_app(const char* app_id, Market market, const char* category,
                   int total, int launched, std::vector<Issue> issues) {
  AppRecord record;
  record.app_id = app_id;
  record.market = market;
  record.category = category;
  record.version = "1.0";
  record.total_activities = total;
  record.launched_activities = launched;
  record.issues = std::move(issues);
  return record;
}

IssueDataset small_dataset() {
  IssueDataset dataset;
  dataset.apps.push_back(make_app(
      "com.a", Market::kGooglePlay, "Tools", 10, 8,
      {make_issue(IssueType::kItemLabel, "com.a.Main", "id/x"),
       make_issue(IssueType::kItemLabel, "com.a.Main", "id/y"),
       make_issue(IssueType::kTouchTarget, "com.a.Detail", "id/z")}));
  dataset.apps.push_back(
      make_app("com.b", Market::kGooglePlay, "Games", 5, 5, {}));
  dataset.apps.push_back(make_app(
      "org.c", Market::kFDroid, "Tools", 4, 2,
      {make_issue(IssueType::kLink, "org.c.Home", "")}));
  return dataset;
}

}  // namespace

TEST_CASE("market names round trip") {
  CHECK(market_name(Market::kGooglePlay) == "GooglePlay");
  CHECK(market_name(Market::kFDroid) == "FDroid");
  CHECK(market_from_name("GooglePlay") == Market::kGooglePlay);
  CHECK(market_from_name("FDroid") == Market::kFDroid);
  CHECK_THROWS_AS(market_from_name("AppStore"), AnalyticsError);
}

TEST_CASE("app record json round trip") {
  AppRecord record = make_app(
      "com.a", Market::kFDroid, "Tools", 7, 6,
      {make_issue(IssueType::kTextContrast, "com.a.Main", "id/t")});
  record.activities = {"com.a.Main", "com.a.Other"};
  record.node_inventory = {{"com.a.Main", {"id/t", "id/u"}}};

  nlohmann::ordered_json j = app_record_to_json(record);
  CHECK(j["app_id"] == "com.a");
  CHECK(j["market"] == "FDroid");
  CHECK(j["total_activities"] == 7);
  AppRecord back = app_record_from_json(j);
  CHECK(back.app_id == record.app_id);
  CHECK(back.market == record.market);
  CHECK(back.activities == record.activities);
  CHECK(back.node_inventory == record.node_inventory);
  REQUIRE(back.issues.size() == 1);
  CHECK(back.issues[0].resource_id == "id/t");
  CHECK(app_record_to_json(back) == j);
}

TEST_CASE("record validation") {
  AppRecord record = make_app("com.a", Market::kGooglePlay, "T", 2, 3, {});
  CHECK_THROWS_AS(app_record_from_json(app_record_to_json(record)),
                  AnalyticsError);

  AppRecord outside = make_app(
      "com.a", Market::kGooglePlay, "T", 3, 2,
      {make_issue(IssueType::kItemLabel, "com.a.Ghost", "")});
  outside.activities = {"com.a.Main"};
  CHECK_THROWS_AS(app_record_from_json(app_record_to_json(outside)),
                  AnalyticsError);
}

TEST_CASE("dataset jsonl round trip and line errors") {
  IssueDataset dataset = small_dataset();
  std::string jsonl = dataset_to_jsonl(dataset);
  IssueDataset back = load_dataset_jsonl(jsonl);
  REQUIRE(back.apps.size() == 3);
  CHECK(dataset_to_jsonl(back) == jsonl);

  try {
    load_dataset_jsonl(
        "{\"app_id\": \"x\", \"market\": \"FDroid\"}\nnot json\n");
    FAIL("expected AnalyticsError");
  } catch (const AnalyticsError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("summarize slices by market") {
  SummaryStats stats = summarize(small_dataset());

  CHECK(stats.total.apps == 3);
  CHECK(stats.total.apps_with_issues == 2);
  CHECK(stats.total.activities == 19);
  CHECK(stats.total.launched == 15);
  CHECK(stats.total.flawed_pages == 3);
  CHECK(stats.total.issues == 4);
  CHECK(stats.total.apps_with_issues_ratio == doctest::Approx(2.0 / 3.0));
  CHECK(stats.total.launched_ratio == doctest::Approx(15.0 / 19.0));
  CHECK(stats.total.flawed_page_ratio == doctest::Approx(3.0 / 15.0));
  CHECK(stats.total.issues_per_flawed_app == doctest::Approx(2.0));
  CHECK(stats.total.issues_per_flawed_page == doctest::Approx(4.0 / 3.0));

  CHECK(stats.google_play.apps == 2);
  CHECK(stats.google_play.apps_with_issues == 1);
  CHECK(stats.google_play.activities == 15);
  CHECK(stats.google_play.launched == 13);
  CHECK(stats.google_play.flawed_pages == 2);
  CHECK(stats.google_play.issues == 3);

  CHECK(stats.fdroid.apps == 1);
  CHECK(stats.fdroid.launched == 2);
  CHECK(stats.fdroid.issues == 1);

  SummaryStats empty = summarize(IssueDataset{});
  CHECK(empty.total.apps == 0);
  CHECK(empty.total.apps_with_issues_ratio == 0.0);
  CHECK(empty.total.launched_ratio == 0.0);
  CHECK(empty.total.issues_per_flawed_app == 0.0);
}

TEST_CASE("type distribution shares sum to one") {
  TypeDistribution dist = type_distribution(small_dataset());
  CHECK(dist.counts[static_cast<int>(IssueType::kItemLabel)] == 2);
  CHECK(dist.counts[static_cast<int>(IssueType::kTouchTarget)] == 1);
  CHECK(dist.counts[static_cast<int>(IssueType::kLink)] == 1);
  double sum = 0;
  for (double share : dist.shares) sum += share;
  CHECK(sum == doctest::Approx(1.0));
  CHECK(dist.shares[static_cast<int>(IssueType::kItemLabel)] ==
        doctest::Approx(0.5));
}

TEST_CASE("category matrix is column normalized") {
  CategoryMatrix matrix = category_matrix(small_dataset());
  // "Games" has no issues and is dropped; rows are sorted.
  REQUIRE(matrix.categories == std::vector<std::string>{"Tools"});
  CHECK(matrix.counts[0][static_cast<int>(IssueType::kItemLabel)] == 2);
  CHECK(matrix.shares[0][static_cast<int>(IssueType::kItemLabel)] ==
        doctest::Approx(1.0));

  IssueDataset two = small_dataset();
  two.apps.push_back(make_app(
      "net.d", Market::kFDroid, "Art", 1, 1,
      {make_issue(IssueType::kItemLabel, "net.d.M", "")}));
  CategoryMatrix m2 = category_matrix(two);
  REQUIRE(m2.categories == std::vector<std::string>{"Art", "Tools"});
  int item_label = static_cast<int>(IssueType::kItemLabel);
  CHECK(m2.shares[0][item_label] == doctest::Approx(1.0 / 3.0));
  CHECK(m2.shares[1][item_label] == doctest::Approx(2.0 / 3.0));
  // Columns with no issues at all stay zero instead of dividing by zero.
  int contrast = static_cast<int>(IssueType::kTextContrast);
  CHECK(m2.shares[0][contrast] == 0.0);
}

TEST_CASE("component matrix ranks by total then name") {
  IssueDataset dataset;
  dataset.apps.push_back(make_app(
      "com.a", Market::kGooglePlay, "T", 5, 5,
      {make_issue(IssueType::kItemLabel, "a.M", "", "android.widget.Button"),
       make_issue(IssueType::kItemLabel, "a.M", "", "android.widget.Button"),
       make_issue(IssueType::kTouchTarget, "a.M", "",
                  "android.widget.Button"),
       make_issue(IssueType::kItemLabel, "a.M", "",
                  "android.widget.ImageView"),
       make_issue(IssueType::kLink, "a.M", "", "custom.widget.Chip"),
       make_issue(IssueType::kLink, "a.M", "", ""),
       make_issue(IssueType::kLink, "a.N", "", "Bare")}));

  ComponentMatrix matrix = component_matrix(dataset);
  REQUIRE(matrix.components.size() == 5);
  CHECK(matrix.components[0] == "Button");
  CHECK(matrix.totals[0] == 3);
  // The three singles tie and fall back to name order.
  CHECK(matrix.components[1] == "(unknown)");
  CHECK(matrix.components[2] == "Bare");
  CHECK(matrix.components[3] == "Chip");
  CHECK(matrix.components[4] == "ImageView");
  int item_label = static_cast<int>(IssueType::kItemLabel);
  CHECK(matrix.shares[0][item_label] == doctest::Approx(2.0 / 3.0));

  ComponentMatrix top2 = component_matrix(dataset, 2);
  REQUIRE(top2.components.size() == 2);
  CHECK(top2.components[0] == "Button");
}

TEST_CASE("contrast histogram bins and markets") {
  IssueDataset dataset;
  dataset.apps.push_back(make_app(
      "com.a", Market::kGooglePlay, "T", 3, 3,
      {contrast_issue(IssueType::kTextContrast, "a.M", 2.85, "#999999",
                      "#FFFFFF"),
       contrast_issue(IssueType::kTextContrast, "a.M", 1.0, "#FFFFFF",
                      "#FFFFFF"),
       contrast_issue(IssueType::kImageContrast, "a.M", 4.49, "#000000",
                      "#111111"),
       contrast_issue(IssueType::kImageContrast, "a.M", 4.5, "#000000",
                      "#222222"),
       // Touch issues carry no contrast and must be ignored.
       touch_issue("a.M", 30, 30)}));
  dataset.apps.push_back(make_app(
      "org.c", Market::kFDroid, "T", 2, 2,
      {contrast_issue(IssueType::kTextContrast, "c.H", 1.49, "#AAAAAA",
                      "#BBBBBB")}));

  ContrastStats stats = contrast_histogram(dataset);
  CHECK(stats.total.lo == doctest::Approx(1.0));
  CHECK(stats.total.bin_width == doctest::Approx(0.25));
  CHECK(stats.total.hi == doctest::Approx(4.5));
  REQUIRE(stats.total.counts.size() == 14);
  CHECK(stats.total.counts[0] == 1);   // 1.0
  CHECK(stats.total.counts[1] == 1);   // 1.49
  CHECK(stats.total.counts[7] == 1);   // 2.85
  CHECK(stats.total.counts[13] == 1);  // 4.49
  CHECK(stats.total.overflow == 1);    // 4.5
  CHECK(stats.google_play.counts[7] == 1);
  CHECK(stats.google_play.counts[1] == 0);
  CHECK(stats.fdroid.counts[1] == 1);
}

TEST_CASE("touch size histogram and quartiles") {
  IssueDataset dataset;
  dataset.apps.push_back(make_app("com.a", Market::kGooglePlay, "T", 4, 4,
                                  {touch_issue("a.M", 10, 20),
                                   touch_issue("a.M", 20, 30),
                                   touch_issue("a.M", 30, 40),
                                   touch_issue("a.M", 40, 50)}));

  TouchSizeStats stats = touch_size_stats(dataset);
  REQUIRE(stats.width.counts.size() == 10);
  CHECK(stats.width.counts[2] == 1);  // 10
  CHECK(stats.width.counts[4] == 1);  // 20
  CHECK(stats.width.counts[6] == 1);  // 30
  CHECK(stats.width.counts[8] == 1);  // 40
  CHECK(stats.width.overflow == 0);
  CHECK(stats.height.overflow == 1);  // 50 >= 48
  CHECK(stats.height.counts[9] == 0);

  CHECK(stats.width_quartiles.q1 == doctest::Approx(17.5));
  CHECK(stats.width_quartiles.median == doctest::Approx(25.0));
  CHECK(stats.width_quartiles.q3 == doctest::Approx(32.5));
  CHECK(stats.height_quartiles.median == doctest::Approx(35.0));
}

TEST_CASE("top color pairs order by count then hex") {
  IssueDataset dataset;
  std::vector<Issue> issues;
  for (int i = 0; i < 3; ++i)
    issues.push_back(contrast_issue(IssueType::kTextContrast, "a.M", 2.0,
                                    "#999999", "#FFFFFF"));
  for (int i = 0; i < 2; ++i)
    issues.push_back(contrast_issue(IssueType::kImageContrast, "a.M", 2.0,
                                    "#888888", "#FFFFFF"));
  issues.push_back(contrast_issue(IssueType::kTextContrast, "a.M", 2.0,
                                  "#AAAAAA", "#FFFFFF"));
  issues.push_back(contrast_issue(IssueType::kTextContrast, "a.M", 2.0,
                                  "#AAAAAA", "#000000"));
  dataset.apps.push_back(
      make_app("com.a", Market::kGooglePlay, "T", 3, 3, std::move(issues)));

  std::vector<ColorPairCount> pairs = top_color_pairs(dataset, 10);
  REQUIRE(pairs.size() == 4);
  CHECK(pairs[0] == ColorPairCount{"#999999", "#FFFFFF", 3});
  CHECK(pairs[1] == ColorPairCount{"#888888", "#FFFFFF", 2});
  CHECK(pairs[2] == ColorPairCount{"#AAAAAA", "#000000", 1});
  CHECK(pairs[3] == ColorPairCount{"#AAAAAA", "#FFFFFF", 1});

  CHECK(top_color_pairs(dataset, 2).size() == 2);
}

namespace {

AppRecord version_record(const char* version, std::vector<Issue> issues) {
  AppRecord record = make_app("com.a", Market::kGooglePlay, "Tools", 5, 5,
                              std::move(issues));
  record.version = version;
  return record;
}

}  // namespace

TEST_CASE("version diff statuses") {
  Issue label = make_issue(IssueType::kItemLabel, "com.a.Main", "id/x");
  Issue touch = make_issue(IssueType::kTouchTarget, "com.a.Main", "id/y");

  SUBCASE("unchanged") {
    VersionDiff diff =
        version_diff(version_record("1", {label, touch}),
                     version_record("2", {label, touch}));
    CHECK(diff.status == DiffStatus::kUnchanged);
    CHECK(diff.fixed.empty());
    CHECK(diff.introduced.empty());
  }
  SUBCASE("increased") {
    VersionDiff diff = version_diff(version_record("1", {label}),
                                    version_record("2", {label, touch}));
    CHECK(diff.status == DiffStatus::kIncreased);
    REQUIRE(diff.introduced.size() == 1);
    CHECK(diff.introduced[0].resource_id == "id/y");
  }
  SUBCASE("decreased counts as fixed when the node persists") {
    VersionDiff diff = version_diff(version_record("1", {label, touch}),
                                    version_record("2", {label}));
    CHECK(diff.status == DiffStatus::kDecreased);
    REQUIRE(diff.fixed.size() == 1);
    CHECK(diff.fixed[0].resource_id == "id/y");
    CHECK(diff.feature_removed.empty());
  }
  SUBCASE("activity gone means feature removed") {
    AppRecord new_version = version_record("2", {});
    new_version.activities = {"com.a.Other"};
    VersionDiff diff =
        version_diff(version_record("1", {label}), new_version);
    REQUIRE(diff.feature_removed.size() == 1);
    CHECK(diff.fixed.empty());
  }
  SUBCASE("missing anchor node means feature removed") {
    AppRecord new_version = version_record("2", {});
    new_version.activities = {"com.a.Main"};
    new_version.node_inventory = {{"com.a.Main", {"id/other"}}};
    VersionDiff diff =
        version_diff(version_record("1", {label}), new_version);
    REQUIRE(diff.feature_removed.size() == 1);
  }
  SUBCASE("anchor node still present means fixed") {
    AppRecord new_version = version_record("2", {});
    new_version.activities = {"com.a.Main"};
    new_version.node_inventory = {{"com.a.Main", {"id/x", "id/other"}}};
    VersionDiff diff =
        version_diff(version_record("1", {label}), new_version);
    REQUIRE(diff.fixed.size() == 1);
  }
  SUBCASE("equal totals with churn stay unchanged") {
    VersionDiff diff = version_diff(version_record("1", {label}),
                                    version_record("2", {touch}));
    CHECK(diff.status == DiffStatus::kUnchanged);
    CHECK(diff.fixed.size() == 1);
    CHECK(diff.introduced.size() == 1);
  }
  SUBCASE("duplicate issues match as a multiset") {
    VersionDiff diff = version_diff(version_record("1", {label, label}),
                                    version_record("2", {label}));
    CHECK(diff.status == DiffStatus::kDecreased);
    CHECK(diff.fixed.size() == 1);
  }
  SUBCASE("different apps refuse to diff") {
    AppRecord other = version_record("2", {});
    other.app_id = "com.b";
    CHECK_THROWS_AS(version_diff(version_record("1", {}), other),
                    MismatchedAppError);
  }
  SUBCASE("path anchors work without resource ids") {
    Issue anon_old = make_issue(IssueType::kItemLabel, "com.a.Main", "");
    anon_old.node_path = {0, 2};
    Issue anon_new = anon_old;
    VersionDiff same = version_diff(version_record("1", {anon_old}),
                                    version_record("2", {anon_new}));
    CHECK(same.fixed.empty());
    anon_new.node_path = {0, 3};
    VersionDiff moved = version_diff(version_record("1", {anon_old}),
                                     version_record("2", {anon_new}));
    CHECK(moved.fixed.size() == 1);
    CHECK(moved.introduced.size() == 1);
  }
}

TEST_CASE("diff status names") {
  CHECK(diff_status_name(DiffStatus::kUnchanged) == "unchanged");
  CHECK(diff_status_name(DiffStatus::kIncreased) == "increased");
  CHECK(diff_status_name(DiffStatus::kDecreased) == "decreased");
}

TEST_CASE("version diff json") {
  Issue label = make_issue(IssueType::kItemLabel, "com.a.Main", "id/x");
  VersionDiff diff = version_diff(version_record("1", {label}),
                                  version_record("2", {}));
  nlohmann::ordered_json j = version_diff_to_json(diff);
  CHECK(j["status"] == "decreased");
  CHECK(j["counts"]["fixed"] == 1);
  CHECK(j["counts"]["feature_removed"] == 0);
  CHECK(j["counts"]["introduced"] == 0);
  REQUIRE(j["fixed"].size() == 1);
  CHECK(j["fixed"][0]["issue_type"] == "ItemLabel");
}

TEST_CASE("csv renderings") {
  SummaryStats stats = summarize(small_dataset());
  std::string summary = summary_csv(stats);
  CHECK(summary.find("market,apps,apps_with_issues,apps_with_issues_pct,"
                     "activities,launched,launched_pct,flawed_pages,"
                     "flawed_page_pct,issues,issues_per_flawed_app,"
                     "issues_per_flawed_page\n") == 0);
  CHECK(summary.find("\nTotal,3,2,66.67,19,15,78.95,3,20.00,4,2.00,1.33\n") !=
        std::string::npos);
  CHECK(summary.find("\nGooglePlay,2,1,50.00,") != std::string::npos);
  CHECK(summary.find("\nFDroid,1,1,100.00,") != std::string::npos);

  std::string types = type_distribution_csv(type_distribution(small_dataset()));
  CHECK(types.find("issue_type,count,share\n") == 0);
  CHECK(types.find("ItemLabel,2,0.500000\n") != std::string::npos);
  CHECK(types.find("Link,1,0.250000\n") != std::string::npos);

  IssueDataset touch_data;
  touch_data.apps.push_back(make_app("com.a", Market::kGooglePlay, "T", 1, 1,
                                     {touch_issue("a.M", 10, 50)}));
  TouchSizeStats touch = touch_size_stats(touch_data);
  std::string touch_csv = touch_size_csv(touch);
  CHECK(touch_csv.find("dimension,bin_lo,bin_hi,count\n") == 0);
  CHECK(touch_csv.find("width,10.00,15.00,1\n") != std::string::npos);
  CHECK(touch_csv.find("height,48.00,inf,1\n") != std::string::npos);
  std::string quartiles = touch_size_quartiles_csv(touch);
  CHECK(quartiles.find("dimension,q1,median,q3\n") == 0);
  CHECK(quartiles.find("width,10.00,10.00,10.00\n") != std::string::npos);

  std::string pairs_csv = top_color_pairs_csv(
      {{"#999999", "#FFFFFF", 3}, {"#888888", "#FFFFFF", 2}});
  CHECK(pairs_csv.find("rank,foreground,background,count\n") == 0);
  CHECK(pairs_csv.find("1,#999999,#FFFFFF,3\n") != std::string::npos);
  CHECK(pairs_csv.find("2,#888888,#FFFFFF,2\n") != std::string::npos);
}

TEST_CASE("summary json shape") {
  nlohmann::ordered_json j = summary_to_json(summarize(small_dataset()));
  CHECK(j["total"]["apps"] == 3);
  CHECK(j["google_play"]["issues"] == 3);
  CHECK(j["fdroid"]["apps"] == 1);
  CHECK(j["total"]["flawed_page_ratio"] == doctest::Approx(0.2));
}
