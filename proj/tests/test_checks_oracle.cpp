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

#include "a11y/checks.hpp"
#include "support/oracles.hpp"

using namespace a11y;
using namespace a11y::checks;

TEST_CASE("overlap check agrees with the quadratic oracle") {
  CheckConfig config;
  int screens_with_issues = 0;
  for (std::uint32_t seed = 0; seed < 1200; ++seed) {
    ui::Screen screen = test::random_screen(seed);
    AuditResult result = check_clickable_overlap(screen, config);

    std::multiset<std::pair<std::string, std::string>> got;
    for (const Issue& issue : result.issues) {
      std::string self;
      for (int p : issue.node_path) {
        if (!self.empty()) self += '.';
        self += std::to_string(p);
      }
      got.insert({self, std::get<std::string>(
                            issue.metrics.at("overlap_partner_path"))});
    }
    auto expected =
        test::oracle_overlap_pairs(screen, config.overlap_coverage_threshold);
    if (got != expected) {
      CAPTURE(seed);
      REQUIRE(got == expected);
    }
    if (!expected.empty()) ++screens_with_issues;
  }
  // The generator must actually exercise the rule.
  CHECK(screens_with_issues > 100);
}

TEST_CASE("duplicate description check agrees with the grouping oracle") {
  CheckConfig config;
  int screens_with_issues = 0;
  for (std::uint32_t seed = 5000; seed < 6200; ++seed) {
    ui::Screen screen = test::random_screen(seed);
    AuditResult result = check_duplicate_description(screen, config);

    std::map<std::string, std::pair<std::int64_t, std::string>> got;
    for (const Issue& issue : result.issues) {
      std::string self;
      for (int p : issue.node_path) {
        if (!self.empty()) self += '.';
        self += std::to_string(p);
      }
      got[self] = {std::get<std::int64_t>(issue.metrics.at("duplicate_group")),
                   std::get<std::string>(issue.metrics.at("speakable_text"))};
    }
    auto expected = test::oracle_duplicate_groups(screen);
    if (got != expected) {
      CAPTURE(seed);
      REQUIRE(got == expected);
    }
    if (!expected.empty()) ++screens_with_issues;
  }
  CHECK(screens_with_issues > 100);
}

TEST_CASE("touch target check agrees with the cross-multiplied oracle") {
  CheckConfig config;
  int screens_with_issues = 0;
  for (std::uint32_t seed = 9000; seed < 10200; ++seed) {
    ui::Screen screen = test::random_screen(seed);
    AuditResult result = check_touch_target(screen, config);

    std::set<std::string> got;
    for (const Issue& issue : result.issues) {
      std::string self;
      for (int p : issue.node_path) {
        if (!self.empty()) self += '.';
        self += std::to_string(p);
      }
      got.insert(self);
    }
    auto expected = test::oracle_small_targets(
        screen, config.touch_target_min_dp.num(),
        config.touch_target_min_dp.den());
    if (got != expected) {
      CAPTURE(seed);
      REQUIRE(got == expected);
    }
    if (!expected.empty()) ++screens_with_issues;
  }
  CHECK(screens_with_issues > 100);

  SUBCASE("fractional thresholds stay exact") {
    CheckConfig strict;
    strict.touch_target_min_dp = Rational::parse("47.5");
    for (std::uint32_t seed = 400; seed < 600; ++seed) {
      ui::Screen screen = test::random_screen(seed);
      AuditResult result = check_touch_target(screen, strict);
      std::set<std::string> got;
      for (const Issue& issue : result.issues) {
        std::string self;
        for (int p : issue.node_path) {
          if (!self.empty()) self += '.';
          self += std::to_string(p);
        }
        got.insert(self);
      }
      auto expected = test::oracle_small_targets(screen, 95, 2);
      REQUIRE(got == expected);
    }
  }
}
