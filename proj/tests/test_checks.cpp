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
#include "support/test_support.hpp"

using namespace a11y;
using namespace a11y::checks;
using a11y::ui::Bounds;
using a11y::ui::Color;
using a11y::ui::Screen;
using a11y::ui::ViewNode;

namespace {

// All fixtures run at 160dpi, where pixels equal dp.
Screen one_node_screen(ViewNode node) {
  ViewNode root = a11y::test::make_node("android.widget.FrameLayout",
                                        Bounds{0, 0, 480, 800});
  root.children.push_back(std::move(node));
  return a11y::test::make_screen("com.example/.Main", std::move(root));
}

CheckConfig defaults() { return CheckConfig{}; }

}  // namespace

TEST_CASE("issue type names are stable and ordered") {
  const char* expected[] = {"ItemLabel",       "ItemTypeLabel",
                            "EditableItemLabel", "UnsupportedItemType",
                            "ClickableItem",   "ItemDescription",
                            "TouchTarget",     "TextContrast",
                            "ImageContrast",   "Link"};
  int i = 0;
  for (IssueType type : all_issue_types()) {
    CHECK(issue_type_name(type) == expected[i]);
    CHECK(issue_type_from_name(expected[i]) == type);
    ++i;
  }
  CHECK(i == 10);
  CHECK_FALSE(issue_type_from_name("NotAType").has_value());
}

TEST_CASE("relative luminance reference values") {
  CHECK(relative_luminance(Color{0, 0, 0}) == doctest::Approx(0.0));
  CHECK(relative_luminance(Color{255, 255, 255}) == doctest::Approx(1.0));
  CHECK(relative_luminance(Color{0x99, 0x99, 0x99}) ==
        doctest::Approx(0.318547).epsilon(1e-5));
}

TEST_CASE("contrast ratio reference values") {
  auto ratio = [](const char* fg, const char* bg) {
    return contrast_ratio(Color::from_hex(fg), Color::from_hex(bg));
  };
  CHECK(ratio("#000000", "#FFFFFF") == doctest::Approx(21.0));
  CHECK(ratio("#FFFFFF", "#000000") == doctest::Approx(21.0));
  CHECK(ratio("#999999", "#FFFFFF") ==
        doctest::Approx(2.849028).epsilon(1e-5));
  CHECK(ratio("#FFFFFF", "#AAAAAA") ==
        doctest::Approx(2.323123).epsilon(1e-5));
  CHECK(ratio("#B2B2B2", "#FFFFFF") ==
        doctest::Approx(2.120350).epsilon(1e-5));
  CHECK(ratio("#878787", "#FFFFFF") ==
        doctest::Approx(3.592432).epsilon(1e-5));
  CHECK(ratio("#9E9E9E", "#FFFFFF") ==
        doctest::Approx(2.679156).epsilon(1e-5));
  CHECK(ratio("#E8E8E8", "#FFFFFF") ==
        doctest::Approx(1.225272).epsilon(1e-5));
  CHECK(ratio("#DE8F94", "#EFEFEF") ==
        doctest::Approx(2.158119).epsilon(1e-5));
  CHECK(ratio("#9D797E", "#C88886") ==
        doctest::Approx(1.338573).epsilon(1e-5));
  CHECK(ratio("#008CCA", "#B05656") ==
        doctest::Approx(1.299796).epsilon(1e-5));
  CHECK(ratio("#C46A9E", "#7755CD") ==
        doctest::Approx(1.488520).epsilon(1e-5));
  // Grays straddling the 3.0 threshold against white.
  CHECK(ratio("#939393", "#FFFFFF") ==
        doctest::Approx(3.072236).epsilon(1e-5));
  CHECK(ratio("#949494", "#FFFFFF") ==
        doctest::Approx(3.033470).epsilon(1e-5));
  CHECK(ratio("#959595", "#FFFFFF") ==
        doctest::Approx(2.995346).epsilon(1e-5));
  CHECK(ratio("#969696", "#FFFFFF") ==
        doctest::Approx(2.957852).epsilon(1e-5));
}

TEST_CASE("round2") {
  CHECK(round2(2.995346) == doctest::Approx(3.0));
  CHECK(round2(2.849028) == doctest::Approx(2.85));
  CHECK(round2(2.994999) == doctest::Approx(2.99));
}

TEST_CASE("item label flags silent actionable nodes") {
  ViewNode button = a11y::test::make_node("android.widget.ImageButton",
                                          Bounds{40, 40, 140, 140});
  button.clickable = true;
  Screen screen = one_node_screen(button);
  AuditResult result = check_item_label(screen, defaults());
  REQUIRE(result.issues.size() == 1);
  CHECK(result.issues[0].type == IssueType::kItemLabel);
  CHECK(result.issues[0].node_path == std::vector<int>{0});
  CHECK(result.issues[0].activity_name == "com.example/.Main");

  SUBCASE("a description silences it") {
    screen.root.children[0].content_desc = "Play";
    CHECK(check_item_label(screen, defaults()).issues.empty());
  }
  SUBCASE("whitespace only text does not count as a label") {
    screen.root.children[0].text = "   ";
    CHECK(check_item_label(screen, defaults()).issues.size() == 1);
  }
  SUBCASE("disabled nodes are skipped") {
    screen.root.children[0].enabled = false;
    CHECK(check_item_label(screen, defaults()).issues.empty());
  }
  SUBCASE("non focusable nodes are skipped") {
    screen.root.children[0].clickable = false;
    CHECK(check_item_label(screen, defaults()).issues.empty());
  }
  SUBCASE("editable fields are the editable check's business") {
    screen.root.children[0].editable = true;
    CHECK(check_item_label(screen, defaults()).issues.empty());
  }
}

TEST_CASE("item type label flags redundant widget words") {
  ViewNode button = a11y::test::make_node("android.widget.Button",
                                          Bounds{40, 40, 240, 140});
  button.clickable = true;
  button.text = "Submit";
  button.content_desc = "Submit button";
  Screen screen = one_node_screen(button);
  AuditResult result = check_item_type_label(screen, defaults());
  REQUIRE(result.issues.size() == 1);
  CHECK(result.issues[0].type == IssueType::kItemTypeLabel);
  CHECK(std::get<std::string>(result.issues[0].metrics.at("redundant_word")) ==
        "button");

  SUBCASE("matching is case insensitive") {
    screen.root.children[0].content_desc = "submit BUTTON";
    CHECK(check_item_type_label(screen, defaults()).issues.size() == 1);
  }
  SUBCASE("substrings are not words") {
    screen.root.children[0].content_desc = "Submit buttons";
    CHECK(check_item_type_label(screen, defaults()).issues.empty());
  }
  SUBCASE("clean labels pass") {
    screen.root.children[0].content_desc = "Submit";
    CHECK(check_item_type_label(screen, defaults()).issues.empty());
  }
}

TEST_CASE("editable item label flags descriptions on editable fields") {
  ViewNode field = a11y::test::make_node("android.widget.EditText",
                                         Bounds{40, 40, 440, 140});
  field.focusable = true;
  field.editable = true;
  field.content_desc = "Enter your name";
  Screen screen = one_node_screen(field);
  AuditResult result = check_editable_item_label(screen, defaults());
  REQUIRE(result.issues.size() == 1);
  CHECK(result.issues[0].type == IssueType::kEditableItemLabel);
  CHECK(std::get<std::string>(result.issues[0].metrics.at("content_desc")) ==
        "Enter your name");

  SUBCASE("hint text alone is fine") {
    screen.root.children[0].content_desc = "";
    screen.root.children[0].text = "Name";
    CHECK(check_editable_item_label(screen, defaults()).issues.empty());
  }
  SUBCASE("non editable nodes are ignored") {
    ViewNode label = a11y::test::make_node("android.widget.TextView",
                                           Bounds{0, 0, 10, 10});
    label.content_desc = "x";
    Screen other = one_node_screen(label);
    CHECK(check_editable_item_label(other, defaults()).issues.empty());
  }
}

TEST_CASE("unsupported type matches configured class prefixes") {
  ViewNode surface = a11y::test::make_node(
      "com.adobe.flash.FlashSurfaceView", Bounds{40, 40, 440, 440});
  surface.focusable = true;
  surface.content_desc = "Flash content";
  Screen screen = one_node_screen(surface);

  CHECK(check_unsupported_type(screen, defaults()).issues.empty());

  CheckConfig config = defaults();
  config.unsupported_classes = {"com.adobe.flash."};
  AuditResult result = check_unsupported_type(screen, config);
  REQUIRE(result.issues.size() == 1);
  CHECK(result.issues[0].type == IssueType::kUnsupportedItemType);
  CHECK(std::get<std::string>(result.issues[0].metrics.at("matched_prefix")) ==
        "com.adobe.flash.");

  SUBCASE("non focusable nodes are not reported") {
    screen.root.children[0].focusable = false;
    CHECK(check_unsupported_type(screen, config).issues.empty());
  }
}

TEST_CASE("clickable overlap flags both partners") {
  ViewNode left = a11y::test::make_node("android.view.View",
                                        Bounds{40, 40, 140, 140});
  left.clickable = true;
  left.content_desc = "Left panel";
  ViewNode right = left;
  right.content_desc = "Right panel";
  ViewNode root = a11y::test::make_node("android.widget.FrameLayout",
                                        Bounds{0, 0, 480, 800});
  root.children.push_back(left);
  root.children.push_back(right);
  Screen screen = a11y::test::make_screen("com.example/.Main", root);

  AuditResult result = check_clickable_overlap(screen, defaults());
  REQUIRE(result.issues.size() == 2);
  CHECK(result.issues[0].node_path == std::vector<int>{0});
  CHECK(result.issues[1].node_path == std::vector<int>{1});
  CHECK(std::get<double>(result.issues[0].metrics.at("coverage")) ==
        doctest::Approx(1.0));
  CHECK(std::get<std::string>(
            result.issues[0].metrics.at("overlap_partner_path")) == "1");

  SUBCASE("parents never overlap their own children") {
    Screen nested = a11y::test::make_screen(
        "com.example/.Main",
        a11y::test::make_node("android.widget.FrameLayout",
                              Bounds{0, 0, 480, 800}));
    ViewNode outer = a11y::test::make_node("android.view.View",
                                           Bounds{40, 40, 140, 140});
    outer.clickable = true;
    ViewNode inner = outer;
    outer.children.push_back(inner);
    nested.root.children.push_back(outer);
    CHECK(check_clickable_overlap(nested, defaults()).issues.empty());
  }
  SUBCASE("coverage below the threshold passes") {
    screen.root.children[1].bounds = Bounds{100, 40, 200, 140};  // 40% cover
    CHECK(check_clickable_overlap(screen, defaults()).issues.empty());
  }
  SUBCASE("long clickable counts too") {
    screen.root.children[0].clickable = false;
    screen.root.children[0].long_clickable = true;
    CHECK(check_clickable_overlap(screen, defaults()).issues.size() == 2);
  }
}

TEST_CASE("duplicate descriptions group by spoken text") {
  ViewNode a = a11y::test::make_node("android.widget.Button",
                                     Bounds{0, 0, 100, 100});
  a.clickable = true;
  a.content_desc = "game";
  ViewNode b = a;
  b.bounds = Bounds{0, 200, 100, 300};
  ViewNode c = a;
  c.bounds = Bounds{0, 400, 100, 500};
  c.content_desc = "other";
  ViewNode d = a;
  d.bounds = Bounds{0, 600, 100, 700};
  ViewNode root = a11y::test::make_node("android.widget.FrameLayout",
                                        Bounds{0, 0, 480, 800});
  root.children = {a, b, c, d};
  Screen screen = a11y::test::make_screen("com.example/.Main", root);

  AuditResult result = check_duplicate_description(screen, defaults());
  // "game" appears three times, "other" once.
  REQUIRE(result.issues.size() == 3);
  for (const Issue& issue : result.issues) {
    CHECK(issue.type == IssueType::kItemDescription);
    CHECK(std::get<std::int64_t>(issue.metrics.at("duplicate_group")) == 0);
    CHECK(std::get<std::string>(issue.metrics.at("speakable_text")) ==
          "game");
  }
  CHECK(result.issues[0].node_path == std::vector<int>{0});
  CHECK(result.issues[1].node_path == std::vector<int>{1});
  CHECK(result.issues[2].node_path == std::vector<int>{3});

  SUBCASE("text and description mix when description is empty") {
    screen.root.children[2].content_desc = "";
    screen.root.children[2].text = "game";
    CHECK(check_duplicate_description(screen, defaults()).issues.size() == 4);
  }
  SUBCASE("non focusable nodes do not join groups") {
    screen.root.children[1].clickable = false;
    AuditResult r = check_duplicate_description(screen, defaults());
    CHECK(r.issues.size() == 2);
  }
}

TEST_CASE("touch target flags sides under 48dp") {
  ViewNode button = a11y::test::make_node("android.widget.Button",
                                          Bounds{40, 40, 87, 100});
  button.clickable = true;
  button.text = "Go";
  Screen screen = one_node_screen(button);

  AuditResult result = check_touch_target(screen, defaults());
  REQUIRE(result.issues.size() == 1);
  const Issue& issue = result.issues[0];
  CHECK(issue.type == IssueType::kTouchTarget);
  CHECK(std::get<double>(issue.metrics.at("width_dp")) ==
        doctest::Approx(47.0));
  CHECK(std::get<double>(issue.metrics.at("height_dp")) ==
        doctest::Approx(60.0));
  CHECK(std::get<double>(issue.metrics.at("min_dp")) == doctest::Approx(48.0));
  CHECK(issue.message.find("47.00x60.00dp") != std::string::npos);
  CHECK(issue.message.find("minimum is 48.00dp") != std::string::npos);

  SUBCASE("exactly 48dp passes") {
    screen.root.children[0].bounds = Bounds{40, 40, 88, 88};
    CHECK(check_touch_target(screen, defaults()).issues.empty());
  }
  SUBCASE("higher density shrinks the dp size") {
    // 88px at 320dpi is 44dp.
    screen.root.children[0].bounds = Bounds{40, 40, 128, 128};
    screen.density_dpi = 320;
    CHECK(check_touch_target(screen, defaults()).issues.size() == 1);
    // 96px at 320dpi is exactly 48dp.
    screen.root.children[0].bounds = Bounds{40, 40, 136, 136};
    CHECK(check_touch_target(screen, defaults()).issues.empty());
  }
  SUBCASE("non clickable nodes are ignored") {
    screen.root.children[0].clickable = false;
    screen.root.children[0].focusable = true;
    CHECK(check_touch_target(screen, defaults()).issues.empty());
  }
  SUBCASE("disabled nodes are ignored") {
    screen.root.children[0].enabled = false;
    CHECK(check_touch_target(screen, defaults()).issues.empty());
  }
}

namespace {

Screen contrast_screen(const char* node_class, Color fg, Color bg,
                       bool with_text) {
  ViewNode node =
      a11y::test::make_node(node_class, Bounds{40, 40, 140, 140});
  if (with_text) node.text = "Hello";
  Screen screen = one_node_screen(node);
  ui::PixelGrid grid = a11y::test::solid_grid(480, 800, bg);
  // 30% of the node region in the foreground color.
  a11y::test::fill_rect(grid, Bounds{40, 40, 140, 70}, fg);
  screen.pixels = std::move(grid);
  return screen;
}

}  // namespace

TEST_CASE("text contrast flags low ratio text") {
  Screen screen = contrast_screen("android.widget.TextView",
                                  Color::from_hex("#999999"),
                                  Color::from_hex("#FFFFFF"), true);
  AuditResult result = check_text_contrast(screen, defaults());
  REQUIRE(result.issues.size() == 1);
  const Issue& issue = result.issues[0];
  CHECK(issue.type == IssueType::kTextContrast);
  CHECK(std::get<std::string>(issue.metrics.at("foreground")) == "#999999");
  CHECK(std::get<std::string>(issue.metrics.at("background")) == "#FFFFFF");
  CHECK(std::get<double>(issue.metrics.at("contrast_ratio")) ==
        doctest::Approx(2.85));
  CHECK(issue.message ==
        "Text contrast ratio 2.85 is below 3.00 (#999999 on #FFFFFF)");

  SUBCASE("unrounded ratio decides the boundary") {
    // 2.995346 -> flagged even though it prints as 3.00.
    Screen edge = contrast_screen("android.widget.TextView",
                                  Color::from_hex("#959595"),
                                  Color::from_hex("#FFFFFF"), true);
    AuditResult r = check_text_contrast(edge, defaults());
    REQUIRE(r.issues.size() == 1);
    CHECK(std::get<double>(r.issues[0].metrics.at("contrast_ratio")) ==
          doctest::Approx(3.0));
    // 3.033470 -> passes.
    Screen pass = contrast_screen("android.widget.TextView",
                                  Color::from_hex("#949494"),
                                  Color::from_hex("#FFFFFF"), true);
    CHECK(check_text_contrast(pass, defaults()).issues.empty());
  }
  SUBCASE("black on white passes") {
    Screen clean = contrast_screen("android.widget.TextView",
                                   Color{0, 0, 0}, Color{255, 255, 255},
                                   true);
    CHECK(check_text_contrast(clean, defaults()).issues.empty());
  }
  SUBCASE("nodes without text are skipped") {
    Screen no_text = contrast_screen("android.widget.TextView",
                                     Color::from_hex("#999999"),
                                     Color{255, 255, 255}, false);
    CHECK(check_text_contrast(no_text, defaults()).issues.empty());
  }
  SUBCASE("uniform regions warn instead of flagging") {
    Screen flat = contrast_screen("android.widget.TextView",
                                  Color{255, 255, 255}, Color{255, 255, 255},
                                  true);
    AuditResult r = check_text_contrast(flat, defaults());
    CHECK(r.issues.empty());
    CHECK(r.warnings.size() == 1);
  }
  SUBCASE("missing screenshot warns once") {
    Screen no_pixels = screen;
    no_pixels.pixels.reset();
    AuditResult r = check_text_contrast(no_pixels, defaults());
    CHECK(r.issues.empty());
    CHECK(r.warnings.size() == 1);
  }
  SUBCASE("threshold is configurable") {
    CheckConfig config = defaults();
    config.contrast_threshold = 4.5;
    Screen gray = contrast_screen("android.widget.TextView",
                                  Color::from_hex("#949494"),
                                  Color::from_hex("#FFFFFF"), true);
    CHECK(check_text_contrast(gray, config).issues.size() == 1);
  }
}

TEST_CASE("image contrast flags low ratio images") {
  Screen screen = contrast_screen("android.widget.ImageView",
                                  Color::from_hex("#DE8F94"),
                                  Color::from_hex("#EFEFEF"), false);
  AuditResult result = check_image_contrast(screen, defaults());
  REQUIRE(result.issues.size() == 1);
  CHECK(result.issues[0].type == IssueType::kImageContrast);
  CHECK(std::get<double>(result.issues[0].metrics.at("contrast_ratio")) ==
        doctest::Approx(2.16));
  CHECK(result.issues[0].message ==
        "Image contrast ratio 2.16 is below 3.00 (#DE8F94 on #EFEFEF)");

  SUBCASE("text classes are not images") {
    Screen text = contrast_screen("android.widget.TextView",
                                  Color::from_hex("#DE8F94"),
                                  Color::from_hex("#EFEFEF"), true);
    CHECK(check_image_contrast(text, defaults()).issues.empty());
  }
  SUBCASE("image button counts") {
    Screen image_button = contrast_screen("android.widget.ImageButton",
                                          Color::from_hex("#DE8F94"),
                                          Color::from_hex("#EFEFEF"), false);
    CHECK(check_image_contrast(image_button, defaults()).issues.size() == 1);
  }
}

TEST_CASE("link flags scheme-less urls") {
  ViewNode text = a11y::test::make_node("android.widget.TextView",
                                        Bounds{40, 40, 240, 100});
  text.text = "Read more";
  text.link_urls = {"/settings"};
  Screen screen = one_node_screen(text);
  AuditResult result = check_link(screen, defaults());
  REQUIRE(result.issues.size() == 1);
  CHECK(result.issues[0].type == IssueType::kLink);
  CHECK(std::get<std::string>(result.issues[0].metrics.at("url")) ==
        "/settings");

  SUBCASE("absolute urls pass") {
    screen.root.children[0].link_urls = {"https://example.com/settings"};
    CHECK(check_link(screen, defaults()).issues.empty());
    screen.root.children[0].link_urls = {"tel:5551212", "mailto:a@b.c"};
    CHECK(check_link(screen, defaults()).issues.empty());
  }
  SUBCASE("first offender is reported") {
    screen.root.children[0].link_urls = {"https://example.com/", "settings",
                                         "also/bad"};
    AuditResult r = check_link(screen, defaults());
    REQUIRE(r.issues.size() == 1);
    CHECK(std::get<std::string>(r.issues[0].metrics.at("url")) == "settings");
  }
  SUBCASE("scheme needs a leading letter") {
    screen.root.children[0].link_urls = {"1http://x"};
    CHECK(check_link(screen, defaults()).issues.size() == 1);
  }
}

TEST_CASE("audit orders issues by type then position") {
  ViewNode unlabeled = a11y::test::make_node("android.widget.ImageButton",
                                             Bounds{300, 40, 340, 80});
  unlabeled.clickable = true;  // ItemLabel and TouchTarget (40x40dp)
  ViewNode link_text = a11y::test::make_node("android.widget.TextView",
                                             Bounds{40, 200, 240, 260});
  link_text.text = "More";
  link_text.link_urls = {"relative/path"};
  ViewNode root = a11y::test::make_node("android.widget.FrameLayout",
                                        Bounds{0, 0, 480, 800});
  root.children = {unlabeled, link_text};
  Screen screen = a11y::test::make_screen("com.example/.Main", root);

  AuditResult result = audit_screen(screen, defaults());
  REQUIRE(result.issues.size() == 3);
  CHECK(result.issues[0].type == IssueType::kItemLabel);
  CHECK(result.issues[1].type == IssueType::kTouchTarget);
  CHECK(result.issues[2].type == IssueType::kLink);
  // No screenshot: both contrast checks warn.
  CHECK(result.warnings.size() == 2);
}

TEST_CASE("issue json round trip") {
  ViewNode button = a11y::test::make_node("android.widget.Button",
                                          Bounds{40, 40, 87, 100});
  button.clickable = true;
  button.text = "Go";
  button.resource_id = "com.example:id/go";
  Screen screen = one_node_screen(button);
  AuditResult result = audit_screen(screen, defaults());
  REQUIRE(result.issues.size() == 1);

  nlohmann::ordered_json j = issue_to_json(result.issues[0]);
  CHECK(j["issue_type"] == "TouchTarget");
  CHECK(j["activity_name"] == "com.example/.Main");
  CHECK(j["node_path"] == nlohmann::ordered_json::array({0}));
  CHECK(j["node_class"] == "android.widget.Button");
  CHECK(j["resource_id"] == "com.example:id/go");
  CHECK(j["bounds"] == "[40,40][87,100]");
  CHECK(j["metrics"]["width_dp"] == doctest::Approx(47.0));

  Issue back = issue_from_json(j);
  CHECK(back.type == result.issues[0].type);
  CHECK(back.activity_name == result.issues[0].activity_name);
  CHECK(back.node_path == result.issues[0].node_path);
  CHECK(back.resource_id == result.issues[0].resource_id);
  CHECK(back.bounds == result.issues[0].bounds);
  CHECK(back.message == result.issues[0].message);
  CHECK(back.metrics.size() == result.issues[0].metrics.size());

  std::string jsonl = issues_to_jsonl(result.issues);
  std::vector<Issue> parsed = issues_from_jsonl(jsonl);
  REQUIRE(parsed.size() == 1);
  CHECK(issues_to_jsonl(parsed) == jsonl);
}
