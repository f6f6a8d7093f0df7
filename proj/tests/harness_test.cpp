// Copyright 2026 The conefact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "conefact/harness.hpp"

#include <gtest/gtest.h>

using namespace conefact;

namespace {

std::string error_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

Json without_timing(Json j) {
    j.erase("wall_time");
    return j;
}

}  // namespace

TEST(harness, defaults_are_valid) {
    RunConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_EQ(cfg.window_radius, 16);
    EXPECT_EQ(cfg.margin, 2);
    EXPECT_EQ(cfg.seed, 2026u);
    EXPECT_EQ(cfg.checks, known_checks());
}

TEST(harness, validation_errors) {
    RunConfig cfg;
    cfg.checks = {};
    EXPECT_EQ(error_of([&] { run(cfg); }), "no checks requested");
    cfg.checks = {"operad-laws", "bogus"};
    EXPECT_EQ(error_of([&] { cfg.validate(); }), "unknown check 'bogus'");
    cfg = RunConfig{};
    cfg.margin = 0;
    EXPECT_EQ(error_of([&] { cfg.validate(); }), "margin must be at least 1");
    cfg = RunConfig{};
    cfg.window_radius = 4;
    EXPECT_EQ(error_of([&] { cfg.validate(); }), "window must exceed twice the margin");
    cfg = RunConfig{};
    cfg.dim = 3;
    EXPECT_EQ(error_of([&] { cfg.validate(); }), "check 'geometric-witnesses' needs dim 2");
    cfg.checks = {"operad-laws"};
    EXPECT_NO_THROW(cfg.validate());
}

TEST(harness, infeasible_window) {
    RunConfig cfg;
    cfg.window_radius = 1;
    EXPECT_NE(error_of([&] { checks::require_sector_window(cfg); }).find("infeasible window"), std::string::npos);
    cfg.window_radius = 3;
    EXPECT_NO_THROW(checks::require_sector_window(cfg));
}

TEST(harness, key_value_config) {
    RunConfig cfg = parse_config_text("# comment\nwindow = 12\nmargin=3\n\nseed = 0x10  # hex\nchecks = holonomy, interchange\n");
    EXPECT_EQ(cfg.window_radius, 12);
    EXPECT_EQ(cfg.margin, 3);
    EXPECT_EQ(cfg.seed, 16u);
    EXPECT_EQ(cfg.checks, (std::vector<std::string>{"holonomy", "interchange"}));
    EXPECT_EQ(error_of([] { parse_config_text("window = 8\nfoo = 1\n", {}, "run.cfg"); }), "run.cfg:2: unknown field 'foo'");
    EXPECT_EQ(error_of([] { parse_config_text("margin = two\n"); }), "config:1: field 'margin': expected an integer, got 'two'");
    EXPECT_EQ(error_of([] { parse_config_text("\n\nwindow 8\n"); }), "config:3: expected 'key = value'");
}

TEST(harness, json_config) {
    RunConfig cfg = parse_config_text(R"({"samples": 7, "checks": ["operad-laws"], "seed": 9})");
    EXPECT_EQ(cfg.samples, 7);
    EXPECT_EQ(cfg.seed, 9u);
    EXPECT_EQ(cfg.checks, (std::vector<std::string>{"operad-laws"}));
    EXPECT_EQ(error_of([] { parse_config_text(R"({"samples": 1.5})"); }), "config: field 'samples': unsupported value 1.5");
    EXPECT_EQ(error_of([] { parse_config_text(R"({"dim": 2,})"); }).rfind("config: invalid JSON", 0), 0u);
}

TEST(harness, environment_overrides_file) {
    RunConfig file = parse_config_text("window = 12\nseed = 5\n");
    std::map<std::string, std::string> env = {{"CONEFACT_SEED", "77"}, {"CONEFACT_CHECKS", "holonomy"}};
    RunConfig cfg = apply_env(file, [&](const char *name) -> const char * {
        auto it = env.find(name);
        return it == env.end() ? nullptr : it->second.c_str();
    });
    EXPECT_EQ(cfg.window_radius, 12);
    EXPECT_EQ(cfg.seed, 77u);
    EXPECT_EQ(cfg.checks, (std::vector<std::string>{"holonomy"}));
    env = {{"CONEFACT_MARGIN", "x"}};
    EXPECT_EQ(error_of([&] {
                  apply_env(file, [&](const char *name) -> const char * {
                      auto it = env.find(name);
                      return it == env.end() ? nullptr : it->second.c_str();
                  });
              }),
              "CONEFACT_MARGIN: field 'margin': expected an integer, got 'x'");
}

TEST(harness, operad_laws_small_run) {
    RunConfig cfg;
    cfg.checks = {"operad-laws"};
    cfg.samples = 100;
    cfg.seed = 7;
    Report r = run(cfg);
    ASSERT_EQ(r.checks.size(), 1u);
    EXPECT_TRUE(r.checks[0].pass);
    EXPECT_EQ(r.checks[0].scalars["checked"], 100);
}

TEST(harness, toric_statistics_scalar_table) {
    RunConfig cfg;
    cfg.checks = {"toric-statistics"};
    cfg.window_radius = 8;
    Report r = run(cfg);
    ASSERT_TRUE(r.pass());
    const Json &s = r.checks[0].scalars;
    EXPECT_EQ(s["em"], -1);
    EXPECT_EQ(s["me"], -1);
    EXPECT_EQ(s["ee"], 1);
    EXPECT_EQ(s["mm"], 1);
    EXPECT_EQ(s["eps_self"], -1);
    EXPECT_EQ(s["orientation"]["orientation"], "U1 counterclockwise of U2");
}

TEST(harness, report_shape_and_determinism) {
    RunConfig cfg;
    cfg.checks = {"holonomy", "interchange", "assumption1"};
    cfg.window_radius = 8;
    cfg.samples = 3;
    Json a = run(cfg).to_json(), b = run(cfg).to_json();
    EXPECT_EQ(without_timing(a).dump(), without_timing(b).dump());
    EXPECT_EQ(a["schema"], 1);
    EXPECT_EQ(a["checks"][0]["name"], "holonomy");
    EXPECT_EQ(a["checks"][2]["name"], "assumption1");
    EXPECT_NE(a["notes"][0].get<std::string>().find("Haag duality"), std::string::npos);
    EXPECT_TRUE(a["versions"].contains("boost"));
    EXPECT_TRUE(a["wall_time"]["per_check_seconds"].contains("interchange"));
    cfg.seed = 8;
    EXPECT_NE(without_timing(run(cfg).to_json()).dump(), without_timing(a).dump());
}

TEST(harness, failing_checks_are_reported) {
    CheckResult r{"demo", true};
    SectorCheck c{"identity"};
    c.record(false, [] { return std::string("X(h(0,0))"); });
    r.absorb(c, "ctx");
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.counterexamples[0]["generators"][0], "X(h(0,0))");
    Report rep{RunConfig{}, {r}, 0};
    EXPECT_FALSE(rep.pass());
}

TEST(harness, cone_text_form) {
    ConeSpec c = parse_cone("1/2,0:2,4:-3/5");
    EXPECT_EQ(c, ConeSpec(QVec{Rational(1, 2), Rational(0)}, {1, 2}, rat(-3, 5)));
    EXPECT_EQ(parse_cone(cone_to_json(c).dump()), c);
    EXPECT_THROW(parse_cone("0,0:1,0"), std::invalid_argument);
    EXPECT_THROW(parse_cone("0,0:1/2,0:0"), std::invalid_argument);
}
