#include <limits>

#include "doctest.h"
#include "ispnav/scenario.hpp"
#include "ispnav/trace.hpp"

using namespace ispnav;

namespace {

const char* kValid = R"({
  "name": "demo",
  "sim": {"dt": 0.01, "steps": 50, "steering_limit": 0.5, "steering_rate_limit": 0.02},
  "camera": {"focal_length": 160.0, "cx": 160.0, "cy": 120.0, "width": 320, "height": 240},
  "controller": {"time_headway": 2.0, "w_theta": 11, "w_a": 11, "epsilon": 0.1, "k_p": 0.5},
  "estimator": {"smoothing_alpha": 1.0, "min_samples": 2},
  "agents": [
    {"id": "ego", "mode": "controlled", "x": 0, "y": 0, "heading": 0, "speed": 10,
     "body_width": 2, "body_height": 2, "a_min": -5, "a_max": 2,
     "goal": [100, 0], "setpoint_speed": 10},
    {"id": "obs", "mode": "scripted", "x": 50, "y": 0, "heading": 0, "speed": 0,
     "body_width": 2, "body_height": 2, "a_min": -1, "a_max": 1,
     "script": [[0.0, 0.0], [0.1, -0.5]]}
  ]
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

} // namespace

TEST_CASE("scenario parsing: a valid document round-trips") {
    const Scenario s = parse_scenario(kValid);
    CHECK(s.name == "demo");
    CHECK(s.config.dt == 0.01);
    CHECK(s.config.steps == 50);
    CHECK(s.config.noise_std_px == 0.0); // optional, defaulted
    CHECK(s.config.intrinsics.width == 320);
    CHECK(s.config.controller.tau_dot_e == 0.0);
    REQUIRE(s.agents.size() == 2);
    CHECK(s.agents[0].mode == AgentMode::controlled);
    CHECK(s.agents[0].state.goal.has_value());
    CHECK(s.agents[1].script.size() == 2);
    CHECK(s.agents[1].script[1] == ScriptStep{0.1, -0.5});

    const std::string saved = scenario_to_json(s);
    const Scenario reloaded = parse_scenario(saved);
    CHECK(reloaded == s);
    CHECK(scenario_to_json(reloaded) == saved); // saving is a fixpoint
}

TEST_CASE("scenario parsing: strictness and validation") {
    SUBCASE("unknown keys are rejected at every level") {
        CHECK_THROWS_AS(parse_scenario(replace(kValid, "\"name\"", "\"nam\"")), ScenarioError);
        CHECK_THROWS_AS(parse_scenario(replace(kValid, "\"dt\"", "\"delta\"")), ScenarioError);
        CHECK_THROWS_AS(parse_scenario(replace(kValid, "\"mode\": \"scripted\"",
                                               "\"mode\": \"scripted\", \"color\": 3")),
                        ScenarioError);
    }

    SUBCASE("syntax errors carry line numbers") {
        bool threw = false;
        try {
            parse_scenario("{\n  \"name\": \"x\",\n  broken\n}");
        } catch (const ScenarioError& e) {
            threw = true;
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
        CHECK(threw);
    }

    SUBCASE("range violations are rejected") {
        CHECK_THROWS_AS(parse_scenario(replace(kValid, "\"dt\": 0.01", "\"dt\": 0")),
                        ScenarioError);
        CHECK_THROWS_AS(parse_scenario(replace(kValid, "\"steps\": 50", "\"steps\": 0")),
                        ScenarioError);
        CHECK_THROWS_AS(parse_scenario(replace(kValid, "\"w_theta\": 11, ", "\"w_theta\": 321, ")),
                        ScenarioError);
        CHECK_THROWS_AS(
            parse_scenario(replace(kValid, "\"smoothing_alpha\": 1.0", "\"smoothing_alpha\": 0")),
            ScenarioError);
        CHECK_THROWS_AS(parse_scenario(replace(kValid, "\"speed\": 10", "\"speed\": -1")),
                        ScenarioError);
        CHECK_THROWS_AS(parse_scenario(replace(kValid, "\"a_min\": -5", "\"a_min\": 1")),
                        ScenarioError);
        CHECK_THROWS_AS(parse_scenario(replace(kValid, "\"steps\": 50", "\"steps\": 50.5")),
                        ScenarioError);
        CHECK_THROWS_AS(parse_scenario(replace(kValid, "\"id\": \"obs\"", "\"id\": \"ego\"")),
                        ScenarioError); // duplicate id
        CHECK_THROWS_AS(parse_scenario(replace(kValid, "\"id\": \"obs\"", "\"id\": \"o bs\"")),
                        ScenarioError); // bad id characters
        CHECK_THROWS_AS(
            parse_scenario(replace(kValid, "\"goal\": [100, 0], ", "")),
            ScenarioError); // controlled agent without a goal
        CHECK_THROWS_AS(
            parse_scenario(replace(kValid, "[0.1, -0.5]", "[0.1, -1.5]")),
            ScenarioError); // script accel outside [-1, 1]
    }

    SUBCASE("empty agent lists are rejected") {
        Scenario s = parse_scenario(kValid);
        s.agents.clear();
        CHECK_THROWS_AS(parse_scenario(scenario_to_json(s)), ScenarioError);
    }
}

TEST_CASE("trace formatting: exact header, 9 significant digits, inf spelled out") {
    CHECK(kTraceHeader ==
          "step,time,agent,x,y,heading,speed,steer_cmd,accel_scaled,accel_ms2,min_tau,"
          "safe_cols,accel_lo,accel_hi,min_sep,collided");

    TraceRecord rec;
    rec.step = 3;
    rec.time = 0.04;
    rec.agent = "ego";
    rec.x = 1.0 / 3.0;
    rec.y = -2.25;
    rec.heading = 0.1;
    rec.speed = 12.3456789123;
    rec.steer_cmd = 0.0;
    rec.accel_scaled = -1.0;
    rec.accel_ms2 = -5.0;
    rec.min_tau = ExtendedReal::infinity();
    rec.safe_cols = 320;
    rec.accel_lo = -1.0;
    rec.accel_hi = 0.0;
    rec.min_sep = std::numeric_limits<double>::infinity();
    rec.collided = false;

    const std::string csv = trace_to_csv(std::span<const TraceRecord>(&rec, 1));
    const std::string expected_header(kTraceHeader);
    CHECK(csv.substr(0, expected_header.size()) == expected_header);
    const std::string row = csv.substr(expected_header.size() + 1);
    CHECK(row ==
          "3,0.04,ego,0.333333333,-2.25,0.1,12.3456789,0,-1,-5,inf,320,-1,0,inf,0\n");
}
