#include "ispnav/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ispnav {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ScenarioError("scenario: " + path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing key '") + key + "'");
    return *it;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) fail(path, "unknown key '" + item.key() + "'");
    }
}

double get_double(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

double get_double_or(const json& obj, const char* key, const std::string& path, double fallback) {
    if (!obj.contains(key)) return fallback;
    return get_double(obj, key, path);
}

int get_int(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

int get_int_or(const json& obj, const char* key, const std::string& path, int fallback) {
    if (!obj.contains(key)) return fallback;
    return get_int(obj, key, path);
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

bool valid_id(const std::string& id) {
    if (id.empty()) return false;
    for (const char c : id) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    }
    return true;
}

SimConfig parse_sim_sections(const json& root) {
    SimConfig config;

    const json& sim = require(root, "sim", "$");
    check_keys(sim, {"dt", "steps", "steering_limit", "steering_rate_limit", "noise_std_px"},
               "sim");
    config.dt = get_double(sim, "dt", "sim");
    config.steps = get_int(sim, "steps", "sim");
    config.steering_limit = get_double(sim, "steering_limit", "sim");
    config.steering_rate_limit = get_double(sim, "steering_rate_limit", "sim");
    config.noise_std_px = get_double_or(sim, "noise_std_px", "sim", 0.0);
    if (config.dt <= 0.0) fail("sim.dt", "must be > 0");
    if (config.steps < 1) fail("sim.steps", "must be >= 1");
    if (config.steering_limit < 0.0) fail("sim.steering_limit", "must be >= 0");
    if (config.steering_rate_limit < 0.0) fail("sim.steering_rate_limit", "must be >= 0");
    if (config.noise_std_px < 0.0) fail("sim.noise_std_px", "must be >= 0");

    const json& cam = require(root, "camera", "$");
    check_keys(cam, {"focal_length", "cx", "cy", "width", "height"}, "camera");
    config.intrinsics.focal_length = get_double(cam, "focal_length", "camera");
    config.intrinsics.cx = get_double(cam, "cx", "camera");
    config.intrinsics.cy = get_double(cam, "cy", "camera");
    config.intrinsics.width = get_int(cam, "width", "camera");
    config.intrinsics.height = get_int(cam, "height", "camera");
    if (config.intrinsics.focal_length <= 0.0) fail("camera.focal_length", "must be > 0");
    if (config.intrinsics.width < 1 || config.intrinsics.height < 1) {
        fail("camera", "width and height must be >= 1");
    }
    if (config.intrinsics.cx < 0.0 || config.intrinsics.cx >= config.intrinsics.width) {
        fail("camera.cx", "must be in [0, width)");
    }
    if (config.intrinsics.cy < 0.0 || config.intrinsics.cy >= config.intrinsics.height) {
        fail("camera.cy", "must be in [0, height)");
    }

    const json& ctl = require(root, "controller", "$");
    check_keys(ctl, {"time_headway", "w_theta", "w_a", "epsilon", "tau_dot_e", "k_p"},
               "controller");
    config.controller.time_headway = get_double(ctl, "time_headway", "controller");
    config.controller.w_theta = get_int(ctl, "w_theta", "controller");
    config.controller.w_a = get_int(ctl, "w_a", "controller");
    config.controller.epsilon = get_double(ctl, "epsilon", "controller");
    config.controller.tau_dot_e = get_double_or(ctl, "tau_dot_e", "controller", 0.0);
    config.controller.k_p = get_double(ctl, "k_p", "controller");
    if (config.controller.time_headway <= 0.0) fail("controller.time_headway", "must be > 0");
    if (config.controller.w_theta < 1 || config.controller.w_theta > config.intrinsics.width) {
        fail("controller.w_theta", "must be in [1, camera.width]");
    }
    if (config.controller.w_a < 1 || config.controller.w_a > config.intrinsics.width) {
        fail("controller.w_a", "must be in [1, camera.width]");
    }
    if (config.controller.epsilon <= 0.0) fail("controller.epsilon", "must be > 0");
    if (config.controller.k_p <= 0.0) fail("controller.k_p", "must be > 0");

    const json& est = require(root, "estimator", "$");
    check_keys(est, {"smoothing_alpha", "min_samples"}, "estimator");
    config.estimator.smoothing_alpha = get_double(est, "smoothing_alpha", "estimator");
    config.estimator.min_samples = get_int_or(est, "min_samples", "estimator", 2);
    if (config.estimator.smoothing_alpha <= 0.0 || config.estimator.smoothing_alpha > 1.0) {
        fail("estimator.smoothing_alpha", "must be in (0, 1]");
    }
    if (config.estimator.min_samples < 2) fail("estimator.min_samples", "must be >= 2");

    return config;
}

AgentSpec parse_agent(const json& a, const SimConfig& config, const std::string& path) {
    check_keys(a,
               {"id", "mode", "x", "y", "heading", "speed", "steering", "body_width",
                "body_height", "a_min", "a_max", "goal", "setpoint_speed", "script"},
               path);
    AgentSpec spec;
    spec.state.id = get_string(a, "id", path);
    if (!valid_id(spec.state.id)) fail(path + ".id", "must match [A-Za-z0-9_-]+");

    const std::string mode = get_string(a, "mode", path);
    if (mode == "controlled") {
        spec.mode = AgentMode::controlled;
    } else if (mode == "scripted") {
        spec.mode = AgentMode::scripted;
    } else {
        fail(path + ".mode", "must be 'controlled' or 'scripted'");
    }

    spec.state.x = get_double(a, "x", path);
    spec.state.y = get_double(a, "y", path);
    spec.state.heading = get_double(a, "heading", path);
    if (spec.state.heading <= -std::numbers::pi || spec.state.heading > std::numbers::pi) {
        fail(path + ".heading", "must be in (-pi, pi]");
    }
    spec.state.speed = get_double(a, "speed", path);
    if (spec.state.speed < 0.0) fail(path + ".speed", "must be >= 0");
    spec.state.steering = get_double_or(a, "steering", path, 0.0);
    if (std::abs(spec.state.steering) > config.steering_limit) {
        fail(path + ".steering", "exceeds sim.steering_limit");
    }
    spec.state.body_width = get_double(a, "body_width", path);
    spec.state.body_height = get_double(a, "body_height", path);
    if (spec.state.body_width <= 0.0 || spec.state.body_height <= 0.0) {
        fail(path, "body extents must be > 0");
    }
    spec.state.a_min = get_double(a, "a_min", path);
    spec.state.a_max = get_double(a, "a_max", path);
    if (!(spec.state.a_min < 0.0 && 0.0 < spec.state.a_max)) {
        fail(path, "need a_min < 0 < a_max");
    }
    spec.state.setpoint_speed = get_double_or(a, "setpoint_speed", path, 0.0);
    if (spec.state.setpoint_speed < 0.0) fail(path + ".setpoint_speed", "must be >= 0");

    if (a.contains("goal")) {
        const json& g = a["goal"];
        if (!g.is_array() || g.size() != 2 || !g[0].is_number() || !g[1].is_number()) {
            fail(path + ".goal", "expected [x, y]");
        }
        spec.state.goal = WorldPoint{g[0].get<double>(), g[1].get<double>()};
    }
    if (spec.mode == AgentMode::controlled && !spec.state.goal) {
        fail(path, "controlled agents need a goal");
    }

    if (a.contains("script")) {
        const json& s = a["script"];
        if (!s.is_array()) fail(path + ".script", "expected an array");
        if (spec.mode == AgentMode::controlled && !s.empty()) {
            fail(path + ".script", "controlled agents take no script");
        }
        for (std::size_t k = 0; k < s.size(); ++k) {
            const json& cmd = s[k];
            const std::string cmd_path = path + ".script[" + std::to_string(k) + "]";
            if (!cmd.is_array() || cmd.size() != 2 || !cmd[0].is_number() ||
                !cmd[1].is_number()) {
                fail(cmd_path, "expected [steering, accel]");
            }
            const ScriptStep step{cmd[0].get<double>(), cmd[1].get<double>()};
            if (step.accel < -1.0 || step.accel > 1.0) {
                fail(cmd_path, "accel must be in [-1, 1]");
            }
            spec.script.push_back(step);
        }
    }
    return spec;
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario: ") + e.what());
    }
    if (!root.is_object()) throw ScenarioError("scenario: top level must be an object");
    check_keys(root, {"name", "sim", "camera", "controller", "estimator", "agents"}, "$");

    Scenario scenario;
    scenario.name = get_string(root, "name", "$");
    scenario.config = parse_sim_sections(root);

    const json& agents = require(root, "agents", "$");
    if (!agents.is_array() || agents.empty()) {
        fail("agents", "expected a non-empty array");
    }
    std::set<std::string> seen_ids;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string path = "agents[" + std::to_string(i) + "]";
        AgentSpec spec = parse_agent(agents[i], scenario.config, path);
        if (!seen_ids.insert(spec.state.id).second) {
            fail(path + ".id", "duplicate id '" + spec.state.id + "'");
        }
        scenario.agents.push_back(std::move(spec));
    }
    return scenario;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError("scenario: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& scenario) {
    ordered_json root;
    root["name"] = scenario.name;

    const SimConfig& c = scenario.config;
    root["sim"] = {{"dt", c.dt},
                   {"steps", c.steps},
                   {"steering_limit", c.steering_limit},
                   {"steering_rate_limit", c.steering_rate_limit},
                   {"noise_std_px", c.noise_std_px}};
    root["camera"] = {{"focal_length", c.intrinsics.focal_length},
                      {"cx", c.intrinsics.cx},
                      {"cy", c.intrinsics.cy},
                      {"width", c.intrinsics.width},
                      {"height", c.intrinsics.height}};
    root["controller"] = {{"time_headway", c.controller.time_headway},
                          {"w_theta", c.controller.w_theta},
                          {"w_a", c.controller.w_a},
                          {"epsilon", c.controller.epsilon},
                          {"tau_dot_e", c.controller.tau_dot_e},
                          {"k_p", c.controller.k_p}};
    root["estimator"] = {{"smoothing_alpha", c.estimator.smoothing_alpha},
                         {"min_samples", c.estimator.min_samples}};

    root["agents"] = ordered_json::array();
    for (const AgentSpec& spec : scenario.agents) {
        ordered_json a;
        a["id"] = spec.state.id;
        a["mode"] = spec.mode == AgentMode::controlled ? "controlled" : "scripted";
        a["x"] = spec.state.x;
        a["y"] = spec.state.y;
        a["heading"] = spec.state.heading;
        a["speed"] = spec.state.speed;
        a["steering"] = spec.state.steering;
        a["body_width"] = spec.state.body_width;
        a["body_height"] = spec.state.body_height;
        a["a_min"] = spec.state.a_min;
        a["a_max"] = spec.state.a_max;
        if (spec.state.goal) {
            a["goal"] = {spec.state.goal->x, spec.state.goal->y};
        }
        a["setpoint_speed"] = spec.state.setpoint_speed;
        if (!spec.script.empty()) {
            ordered_json script = ordered_json::array();
            for (const ScriptStep& s : spec.script) {
                script.push_back({s.steering, s.accel});
            }
            a["script"] = std::move(script);
        }
        root["agents"].push_back(std::move(a));
    }
    return root.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ScenarioError("scenario: cannot write '" + path + "'");
    out << scenario_to_json(scenario);
}

} // namespace ispnav
