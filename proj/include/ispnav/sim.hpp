#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ispnav/camera.hpp"
#include "ispnav/control.hpp"
#include "ispnav/tau.hpp"

namespace ispnav {

// Bicycle-model wheelbase shared by all agents.
inline constexpr double kWheelbase = 2.5; // meters

struct WorldPoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const WorldPoint&, const WorldPoint&) = default;
};

struct AgentState {
    std::string id;
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0; // radians, (-pi, pi]
    double speed = 0.0;   // m/s, >= 0 (no reverse)
    double steering = 0.0;
    double body_width = 1.0;  // billboard extents, meters
    double body_height = 1.0;
    double a_min = -1.0; // m/s^2, < 0
    double a_max = 1.0;  // m/s^2, > 0
    std::optional<WorldPoint> goal;
    double setpoint_speed = 0.0;

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

enum class AgentMode { controlled, scripted };

struct ScriptStep {
    double steering = 0.0;
    double accel = 0.0; // scaled, [-1, 1]

    friend bool operator==(const ScriptStep&, const ScriptStep&) = default;
};

// Scripted agents replay their command list; past its end the last command
// holds (an empty script coasts straight).
struct AgentSpec {
    AgentState state;
    AgentMode mode = AgentMode::scripted;
    std::vector<ScriptStep> script;

    friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

struct SimConfig {
    double dt = 0.01; // seconds, > 0
    int steps = 1;    // >= 1
    CameraIntrinsics intrinsics;
    ControllerParams controller;
    EstimatorParams estimator;
    double steering_limit = 0.5;       // radians
    double steering_rate_limit = 0.05; // radians per step
    double noise_std_px = 0.0;         // optional Gaussian noise on projected extents

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct Scenario {
    std::string name;
    SimConfig config;
    std::vector<AgentSpec> agents;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// One row per (step, agent). State columns are post-step; the command and
// controller columns describe the decision applied during the step. min_tau
// and min_sep may be +inf (scripted agents sense nothing; a lone agent has
// no separation).
struct TraceRecord {
    int step = 0;
    double time = 0.0; // (step + 1) * dt, the instant of the recorded state
    std::string agent;
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;
    double speed = 0.0;
    double steer_cmd = 0.0;
    double accel_scaled = 0.0;
    double accel_ms2 = 0.0;
    ExtendedReal min_tau = ExtendedReal::infinity(); // over the sensed field
    int safe_cols = 0;
    double accel_lo = -1.0;
    double accel_hi = 1.0;
    double min_sep = 0.0; // meters to the nearest other agent, post-step
    bool collided = false;
};

// Physical acceleration for a scaled command: positive commands scale a_max,
// negative ones |a_min|.
double physical_accel(const AgentState& state, double accel_scaled);

// One kinematic step: clamps the commands, updates speed (never below zero),
// slews steering toward the command by at most steering_rate_limit, then
// integrates heading and position with the updated values.
AgentState step_agent(AgentState state, double steering_cmd, double accel_scaled, double dt,
                      const SimConfig& config);

// Center distance minus both circumradii (billboard half-diagonals);
// negative values measure collision depth.
double min_separation(const AgentState& a, const AgentState& b);

struct SenseResult {
    IspField field;
    std::map<int, ScaleTrack> tracks; // keyed by world index; reset when unseen
};

// One sensing pass for `observer`: projects every other agent through the
// observer's camera, updates the per-object scale tracks, and accumulates
// ready tracks into a single field via roi writes (algebraically identical
// to composing per-object fields, without materializing them). Tracks of
// agents that are not visible this step are dropped.
SenseResult sense(std::span<const AgentState> world, int observer_index,
                  std::map<int, ScaleTrack> tracks, double t, const SimConfig& config,
                  std::mt19937_64* noise_rng = nullptr);

using FieldDumpHook = std::function<void(int step, const std::string& agent_id, const IspField&)>;

struct RunResult {
    std::vector<TraceRecord> trace;
    bool collided = false;
};

// Closed-loop run: per step each controlled agent senses a frozen world
// snapshot, projects its goal to a pixel (goal behind the camera falls back
// to straight + full brake), selects guided controls, and every agent steps.
// Terminates early when any separation reaches zero, flagging the final
// records. `dump` (when set) receives the first controlled agent's field
// every `dump_every` steps. Identical scenario + seed give identical traces.
RunResult run(const Scenario& scenario, std::uint64_t seed = 0,
              const FieldDumpHook& dump = {}, int dump_every = 1);

} // namespace ispnav
