#include "ispnav/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ispnav {
namespace {

constexpr double kPi = std::numbers::pi;

double normalize_angle(double a) {
    double r = std::fmod(a + kPi, 2.0 * kPi);
    if (r <= 0.0) r += 2.0 * kPi;
    return r - kPi;
}

double circumradius(const AgentState& s) {
    return 0.5 * std::hypot(s.body_width, s.body_height);
}

} // namespace

double physical_accel(const AgentState& state, double accel_scaled) {
    return accel_scaled >= 0.0 ? accel_scaled * state.a_max : accel_scaled * -state.a_min;
}

AgentState step_agent(AgentState state, double steering_cmd, double accel_scaled, double dt,
                      const SimConfig& config) {
    accel_scaled = std::clamp(accel_scaled, -1.0, 1.0);
    steering_cmd = std::clamp(steering_cmd, -config.steering_limit, config.steering_limit);

    const double a = physical_accel(state, accel_scaled);
    state.speed = std::max(0.0, state.speed + a * dt);

    const double delta = std::clamp(steering_cmd - state.steering, -config.steering_rate_limit,
                                    config.steering_rate_limit);
    state.steering = std::clamp(state.steering + delta, -config.steering_limit,
                                config.steering_limit);

    state.heading = normalize_angle(state.heading +
                                    state.speed * std::tan(state.steering) / kWheelbase * dt);
    state.x += state.speed * std::cos(state.heading) * dt;
    state.y += state.speed * std::sin(state.heading) * dt;
    return state;
}

double min_separation(const AgentState& a, const AgentState& b) {
    return std::hypot(a.x - b.x, a.y - b.y) - circumradius(a) - circumradius(b);
}

SenseResult sense(std::span<const AgentState> world, int observer_index,
                  std::map<int, ScaleTrack> tracks, double t, const SimConfig& config,
                  std::mt19937_64* noise_rng) {
    const AgentState& observer = world[observer_index];
    const CameraPose pose{observer.x, observer.y, observer.heading};
    const bool noisy = config.noise_std_px > 0.0 && noise_rng != nullptr;
    std::normal_distribution<double> noise(0.0, noisy ? config.noise_std_px : 1.0);

    IspField field(config.intrinsics.width, config.intrinsics.height);
    std::map<int, ScaleTrack> next_tracks;

    for (int j = 0; j < static_cast<int>(world.size()); ++j) {
        if (j == observer_index) continue;
        const AgentState& other = world[j];
        double nw = 0.0;
        double nh = 0.0;
        if (noisy) {
            // Two draws per candidate regardless of visibility keeps the
            // noise stream aligned across steps.
            nw = noise(*noise_rng);
            nh = noise(*noise_rng);
        }
        const BodyBillboard body{other.body_width, other.body_height, other.x, other.y, j};
        const auto projection = project_billboard(config.intrinsics, pose, body, nw, nh);
        if (!projection) continue; // track of an unseen agent is dropped (reset)

        auto it = tracks.find(j);
        ScaleTrack track = (it != tracks.end()) ? std::move(it->second) : ScaleTrack(j);
        track = update_track(std::move(track), t, projection->scale, projection->roi,
                             config.estimator);

        const int ready = std::max(2, config.estimator.min_samples);
        if (static_cast<int>(track.samples().size()) >= ready && track.tau()) {
            const PotentialTuple tuple(*track.tau(),
                                       track.tau_dot().value_or(ExtendedReal::infinity()));
            field = write_roi(std::move(field), track.samples().back().roi, tuple);
        }
        next_tracks.emplace(j, std::move(track));
    }
    return SenseResult{std::move(field), std::move(next_tracks)};
}

namespace {

struct StepDecision {
    double steer_cmd = 0.0;
    double accel_scaled = 0.0;
    ExtendedReal min_tau = ExtendedReal::infinity();
    int safe_cols = 0;
    AccelInterval interval = AccelInterval::full();
};

StepDecision decide_controlled(const std::vector<AgentState>& snapshot, int index,
                               std::map<int, ScaleTrack>& tracks, double t,
                               const SimConfig& config, std::mt19937_64* rng,
                               const FieldDumpHook& dump, bool is_dump_step, int step) {
    const AgentState& self = snapshot[index];
    SenseResult sensed = sense(snapshot, index, std::move(tracks), t, config, rng);
    tracks = std::move(sensed.tracks);
    if (dump && is_dump_step) {
        dump(step, self.id, sensed.field);
    }

    StepDecision d;
    d.min_tau = min_over_window(sensed.field, 0, config.intrinsics.width - 1, 0,
                                config.intrinsics.height - 1)
                    .tau;

    const CameraPose pose{self.x, self.y, self.heading};
    const CameraFramePoint goal_cam = to_camera_frame(pose, self.goal->x, self.goal->y);
    if (goal_cam.depth <= kNearPlane) {
        // Goal behind the camera: straight + full brake.
        d.steer_cmd = 0.0;
        d.accel_scaled = -1.0;
        d.interval = AccelInterval::brake();
        d.safe_cols = 0;
        return d;
    }

    const double bearing = std::atan2(goal_cam.lateral, goal_cam.depth);
    const PixelPoint goal_pixel{
        angle_to_column(config.intrinsics, bearing),
        std::clamp(static_cast<int>(std::lround(config.intrinsics.cy - 0.5)), 0,
                   config.intrinsics.height - 1)};
    const GuidedCommand cmd =
        guided_control(goal_pixel, sensed.field, config.intrinsics, config.controller,
                       self.steering, self.speed, self.setpoint_speed);
    d.steer_cmd = cmd.steering;
    d.accel_scaled = cmd.accel;
    d.safe_cols = static_cast<int>(cmd.controls.safe_columns.size());
    d.interval = cmd.controls.accel;
    return d;
}

} // namespace

RunResult run(const Scenario& scenario, std::uint64_t seed, const FieldDumpHook& dump,
              int dump_every) {
    if (scenario.agents.empty()) {
        throw std::invalid_argument("run: scenario needs at least one agent");
    }
    if (dump_every < 1) {
        throw std::invalid_argument("run: dump_every must be >= 1");
    }
    for (const AgentSpec& spec : scenario.agents) {
        if (spec.mode == AgentMode::controlled && !spec.state.goal) {
            throw std::invalid_argument("run: controlled agent '" + spec.state.id +
                                        "' has no goal");
        }
    }

    const SimConfig& config = scenario.config;
    const int n = static_cast<int>(scenario.agents.size());

    int ego = -1;
    for (int i = 0; i < n; ++i) {
        if (scenario.agents[i].mode == AgentMode::controlled) {
            ego = i;
            break;
        }
    }

    std::vector<AgentState> states;
    states.reserve(n);
    for (const AgentSpec& spec : scenario.agents) {
        states.push_back(spec.state);
    }
    std::vector<std::map<int, ScaleTrack>> tracks(n);
    std::mt19937_64 rng(seed);
    std::mt19937_64* rng_ptr = config.noise_std_px > 0.0 ? &rng : nullptr;

    RunResult result;
    result.trace.reserve(static_cast<std::size_t>(config.steps) * n);

    for (int step = 0; step < config.steps; ++step) {
        const double t = step * config.dt;
        const std::vector<AgentState> snapshot = states;
        const bool is_dump_step = dump && (step % dump_every == 0);

        std::vector<StepDecision> decisions(n);
        for (int i = 0; i < n; ++i) {
            const AgentSpec& spec = scenario.agents[i];
            if (spec.mode == AgentMode::controlled) {
                decisions[i] = decide_controlled(snapshot, i, tracks[i], t, config, rng_ptr,
                                                 dump, is_dump_step && i == ego, step);
            } else {
                StepDecision d;
                if (!spec.script.empty()) {
                    const std::size_t k =
                        std::min<std::size_t>(step, spec.script.size() - 1);
                    d.steer_cmd = spec.script[k].steering;
                    d.accel_scaled = spec.script[k].accel;
                }
                decisions[i] = d;
            }
        }

        for (int i = 0; i < n; ++i) {
            states[i] = step_agent(std::move(states[i]), decisions[i].steer_cmd,
                                   decisions[i].accel_scaled, config.dt, config);
        }

        bool any_collision = false;
        std::vector<double> seps(n, std::numeric_limits<double>::infinity());
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                seps[i] = std::min(seps[i], min_separation(states[i], states[j]));
            }
            if (seps[i] <= 0.0) any_collision = true;
        }

        for (int i = 0; i < n; ++i) {
            const StepDecision& d = decisions[i];
            TraceRecord rec;
            rec.step = step;
            rec.time = (step + 1) * config.dt;
            rec.agent = states[i].id;
            rec.x = states[i].x;
            rec.y = states[i].y;
            rec.heading = states[i].heading;
            rec.speed = states[i].speed;
            rec.steer_cmd = d.steer_cmd;
            rec.accel_scaled = d.accel_scaled;
            rec.accel_ms2 = physical_accel(states[i], d.accel_scaled);
            rec.min_tau = d.min_tau;
            rec.safe_cols = d.safe_cols;
            rec.accel_lo = d.interval.lo;
            rec.accel_hi = d.interval.hi;
            rec.min_sep = seps[i];
            rec.collided = seps[i] <= 0.0;
            result.trace.push_back(std::move(rec));
        }

        if (any_collision) {
            result.collided = true;
            break;
        }
    }
    return result;
}

} // namespace ispnav
