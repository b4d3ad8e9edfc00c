#include "ispnav/control.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "ispnav/kernels.hpp"
#include "ispnav/tau.hpp"

namespace ispnav {

double AccelInterval::clamp(double v) const noexcept {
    const double upper = hi_open ? hi - kHalfOpenDelta : hi;
    return std::clamp(v, lo, upper);
}

std::vector<PotentialTuple> column_min_map(const IspField& field, int w_theta) {
    if (w_theta < 1 || w_theta > field.width()) {
        throw std::invalid_argument("column_min_map: w_theta outside [1, width]");
    }
    return kernels::column_min_map(field.cells(), field.width(), field.height(), w_theta);
}

namespace {

void validate_controller(const ControllerParams& params, int width) {
    if (params.time_headway <= 0.0) {
        throw std::invalid_argument("safe_controls: time_headway must be positive");
    }
    if (params.w_theta < 1 || params.w_theta > width) {
        throw std::invalid_argument("safe_controls: w_theta outside [1, width]");
    }
    if (params.w_a < 1 || params.w_a > width) {
        throw std::invalid_argument("safe_controls: w_a outside [1, width]");
    }
    if (params.epsilon <= 0.0) {
        throw std::invalid_argument("safe_controls: epsilon must be positive");
    }
    if (params.k_p <= 0.0) {
        throw std::invalid_argument("safe_controls: k_p must be positive");
    }
}

} // namespace

ControlSet safe_controls(const IspField& field, const CameraIntrinsics& intrinsics,
                         const ControllerParams& params) {
    if (field.width() != intrinsics.width || field.height() != intrinsics.height) {
        throw std::invalid_argument("safe_controls: field and camera dimensions differ");
    }
    validate_controller(params, field.width());

    const ExtendedReal headway(params.time_headway);
    const std::vector<PotentialTuple> col_map = column_min_map(field, params.w_theta);

    ControlSet out;
    out.safe_columns.reserve(col_map.size());
    for (int i = 0; i < field.width(); ++i) {
        if (col_map[i].tau >= headway) {
            out.safe_columns.push_back(SafeColumn{i, column_to_angle(intrinsics, i), col_map[i]});
        }
    }

    // Centered w_a x height window; an even w_a rounds its left edge down.
    const int center = field.width() / 2;
    const int x_lo = center - params.w_a / 2;
    const PotentialTuple central =
        min_over_window(field, x_lo, x_lo + params.w_a - 1, 0, field.height() - 1);

    if (out.safe_columns.empty()) {
        out.fallback_straight = true;
        out.accel = AccelInterval::brake();
    } else if (central.tau > headway) {
        out.accel = AccelInterval::full();
    } else if (braking_decision(central.tau_dot, params.epsilon) == 0) {
        out.accel = AccelInterval::brake();
    } else {
        out.accel = AccelInterval::decel_only();
    }
    return out;
}

GuidedCommand guided_control(PixelPoint goal_pixel, const IspField& field,
                             const CameraIntrinsics& intrinsics, const ControllerParams& params,
                             double current_steering, double current_speed,
                             double setpoint_speed, bool retain_current_angle) {
    if (goal_pixel.x < 0 || goal_pixel.x >= intrinsics.width || goal_pixel.y < 0 ||
        goal_pixel.y >= intrinsics.height) {
        throw std::invalid_argument("guided_control: goal pixel outside image");
    }

    ControlSet controls = safe_controls(field, intrinsics, params);
    const double goal_angle = column_to_angle(intrinsics, goal_pixel.x);

    double steering = 0.0;
    if (!controls.fallback_straight) {
        // Selection key: distance to the goal angle, then |angle|, then the
        // signed angle. Strict lexicographic comparison keeps the choice
        // independent of enumeration order.
        auto key = [&](double angle) {
            return std::array<double, 3>{std::abs(angle - goal_angle), std::abs(angle), angle};
        };
        bool have_best = false;
        std::array<double, 3> best_key{};
        if (retain_current_angle) {
            steering = current_steering;
            have_best = true;
            best_key = key(current_steering);
            // The retained angle is only displaced by a strictly closer safe
            // angle, so drop the tie-break components.
            best_key[1] = -1.0;
            best_key[2] = 0.0;
        }
        for (const SafeColumn& sc : controls.safe_columns) {
            const std::array<double, 3> k = key(sc.angle);
            if (!have_best || k < best_key) {
                steering = sc.angle;
                best_key = k;
                have_best = true;
            }
        }
    }

    const double accel = controls.accel.clamp(params.k_p * (setpoint_speed - current_speed));
    return GuidedCommand{steering, accel, std::move(controls)};
}

} // namespace ispnav
