#pragma once

#include <vector>

#include "ispnav/camera.hpp"
#include "ispnav/field.hpp"

namespace ispnav {

// Half-open acceleration intervals project their open end inward by this much.
inline constexpr double kHalfOpenDelta = 1e-3;

struct ControllerParams {
    double time_headway = 2.0; // seconds, > 0; minimum acceptable tau
    int w_theta = 11;          // pixels, steering min-filter kernel width
    int w_a = 11;              // pixels, central acceleration window width
    double epsilon = 0.1;      // > 0, buffer of the braking adequacy test
    double tau_dot_e = 0.0;    // accepted for interface compatibility; unused
    double k_p = 0.5;          // 1/s, proportional speed-tracking gain

    friend bool operator==(const ControllerParams&, const ControllerParams&) = default;
};

// Scaled-acceleration interval; only three values ever occur: the full range
// [-1, 1], full braking [-1, -1], and deceleration only [-1, 0).
struct AccelInterval {
    double lo = -1.0;
    double hi = 1.0;
    bool hi_open = false;

    static constexpr AccelInterval full() noexcept { return {-1.0, 1.0, false}; }
    static constexpr AccelInterval brake() noexcept { return {-1.0, -1.0, false}; }
    static constexpr AccelInterval decel_only() noexcept { return {-1.0, 0.0, true}; }

    // Projection into the interval; an open upper end admits values up to
    // hi - kHalfOpenDelta.
    double clamp(double v) const noexcept;

    friend bool operator==(const AccelInterval&, const AccelInterval&) = default;
};

struct SafeColumn {
    int column;
    double angle; // radians, column_to_angle(column)
    PotentialTuple min_tuple;
};

struct ControlSet {
    std::vector<SafeColumn> safe_columns; // columns whose min-filtered tau >= time_headway
    bool fallback_straight = false;       // true iff safe_columns is empty
    AccelInterval accel = AccelInterval::full();
};

// Entry i is the min tuple over the column window [i - w_theta/2, i + w_theta/2]
// (truncated at the image borders) across all rows. Throws when w_theta is
// outside [1, field width].
std::vector<PotentialTuple> column_min_map(const IspField& field, int w_theta);

// Safe steering-angle set and scaled-acceleration interval for a field:
// columns pass when their min-filtered tau >= time_headway; the acceleration
// interval comes from the min tuple of the centered w_a-column window (full
// range above the headway, otherwise braking or deceleration-only depending
// on the braking adequacy of tau_dot). An empty safe set forces
// fallback_straight with full braking.
ControlSet safe_controls(const IspField& field, const CameraIntrinsics& intrinsics,
                         const ControllerParams& params);

struct PixelPoint {
    int x = 0;
    int y = 0;
};

struct GuidedCommand {
    double steering;     // radians
    double accel;        // scaled, inside controls.accel
    ControlSet controls; // the safe sets the choice was made from
};

// Goal-guided selection within the safe sets: steers along the safe angle
// closest to the goal column's angle (ties prefer the smaller magnitude,
// then the smaller signed angle) and picks the acceleration by clamping a
// proportional speed-tracking law into the allowed interval. When no column
// is safe the command is straight + full brake. With `retain_current_angle`
// the current steering angle is kept unless a safe angle is strictly closer
// to the goal, even if the current angle itself is not in the safe set.
// Throws when the goal pixel is outside the image.
GuidedCommand guided_control(PixelPoint goal_pixel, const IspField& field,
                             const CameraIntrinsics& intrinsics, const ControllerParams& params,
                             double current_steering, double current_speed,
                             double setpoint_speed, bool retain_current_angle = false);

} // namespace ispnav
