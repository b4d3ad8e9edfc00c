#pragma once

#include <optional>

#include "ispnav/field.hpp"

namespace ispnav {

// Depth closer than this is treated as behind the camera.
inline constexpr double kNearPlane = 0.01;

struct CameraIntrinsics {
    double focal_length = 1.0; // pixels
    double cx = 0.0;           // principal point, pixels
    double cy = 0.0;
    int width = 1; // image size, pixels
    int height = 1;

    friend bool operator==(const CameraIntrinsics&, const CameraIntrinsics&) = default;
};

// 2D camera pose in the world frame; the view axis points along `heading`.
struct CameraPose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0; // radians, normalized to (-pi, pi]
};

// Camera-facing rectangle standing in for an agent body: `world_width` across
// the view axis, `world_height` out of the 2D plane.
struct BodyBillboard {
    double world_width = 1.0;  // meters
    double world_height = 1.0; // meters
    double x = 0.0;            // center, world frame
    double y = 0.0;
    int object_id = 0;
};

struct CameraFramePoint {
    double lateral; // meters, positive to the left of the view axis
    double depth;   // meters along the view axis, positive in front
};

// Rigid transform of a world point into the camera frame.
CameraFramePoint to_camera_frame(const CameraPose& pose, double world_x, double world_y);

// Projected image extent of a world extent seen face-on at `depth`:
// focal_length * world_extent / depth. Empty when depth <= 0 (behind camera).
std::optional<double> project_scale(const CameraIntrinsics& intrinsics, double depth,
                                    double world_extent);

struct BillboardProjection {
    RegionOfInterest roi; // clipped to the image
    double scale;         // pixels, max extent of the UNCLIPPED projection
};

// Synthetic ground-truth detection: projects a billboard into its image roi
// and scale. Empty when the center is closer than the near plane or the roi
// falls fully outside the image. The scale is taken from the unclipped
// projection so partial visibility at the image border never shrinks it.
// `extent_noise_w_px`/`extent_noise_h_px` are additive pixel perturbations of
// the projected extents (zero for noise-free sensing).
std::optional<BillboardProjection> project_billboard(const CameraIntrinsics& intrinsics,
                                                     const CameraPose& pose,
                                                     const BodyBillboard& body,
                                                     double extent_noise_w_px = 0.0,
                                                     double extent_noise_h_px = 0.0);

// Steering angle of an image column, measured at the pixel center:
// atan((column + 0.5 - cx) / focal_length). Monotone increasing in `column`.
// Throws when the column is outside [0, width).
double column_to_angle(const CameraIntrinsics& intrinsics, int column);

// Inverse of column_to_angle, rounded to the nearest pixel center and
// clamped to [0, width - 1].
int angle_to_column(const CameraIntrinsics& intrinsics, double angle);

} // namespace ispnav
