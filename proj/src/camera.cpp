#include "ispnav/camera.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ispnav {

CameraFramePoint to_camera_frame(const CameraPose& pose, double world_x, double world_y) {
    const double dx = world_x - pose.x;
    const double dy = world_y - pose.y;
    const double c = std::cos(pose.heading);
    const double s = std::sin(pose.heading);
    // View axis (c, s); its left normal (-s, c).
    return CameraFramePoint{-s * dx + c * dy, c * dx + s * dy};
}

std::optional<double> project_scale(const CameraIntrinsics& intrinsics, double depth,
                                    double world_extent) {
    if (depth <= 0.0) return std::nullopt;
    return intrinsics.focal_length * world_extent / depth;
}

std::optional<BillboardProjection> project_billboard(const CameraIntrinsics& intrinsics,
                                                     const CameraPose& pose,
                                                     const BodyBillboard& body,
                                                     double extent_noise_w_px,
                                                     double extent_noise_h_px) {
    const CameraFramePoint cam = to_camera_frame(pose, body.x, body.y);
    if (cam.depth <= kNearPlane) return std::nullopt;

    const double f = intrinsics.focal_length;
    double extent_w = f * body.world_width / cam.depth + extent_noise_w_px;
    double extent_h = f * body.world_height / cam.depth + extent_noise_h_px;
    constexpr double kMinExtentPx = 1e-2;
    extent_w = std::max(extent_w, kMinExtentPx);
    extent_h = std::max(extent_h, kMinExtentPx);

    const double x_center = intrinsics.cx + f * cam.lateral / cam.depth;
    const double y_center = intrinsics.cy;

    // Pixels overlapping the continuous rectangle.
    RegionOfInterest roi{
        static_cast<int>(std::floor(x_center - 0.5 * extent_w)),
        static_cast<int>(std::floor(y_center - 0.5 * extent_h)),
        static_cast<int>(std::ceil(x_center + 0.5 * extent_w)) - 1,
        static_cast<int>(std::ceil(y_center + 0.5 * extent_h)) - 1,
    };
    roi = roi.clipped(intrinsics.width, intrinsics.height);
    if (roi.is_empty()) return std::nullopt;

    return BillboardProjection{roi, std::max(extent_w, extent_h)};
}

double column_to_angle(const CameraIntrinsics& intrinsics, int column) {
    if (column < 0 || column >= intrinsics.width) {
        throw std::invalid_argument("column_to_angle: column outside image");
    }
    return std::atan((column + 0.5 - intrinsics.cx) / intrinsics.focal_length);
}

int angle_to_column(const CameraIntrinsics& intrinsics, double angle) {
    const double offset = intrinsics.focal_length * std::tan(angle);
    const long column = std::lround(offset + intrinsics.cx - 0.5);
    return static_cast<int>(std::clamp(column, 0L, static_cast<long>(intrinsics.width - 1)));
}

} // namespace ispnav
