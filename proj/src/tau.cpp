#include "ispnav/tau.hpp"

#include <stdexcept>

namespace ispnav {

ExtendedReal tau_from_scale(double s, double s_dot) {
    if (s <= 0.0) {
        throw std::invalid_argument("tau_from_scale: scale must be positive");
    }
    if (s_dot <= 0.0) return ExtendedReal::infinity();
    return ExtendedReal(s / s_dot);
}

int braking_decision(ExtendedReal tau_dot, double epsilon) {
    if (epsilon <= 0.0) {
        throw std::invalid_argument("braking_decision: epsilon must be positive");
    }
    return tau_dot >= ExtendedReal(-0.5 + epsilon) ? 1 : 0;
}

ScaleTrack update_track(ScaleTrack track, double t, double s, const RegionOfInterest& roi,
                        const EstimatorParams& params) {
    if (params.smoothing_alpha <= 0.0 || params.smoothing_alpha > 1.0) {
        throw std::invalid_argument("update_track: smoothing_alpha must be in (0, 1]");
    }
    if (s <= 0.0) {
        throw std::invalid_argument("update_track: scale must be positive");
    }
    if (!track.samples_.empty() && t <= track.samples_.back().t) {
        throw std::invalid_argument("update_track: timestamps must be strictly increasing");
    }

    const std::optional<ExtendedReal> prev_tau = track.tau_;
    if (!track.samples_.empty()) {
        const ScaleSample& prev = track.samples_.back();
        const double raw = (s - prev.s) / (t - prev.t);
        const double smoothed =
            track.s_dot_ ? params.smoothing_alpha * raw + (1.0 - params.smoothing_alpha) * *track.s_dot_
                         : raw;
        track.s_dot_ = smoothed;
        track.tau_ = tau_from_scale(s, smoothed);
        if (prev_tau) {
            if (prev_tau->is_finite() && track.tau_->is_finite()) {
                track.tau_dot_ =
                    ExtendedReal((track.tau_->value() - prev_tau->value()) / (t - prev.t));
            } else {
                track.tau_dot_ = ExtendedReal::infinity();
            }
        }
    }
    track.samples_.push_back(ScaleSample{t, s, roi});
    return track;
}

IspField object_field(const ScaleTrack& track, int width, int height) {
    if (!track.tau()) {
        throw std::invalid_argument("object_field: track has no tau estimate yet");
    }
    const ExtendedReal tau_dot = track.tau_dot().value_or(ExtendedReal::infinity());
    IspField field(width, height);
    return write_roi(std::move(field), track.samples().back().roi,
                     PotentialTuple(*track.tau(), tau_dot));
}

} // namespace ispnav
