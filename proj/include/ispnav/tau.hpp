#pragma once

#include <optional>
#include <vector>

#include "ispnav/field.hpp"

namespace ispnav {

struct EstimatorParams {
    double smoothing_alpha = 1.0; // in (0, 1]; 1 = raw backward differences
    int min_samples = 2;          // sightings required before a track feeds a field

    friend bool operator==(const EstimatorParams&, const EstimatorParams&) = default;
};

// Time-to-contact from image scale and its expansion rate: s / s_dot for a
// growing scale, +inf for a constant or shrinking one (no contact predicted).
// Throws when s <= 0.
ExtendedReal tau_from_scale(double s, double s_dot);

// Returns 1 iff tau_dot >= -0.5 + epsilon, i.e. the current deceleration is
// adequate to avoid head-on contact with margin epsilon. Throws when
// epsilon <= 0.
int braking_decision(ExtendedReal tau_dot, double epsilon);

struct ScaleSample {
    double t; // seconds, strictly increasing within a track
    double s; // pixels, > 0
    RegionOfInterest roi;
};

// Per-object time series of observed image scale with derived estimates.
// Immutable snapshot; update_track returns a new value.
class ScaleTrack {
public:
    explicit ScaleTrack(int object_id) : object_id_(object_id) {}

    int object_id() const noexcept { return object_id_; }
    const std::vector<ScaleSample>& samples() const noexcept { return samples_; }

    // Present from the second sample on.
    std::optional<double> s_dot() const noexcept { return s_dot_; }
    std::optional<ExtendedReal> tau() const noexcept { return tau_; }
    // Present once tau is defined at two consecutive samples; +inf when the
    // difference of infinite tau values is undefined.
    std::optional<ExtendedReal> tau_dot() const noexcept { return tau_dot_; }

    friend ScaleTrack update_track(ScaleTrack track, double t, double s,
                                   const RegionOfInterest& roi, const EstimatorParams& params);

private:
    int object_id_;
    std::vector<ScaleSample> samples_;
    std::optional<double> s_dot_;
    std::optional<ExtendedReal> tau_;
    std::optional<ExtendedReal> tau_dot_;
};

// Appends a sighting and refreshes s_dot (exponentially smoothed backward
// difference), tau, and tau_dot (backward difference of consecutive finite
// tau values). Throws on a non-increasing timestamp, s <= 0, or
// smoothing_alpha outside (0, 1].
ScaleTrack update_track(ScaleTrack track, double t, double s, const RegionOfInterest& roi,
                        const EstimatorParams& params);

// Background field with the track's latest <tau, tau_dot> written over its
// latest roi (tau_dot = +inf while still undefined). Throws when the track
// has no tau yet (fewer than two samples).
IspField object_field(const ScaleTrack& track, int width, int height);

} // namespace ispnav
