#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ispnav/extended_real.hpp"

namespace ispnav {

// One field cell: time-to-contact tau (seconds) and its time derivative.
// The background cell is <+inf, +inf>. tau is never negative.
struct PotentialTuple {
    ExtendedReal tau = ExtendedReal::infinity();
    ExtendedReal tau_dot = ExtendedReal::infinity();

    PotentialTuple() = default;

    PotentialTuple(ExtendedReal tau_, ExtendedReal tau_dot_) : tau(tau_), tau_dot(tau_dot_) {
        if (tau < ExtendedReal(0.0)) {
            throw std::invalid_argument("PotentialTuple: tau must be >= 0 or +inf");
        }
    }

    PotentialTuple(double tau_, double tau_dot_)
        : PotentialTuple(ExtendedReal(tau_), ExtendedReal(tau_dot_)) {}

    static constexpr PotentialTuple background() noexcept { return PotentialTuple{}; }

    friend bool operator==(const PotentialTuple&, const PotentialTuple&) = default;
};

// Composition rule: keep the tuple with smaller tau; ties break toward the
// smaller tau_dot (the faster-closing object). Selection only, no arithmetic,
// so it is commutative, associative and idempotent with background identity.
inline const PotentialTuple& min_by_tau(const PotentialTuple& a, const PotentialTuple& b) noexcept {
    if (b.tau < a.tau) return b;
    if (a.tau < b.tau) return a;
    return b.tau_dot < a.tau_dot ? b : a;
}

// Inclusive pixel rectangle. Empty rois (x_min > x_max or y_min > y_max) are
// representable; writers skip them.
struct RegionOfInterest {
    int x_min = 0;
    int y_min = 0;
    int x_max = -1;
    int y_max = -1;

    static constexpr RegionOfInterest empty() noexcept { return {}; }

    constexpr bool is_empty() const noexcept { return x_min > x_max || y_min > y_max; }
    constexpr int width() const noexcept { return is_empty() ? 0 : x_max - x_min + 1; }
    constexpr int height() const noexcept { return is_empty() ? 0 : y_max - y_min + 1; }
    constexpr long long area() const noexcept {
        return static_cast<long long>(width()) * height();
    }

    // Intersection with a width x height image; may come back empty.
    RegionOfInterest clipped(int image_width, int image_height) const noexcept;

    RegionOfInterest intersect(const RegionOfInterest& other) const noexcept;

    friend bool operator==(const RegionOfInterest&, const RegionOfInterest&) = default;
};

// Dense row-major grid of PotentialTuples, origin top-left, x = column,
// y = row, axis-aligned with the camera image of the same size. Dimensions
// are fixed at construction; every operation preserves them.
class IspField {
public:
    IspField(int width, int height);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    const PotentialTuple& at(int x, int y) const noexcept {
        return cells_[static_cast<std::size_t>(y) * width_ + x];
    }

    std::span<const PotentialTuple> cells() const noexcept { return cells_; }

    // Bytes held by the cell grid (the representation's footprint).
    std::size_t byte_size() const noexcept { return cells_.size() * sizeof(PotentialTuple); }
    std::size_t capacity_bytes() const noexcept {
        return cells_.capacity() * sizeof(PotentialTuple);
    }

    friend bool operator==(const IspField&, const IspField&) = default;

    friend IspField write_roi(IspField field, const RegionOfInterest& roi,
                              const PotentialTuple& value);
    friend IspField compose(const IspField& a, const IspField& b);
    friend IspField compose_into(IspField acc, const IspField& other);

private:
    int width_;
    int height_;
    std::vector<PotentialTuple> cells_;
};

// Composes `value` over every cell of `roi` (clipped to the field bounds)
// using min_by_tau; never a blind overwrite, so writes commute. A fully
// out-of-bounds roi is a no-op.
IspField write_roi(IspField field, const RegionOfInterest& roi, const PotentialTuple& value);

// Point-wise min_by_tau of two same-sized fields. Throws on dimension mismatch.
IspField compose(const IspField& a, const IspField& b);

// In-place variant: folds `other` into `acc` and returns it.
IspField compose_into(IspField acc, const IspField& other);

// Left fold of compose over `fields`; the empty sequence yields the
// all-background field of the given dimensions.
IspField compose_many(std::span<const IspField> fields, int width, int height);

// Minimum tuple (min_by_tau order) over the window [x_lo,x_hi] x [y_lo,y_hi],
// clipped to the field. Throws if the window is empty after clipping.
PotentialTuple min_over_window(const IspField& field, int x_lo, int x_hi, int y_lo, int y_hi);

// Text dump: line 1 "width height", then height lines of width entries
// "tau:tau_dot" with 6 significant digits and inf/-inf spelled out.
std::string dump_field(const IspField& field);

// Strict parser for dump_field's format. Throws std::runtime_error with a
// line-numbered message on malformed input.
IspField parse_field(std::string_view text);

} // namespace ispnav
