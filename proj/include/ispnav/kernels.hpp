#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ispnav/field.hpp"

// Cell-level kernels behind the field operations. ispnav::kernels holds the
// production implementations (OpenMP-parallel above a size threshold);
// ispnav::reference holds plain serial loops kept for differential tests and
// the kernel benchmark. Both namespaces must agree bit-for-bit.
namespace ispnav::kernels {

// Cells processed per parallel region below this count stay serial.
inline constexpr std::size_t kParallelGrain = std::size_t{1} << 15;

// out[i] = min_by_tau(a[i], b[i]); spans must have equal length.
void compose_cells(std::span<const PotentialTuple> a, std::span<const PotentialTuple> b,
                   std::span<PotentialTuple> out);

// acc[i] = min_by_tau(acc[i], other[i]) in place.
void compose_cells_into(std::span<PotentialTuple> acc, std::span<const PotentialTuple> other);

// Composes `value` over the (already clipped, non-empty) roi of a row-major grid.
void write_roi_cells(std::span<PotentialTuple> cells, int width, const RegionOfInterest& roi,
                     const PotentialTuple& value);

// Min tuple over the (already clipped, non-empty) inclusive window.
PotentialTuple window_min(std::span<const PotentialTuple> cells, int width, int x_lo, int x_hi,
                          int y_lo, int y_hi);

// Per-column min over the column window [i - w_theta/2, i + w_theta/2]
// (truncated at the borders) across all rows. Two phases: a column-wise
// reduction over rows, then a sliding-window minimum across columns.
std::vector<PotentialTuple> column_min_map(std::span<const PotentialTuple> cells, int width,
                                           int height, int w_theta);

// Cumulative count of cells visited by kernels on the calling thread. The
// kernels have no data-dependent early exits, so these totals depend only on
// grid dimensions and window parameters, never on cell contents.
std::uint64_t cells_visited() noexcept;
void reset_cells_visited() noexcept;

} // namespace ispnav::kernels

namespace ispnav::reference {

void compose_cells(std::span<const PotentialTuple> a, std::span<const PotentialTuple> b,
                   std::span<PotentialTuple> out);

void write_roi_cells(std::span<PotentialTuple> cells, int width, const RegionOfInterest& roi,
                     const PotentialTuple& value);

PotentialTuple window_min(std::span<const PotentialTuple> cells, int width, int x_lo, int x_hi,
                          int y_lo, int y_hi);

// Brute-force per-column window scan.
std::vector<PotentialTuple> column_min_map(std::span<const PotentialTuple> cells, int width,
                                           int height, int w_theta);

} // namespace ispnav::reference
