#include "ispnav/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace ispnav {
namespace {

thread_local std::uint64_t g_cells_visited = 0;

inline void count_cells(std::uint64_t n) noexcept { g_cells_visited += n; }

} // namespace

namespace kernels {

std::uint64_t cells_visited() noexcept { return g_cells_visited; }
void reset_cells_visited() noexcept { g_cells_visited = 0; }

void compose_cells(std::span<const PotentialTuple> a, std::span<const PotentialTuple> b,
                   std::span<PotentialTuple> out) {
    assert(a.size() == b.size() && a.size() == out.size());
    const std::int64_t n = static_cast<std::int64_t>(a.size());
    count_cells(static_cast<std::uint64_t>(n));
#pragma omp parallel for schedule(static) if (n >= static_cast<std::int64_t>(kParallelGrain))
    for (std::int64_t i = 0; i < n; ++i) {
        out[i] = min_by_tau(a[i], b[i]);
    }
}

void compose_cells_into(std::span<PotentialTuple> acc, std::span<const PotentialTuple> other) {
    assert(acc.size() == other.size());
    const std::int64_t n = static_cast<std::int64_t>(acc.size());
    count_cells(static_cast<std::uint64_t>(n));
#pragma omp parallel for schedule(static) if (n >= static_cast<std::int64_t>(kParallelGrain))
    for (std::int64_t i = 0; i < n; ++i) {
        acc[i] = min_by_tau(acc[i], other[i]);
    }
}

void write_roi_cells(std::span<PotentialTuple> cells, int width, const RegionOfInterest& roi,
                     const PotentialTuple& value) {
    assert(!roi.is_empty());
    count_cells(static_cast<std::uint64_t>(roi.area()));
    const int rows = roi.height();
#pragma omp parallel for schedule(static) \
    if (roi.area() >= static_cast<long long>(kParallelGrain))
    for (int r = 0; r < rows; ++r) {
        const int y = roi.y_min + r;
        PotentialTuple* row = cells.data() + static_cast<std::size_t>(y) * width;
        for (int x = roi.x_min; x <= roi.x_max; ++x) {
            row[x] = min_by_tau(row[x], value);
        }
    }
}

PotentialTuple window_min(std::span<const PotentialTuple> cells, int width, int x_lo, int x_hi,
                          int y_lo, int y_hi) {
    assert(x_lo <= x_hi && y_lo <= y_hi);
    const int rows = y_hi - y_lo + 1;
    const long long area = static_cast<long long>(rows) * (x_hi - x_lo + 1);
    count_cells(static_cast<std::uint64_t>(area));

    std::vector<PotentialTuple> row_mins(rows);
#pragma omp parallel for schedule(static) if (area >= static_cast<long long>(kParallelGrain))
    for (int r = 0; r < rows; ++r) {
        const PotentialTuple* row =
            cells.data() + static_cast<std::size_t>(y_lo + r) * width;
        PotentialTuple best = row[x_lo];
        for (int x = x_lo + 1; x <= x_hi; ++x) {
            best = min_by_tau(best, row[x]);
        }
        row_mins[r] = best;
    }

    PotentialTuple best = row_mins[0];
    for (int r = 1; r < rows; ++r) {
        best = min_by_tau(best, row_mins[r]);
    }
    return best;
}

std::vector<PotentialTuple> column_min_map(std::span<const PotentialTuple> cells, int width,
                                           int height, int w_theta) {
    assert(w_theta >= 1 && w_theta <= width);
    count_cells(static_cast<std::uint64_t>(width) * height + width);

    // Phase 1: min over all rows per column, on contiguous column chunks.
    std::vector<PotentialTuple> col_min(width);
    constexpr int kChunk = 64;
    const int nchunks = (width + kChunk - 1) / kChunk;
    const long long total = static_cast<long long>(width) * height;
#pragma omp parallel for schedule(static) if (total >= static_cast<long long>(kParallelGrain))
    for (int c = 0; c < nchunks; ++c) {
        const int x0 = c * kChunk;
        const int x1 = std::min(width, x0 + kChunk);
        for (int x = x0; x < x1; ++x) {
            col_min[x] = cells[x];
        }
        for (int y = 1; y < height; ++y) {
            const PotentialTuple* row = cells.data() + static_cast<std::size_t>(y) * width;
            for (int x = x0; x < x1; ++x) {
                col_min[x] = min_by_tau(col_min[x], row[x]);
            }
        }
    }

    // Phase 2: sliding-window min across columns with a monotonic deque.
    const int r = w_theta / 2;
    std::vector<PotentialTuple> out(width);
    std::deque<int> dq;
    auto strictly_better = [&](int i, int j) {
        const PotentialTuple& a = col_min[i];
        const PotentialTuple& b = col_min[j];
        if (a.tau != b.tau) return a.tau < b.tau;
        return a.tau_dot < b.tau_dot;
    };
    auto push = [&](int j) {
        while (!dq.empty() && !strictly_better(dq.back(), j)) {
            dq.pop_back();
        }
        dq.push_back(j);
    };
    auto publish = [&](int i) {
        while (dq.front() < i - r) {
            dq.pop_front();
        }
        out[i] = col_min[dq.front()];
    };
    for (int j = 0; j < width; ++j) {
        push(j);
        if (j >= r) publish(j - r);
    }
    for (int i = std::max(0, width - r); i < width; ++i) {
        publish(i);
    }
    return out;
}

} // namespace kernels

namespace reference {

void compose_cells(std::span<const PotentialTuple> a, std::span<const PotentialTuple> b,
                   std::span<PotentialTuple> out) {
    assert(a.size() == b.size() && a.size() == out.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = min_by_tau(a[i], b[i]);
    }
}

void write_roi_cells(std::span<PotentialTuple> cells, int width, const RegionOfInterest& roi,
                     const PotentialTuple& value) {
    assert(!roi.is_empty());
    for (int y = roi.y_min; y <= roi.y_max; ++y) {
        for (int x = roi.x_min; x <= roi.x_max; ++x) {
            PotentialTuple& cell = cells[static_cast<std::size_t>(y) * width + x];
            cell = min_by_tau(cell, value);
        }
    }
}

PotentialTuple window_min(std::span<const PotentialTuple> cells, int width, int x_lo, int x_hi,
                          int y_lo, int y_hi) {
    assert(x_lo <= x_hi && y_lo <= y_hi);
    PotentialTuple best = cells[static_cast<std::size_t>(y_lo) * width + x_lo];
    for (int y = y_lo; y <= y_hi; ++y) {
        for (int x = x_lo; x <= x_hi; ++x) {
            best = min_by_tau(best, cells[static_cast<std::size_t>(y) * width + x]);
        }
    }
    return best;
}

std::vector<PotentialTuple> column_min_map(std::span<const PotentialTuple> cells, int width,
                                           int height, int w_theta) {
    assert(w_theta >= 1 && w_theta <= width);
    const int r = w_theta / 2;
    std::vector<PotentialTuple> out(width);
    for (int i = 0; i < width; ++i) {
        const int x_lo = std::max(0, i - r);
        const int x_hi = std::min(width - 1, i + r);
        out[i] = window_min(cells, width, x_lo, x_hi, 0, height - 1);
    }
    return out;
}

} // namespace reference
} // namespace ispnav
