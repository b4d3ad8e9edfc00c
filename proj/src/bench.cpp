#include "ispnav/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>

namespace ispnav {
namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t median_ns(std::vector<std::uint64_t> samples) {
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

IspField random_object_field(std::mt19937_64& rng, int width, int height) {
    std::uniform_int_distribution<int> x_dist(0, width - 1);
    std::uniform_int_distribution<int> y_dist(0, height - 1);
    std::uniform_int_distribution<int> w_dist(1, std::max(1, width / 4));
    std::uniform_int_distribution<int> h_dist(1, std::max(1, height / 4));
    std::uniform_real_distribution<double> tau_dist(0.1, 50.0);
    std::uniform_real_distribution<double> tau_dot_dist(-2.0, 1.0);

    const int x0 = x_dist(rng);
    const int y0 = y_dist(rng);
    RegionOfInterest roi{x0, y0, x0 + w_dist(rng) - 1, y0 + h_dist(rng) - 1};
    const PotentialTuple tuple(tau_dist(rng), tau_dot_dist(rng));
    return write_roi(IspField(width, height), roi, tuple);
}

} // namespace

std::vector<BenchRow> run_bench(const BenchOptions& options) {
    if (options.object_counts.empty()) {
        throw std::invalid_argument("run_bench: object_counts must be non-empty");
    }
    if (options.repetitions < 1) {
        throw std::invalid_argument("run_bench: repetitions must be >= 1");
    }

    const CameraIntrinsics intrinsics{options.width / 2.0, options.width / 2.0,
                                      options.height / 2.0, options.width, options.height};

    std::vector<BenchRow> rows;
    for (const int n : options.object_counts) {
        if (n < 0) throw std::invalid_argument("run_bench: object counts must be >= 0");
        std::mt19937_64 rng(options.seed);

        // Representation construction: compose N object fields. Timed and
        // reported, but allowed to grow with N.
        const auto t0 = Clock::now();
        IspField field(options.width, options.height);
        for (int i = 0; i < n; ++i) {
            field = compose_into(std::move(field), random_object_field(rng, options.width,
                                                                       options.height));
        }
        const auto t1 = Clock::now();

        // Control cost on the pre-composed field; repetitions run back to
        // back on this thread.
        std::vector<std::uint64_t> samples;
        samples.reserve(options.repetitions);
        std::size_t checksum = 0;
        for (int rep = 0; rep < options.repetitions; ++rep) {
            const auto s0 = Clock::now();
            const ControlSet controls = safe_controls(field, intrinsics, options.controller);
            const auto s1 = Clock::now();
            checksum += controls.safe_columns.size() + (controls.fallback_straight ? 1 : 0);
            samples.push_back(
                std::chrono::duration_cast<std::chrono::nanoseconds>(s1 - s0).count());
        }
        // Keep the checksum observable so the timed calls cannot be elided.
        volatile std::size_t sink = checksum;
        (void)sink;

        BenchRow row;
        row.objects = n;
        row.safe_controls_median_ns = median_ns(std::move(samples));
        row.field_bytes = field.byte_size();
        row.compose_median_ns =
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
        rows.push_back(row);
    }
    return rows;
}

} // namespace ispnav
