#pragma once

#include <cstdint>
#include <vector>

#include "ispnav/control.hpp"

namespace ispnav {

struct BenchOptions {
    int width = 640;
    int height = 480;
    std::vector<int> object_counts = {1, 10, 100};
    int repetitions = 101;
    std::uint64_t seed = 0;
    ControllerParams controller; // defaults are fine for timing
};

struct BenchRow {
    int objects = 0;
    std::uint64_t safe_controls_median_ns = 0; // over the pre-composed field
    std::size_t field_bytes = 0;               // cell-grid footprint
    std::uint64_t compose_median_ns = 0;       // building the composed field; may grow with N
};

// For each object count: builds a field by composing N single-roi object
// fields (seeded placement), then times safe_controls over `repetitions`
// runs on the pre-composed field. Construction cost is reported separately;
// only the control cost is expected to stay flat across N.
std::vector<BenchRow> run_bench(const BenchOptions& options);

} // namespace ispnav
