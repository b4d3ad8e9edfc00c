#include <random>

#include "doctest.h"
#include "ispnav/kernels.hpp"
#include "test_util.hpp"

using namespace ispnav;
using testutil::random_field;
using testutil::random_roi;
using testutil::random_tuple;

// The OpenMP kernels must agree bit-for-bit with the serial reference, both
// below and above the parallel grain.

TEST_CASE("compose kernel matches the serial reference") {
    std::mt19937 rng(101);
    for (const auto& [w, h] : {std::pair{16, 16}, std::pair{127, 33}, std::pair{640, 480}}) {
        const IspField a = random_field(rng, w, h);
        const IspField b = random_field(rng, w, h);
        std::vector<PotentialTuple> expected(a.cells().size());
        reference::compose_cells(a.cells(), b.cells(), expected);

        const IspField got = compose(a, b);
        REQUIRE(std::equal(got.cells().begin(), got.cells().end(), expected.begin()));

        // Selection, not arithmetic: each output cell is one of the inputs.
        for (std::size_t i = 0; i < expected.size(); ++i) {
            REQUIRE((expected[i] == a.cells()[i] || expected[i] == b.cells()[i]));
        }
    }
}

TEST_CASE("roi write kernel matches the serial reference") {
    std::mt19937 rng(103);
    for (const auto& [w, h] : {std::pair{16, 16}, std::pair{640, 480}}) {
        IspField prod = random_field(rng, w, h);
        std::vector<PotentialTuple> ref(prod.cells().begin(), prod.cells().end());
        for (int i = 0; i < 10; ++i) {
            const RegionOfInterest roi = random_roi(rng, w, h);
            const PotentialTuple value = random_tuple(rng);
            prod = write_roi(std::move(prod), roi, value);
            reference::write_roi_cells(ref, w, roi, value);
        }
        REQUIRE(std::equal(prod.cells().begin(), prod.cells().end(), ref.begin()));
    }
}

TEST_CASE("window min kernel matches the serial reference") {
    std::mt19937 rng(107);
    for (const auto& [w, h] : {std::pair{16, 16}, std::pair{640, 480}}) {
        const IspField f = random_field(rng, w, h);
        for (int i = 0; i < 20; ++i) {
            const RegionOfInterest win = random_roi(rng, w, h);
            const PotentialTuple expected =
                reference::window_min(f.cells(), w, win.x_min, win.x_max, win.y_min, win.y_max);
            REQUIRE(min_over_window(f, win.x_min, win.x_max, win.y_min, win.y_max) == expected);
        }
        REQUIRE(min_over_window(f, 0, w - 1, 0, h - 1) ==
                reference::window_min(f.cells(), w, 0, w - 1, 0, h - 1));
    }
}

TEST_CASE("column min map kernel matches the serial reference") {
    std::mt19937 rng(109);
    for (const auto& [w, h] : {std::pair{16, 16}, std::pair{127, 33}, std::pair{640, 480}}) {
        const IspField f = random_field(rng, w, h);
        for (const int w_theta : {1, 2, 3, 8, 15, w}) {
            if (w_theta > w) continue;
            const auto expected = reference::column_min_map(f.cells(), w, h, w_theta);
            const auto got = kernels::column_min_map(f.cells(), w, h, w_theta);
            REQUIRE(got.size() == expected.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                REQUIRE(got[i] == expected[i]);
            }
        }
    }
}

TEST_CASE("kernel work depends on dimensions, not contents") {
    // Identical cell-visit counts for a 1-object and a 100-object field of
    // the same size, over the same operations.
    std::mt19937 rng(113);
    const int w = 320;
    const int h = 240;

    auto build = [&](int objects) {
        IspField f(w, h);
        for (int i = 0; i < objects; ++i) {
            f = write_roi(std::move(f), random_roi(rng, w, h), random_tuple(rng));
        }
        return f;
    };
    const IspField sparse = build(1);
    const IspField dense = build(100);

    auto workload = [&](const IspField& f) {
        kernels::reset_cells_visited();
        (void)kernels::column_min_map(f.cells(), w, h, 11);
        (void)kernels::window_min(f.cells(), w, 0, w - 1, 0, h - 1);
        (void)kernels::window_min(f.cells(), w, w / 2 - 7, w / 2 + 7, 0, h - 1);
        return kernels::cells_visited();
    };

    const auto visits_sparse = workload(sparse);
    const auto visits_dense = workload(dense);
    CHECK(visits_sparse == visits_dense);
    CHECK(visits_sparse > 0);
}
