#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "mfdfa/segmentation.hpp"

using namespace mfdfa;

namespace {

std::vector<std::size_t> forward_starts(const SegmentationPlan& plan) {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < plan.forward_count; ++i) starts.push_back(plan.windows[i].start);
    return starts;
}

std::vector<std::size_t> backward_starts(const SegmentationPlan& plan) {
    std::vector<std::size_t> starts;
    for (std::size_t i = plan.forward_count; i < plan.windows.size(); ++i)
        starts.push_back(plan.windows[i].start);
    return starts;
}

std::vector<char> coverage(const SegmentationPlan& plan, std::size_t n) {
    std::vector<char> hit(n, 0);
    for (const Window& w : plan.windows)
        for (std::size_t i = w.start; i < w.start + w.length; ++i) hit[i] = 1;
    return hit;
}

bool covers_everything(const SegmentationPlan& plan, std::size_t n) {
    const std::vector<char> hit = coverage(plan, n);
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

// The two overlapped passes meet at the midpoint; for odd lengths the single
// middle sample can fall in neither pass when the stride divides n - s.
bool covers_all_but_midpoint(const SegmentationPlan& plan, std::size_t n) {
    const std::vector<char> hit = coverage(plan, n);
    for (std::size_t i = 0; i < n; ++i)
        if (hit[i] == 0 && i != n / 2) return false;
    return true;
}

}  // namespace

TEST_CASE("classic plan geometry", "[segmentation]") {
    SECTION("divisible length: passes coincide positionally") {
        const SegmentationPlan plan = mfdfa_plan(100, 10);
        REQUIRE(plan.windows.size() == 20);
        REQUIRE(forward_starts(plan) ==
                std::vector<std::size_t>{0, 10, 20, 30, 40, 50, 60, 70, 80, 90});
        REQUIRE(backward_starts(plan) ==
                std::vector<std::size_t>{90, 80, 70, 60, 50, 40, 30, 20, 10, 0});
    }

    SECTION("remainder shifts the backward tiling") {
        const SegmentationPlan plan = mfdfa_plan(105, 10);
        REQUIRE(plan.windows.size() == 20);
        REQUIRE(forward_starts(plan).front() == 0);
        REQUIRE(forward_starts(plan).back() == 90);
        REQUIRE(backward_starts(plan) ==
                std::vector<std::size_t>{95, 85, 75, 65, 55, 45, 35, 25, 15, 5});
    }

    SECTION("N = 2850, s = 50 gives 114 windows") {
        const SegmentationPlan plan = mfdfa_plan(2850, 50);
        REQUIRE(plan.forward_count == 57);
        REQUIRE(plan.windows.size() == 114);
    }

    SECTION("bounds") {
        REQUIRE_THROWS_MATCHES(mfdfa_plan(100, 26), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::scale_too_large;
                               }));
        REQUIRE_THROWS_MATCHES(mfdfa_plan(100, 3), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::scale_too_small;
                               }));
    }
}

TEST_CASE("overlapped plan geometry", "[segmentation]") {
    SECTION("N = 100, s = 10, l = 4") {
        const SegmentationPlan plan = biosw_plan(100, 10, 4);
        REQUIRE(plan.forward_count == 8);  // ceil((50-10)/6) + 1
        REQUIRE(plan.windows.size() == 16);
        REQUIRE(forward_starts(plan) == std::vector<std::size_t>{0, 6, 12, 18, 24, 30, 36, 42});
        // last forward window spills past the midpoint by 2 samples
        REQUIRE(plan.windows[7].start + plan.windows[7].length == 52);
        REQUIRE(backward_starts(plan) ==
                std::vector<std::size_t>{90, 84, 78, 72, 66, 60, 54, 48});
    }

    SECTION("N = 100, s = 10, l = 2") {
        const SegmentationPlan plan = biosw_plan(100, 10, 2);
        REQUIRE(plan.forward_count == 6);
        REQUIRE(plan.windows.size() == 12);
        REQUIRE(forward_starts(plan) == std::vector<std::size_t>{0, 8, 16, 24, 32, 40});
    }

    SECTION("overlap bounds: l = 5 is rejected for s = 10") {
        REQUIRE_THROWS_MATCHES(biosw_plan(100, 10, 5), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::bad_overlap;
                               }));
        REQUIRE_THROWS_AS(biosw_plan(100, 10, 0), Error);
        REQUIRE_NOTHROW(biosw_plan(100, 10, 4));
    }

    SECTION("scale above N/2 is rejected") {
        REQUIRE_THROWS_MATCHES(biosw_plan(100, 51, 10), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::scale_too_large;
                               }));
    }
}

TEST_CASE("segment count ratio", "[segmentation]") {
    // 2 * N*_s / N_s from the two builders directly.
    REQUIRE(segment_count_ratio(100, 10, 2) == Catch::Approx(1.2));
    REQUIRE(segment_count_ratio(100, 10, 4) == Catch::Approx(1.6));
}

TEST_CASE("plan properties", "[segmentation]") {
    std::mt19937_64 rng(2024);

    SECTION("full coverage and bounds for random configurations") {
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 64 + rng() % 4000;
            const std::size_t s_classic = 4 + rng() % std::max<std::size_t>(1, n / 4 - 3);
            const SegmentationPlan classic = mfdfa_plan(n, s_classic);
            REQUIRE(covers_everything(classic, n));
            for (const Window& w : classic.windows) REQUIRE(w.start + w.length <= n);

            const std::size_t s = 5 + rng() % std::max<std::size_t>(1, n / 2 - 4);
            const std::size_t l = 1 + rng() % ((s - 1) / 2);
            const SegmentationPlan overlapped = biosw_plan(n, s, l);
            REQUIRE(covers_all_but_midpoint(overlapped, n));
            if (n % 2 == 0) REQUIRE(covers_everything(overlapped, n));
            for (const Window& w : overlapped.windows) REQUIRE(w.start + w.length <= n);
            REQUIRE(overlapped.windows.size() == 2 * overlapped.forward_count);

            // forward stride is exactly s - l
            const auto starts = forward_starts(overlapped);
            for (std::size_t i = 1; i < starts.size(); ++i)
                REQUIRE(starts[i] - starts[i - 1] == s - l);
        }
    }

    SECTION("plans are deterministic") {
        const SegmentationPlan a = biosw_plan(777, 31, 9);
        const SegmentationPlan b = biosw_plan(777, 31, 9);
        REQUIRE(a.windows.size() == b.windows.size());
        for (std::size_t i = 0; i < a.windows.size(); ++i) {
            REQUIRE(a.windows[i].start == b.windows[i].start);
            REQUIRE(a.windows[i].length == b.windows[i].length);
        }
    }
}
