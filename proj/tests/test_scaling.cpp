#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "mfdfa/fluctuation.hpp"
#include "mfdfa/scaling.hpp"
#include "mfdfa/synth.hpp"
#include "mfdfa/time_series.hpp"

using namespace mfdfa;

namespace {

FluctuationSurface power_law_surface(const std::vector<double>& q_grid,
                                     const std::vector<std::size_t>& scales, double exponent,
                                     double prefactor = 1.0) {
    FluctuationSurface surface;
    surface.q_grid = q_grid;
    surface.scales = scales;
    surface.column_flagged.assign(scales.size(), 0);
    surface.values.assign(q_grid.size(), std::vector<double>(scales.size()));
    for (std::size_t qi = 0; qi < q_grid.size(); ++qi)
        for (std::size_t si = 0; si < scales.size(); ++si)
            surface.values[qi][si] = prefactor * std::pow(static_cast<double>(scales[si]), exponent);
    return surface;
}

HurstSpectrum constant_spectrum(const std::vector<double>& q_grid, double h) {
    HurstSpectrum spec;
    spec.q_grid = q_grid;
    spec.h.assign(q_grid.size(), h);
    spec.r2.assign(q_grid.size(), 1.0);
    spec.scale_range = {8, 128};
    return spec;
}

}  // namespace

TEST_CASE("log-log regression", "[scaling]") {
    const std::vector<double> q{-2.0, 0.0, 2.0};
    const std::vector<std::size_t> scales{8, 16, 32, 64, 128};

    SECTION("exact power law recovers the exponent with r2 = 1") {
        const HurstSpectrum spec = fit_hurst(power_law_surface(q, scales, 0.5), {8, 128});
        for (double h : spec.h) REQUIRE(h == Catch::Approx(0.5).epsilon(1e-12));
        for (double r2 : spec.r2) REQUIRE(r2 == Catch::Approx(1.0).epsilon(1e-12));
    }

    SECTION("a multiplicative prefactor only moves the intercept") {
        const HurstSpectrum spec = fit_hurst(power_law_surface(q, scales, 0.7, 2.0), {8, 128});
        for (double h : spec.h) REQUIRE(h == Catch::Approx(0.7).epsilon(1e-12));
    }

    SECTION("rescaling every value leaves the slopes untouched") {
        const HurstSpectrum a = fit_hurst(power_law_surface(q, scales, 0.62), {8, 128});
        const HurstSpectrum b = fit_hurst(power_law_surface(q, scales, 0.62, 13.7), {8, 128});
        for (std::size_t i = 0; i < a.h.size(); ++i)
            REQUIRE(a.h[i] == Catch::Approx(b.h[i]).margin(1e-12));
    }

    SECTION("scale range restricts the fit") {
        FluctuationSurface surface = power_law_surface(q, scales, 0.5);
        // corrupt the smallest scale; fitting from 16 up must not see it
        for (std::size_t qi = 0; qi < q.size(); ++qi) surface.values[qi][0] = 99.0;
        const HurstSpectrum spec = fit_hurst(surface, {16, 128});
        for (double h : spec.h) REQUIRE(h == Catch::Approx(0.5).epsilon(1e-12));
    }

    SECTION("too few scales in range") {
        REQUIRE_THROWS_MATCHES(fit_hurst(power_law_surface(q, scales, 0.5), {16, 64}), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::too_few_scales;
                               }));
    }

    SECTION("flagged column inside the range") {
        FluctuationSurface surface = power_law_surface(q, scales, 0.5);
        surface.column_flagged[2] = 1;
        surface.values[0][2] = std::numeric_limits<double>::quiet_NaN();
        REQUIRE_THROWS_MATCHES(fit_hurst(surface, {8, 128}), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::flagged_column_in_range;
                               }));
        // skip policy drops the column and still has 4 scales
        const HurstSpectrum spec = fit_hurst(surface, {8, 128}, FlagPolicy::skip_flagged);
        for (double h : spec.h) REQUIRE(h == Catch::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("delta h", "[scaling]") {
    SECTION("constant spectrum has zero width") {
        REQUIRE(delta_h(constant_spectrum({-4.0, 0.0, 4.0}, 0.61)) == 0.0);
    }

    SECTION("width is h at the smallest q minus h at the largest") {
        HurstSpectrum spec;
        spec.q_grid = {-2.0, 0.0, 2.0};
        spec.h = {0.9, 0.7, 0.4};
        spec.r2 = {1.0, 1.0, 1.0};
        REQUIRE(delta_h(spec) == Catch::Approx(0.5).epsilon(1e-12));
    }

    SECTION("needs two grid points") {
        HurstSpectrum spec;
        spec.q_grid = {2.0};
        spec.h = {0.5};
        REQUIRE_THROWS_MATCHES(delta_h(spec), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::grid_too_small;
                               }));
    }
}

TEST_CASE("scaling exponents tau", "[scaling]") {
    SECTION("tau(0) = -1 exactly") {
        const ScalingExponents t = tau(constant_spectrum({-3.0, 0.0, 3.0}, 0.77));
        REQUIRE(t.tau[1] == -1.0);
    }

    SECTION("constant h gives an exactly linear tau") {
        const double H = 0.6;
        const std::vector<double> grid{-4.0, -2.0, 0.0, 2.0, 4.0};
        const ScalingExponents t = tau(constant_spectrum(grid, H));
        for (std::size_t i = 0; i < grid.size(); ++i)
            REQUIRE(t.tau[i] == Catch::Approx(grid[i] * H - 1.0).margin(1e-15));
    }

    SECTION("h(2) = 0.5 gives tau(2) = 0") {
        const ScalingExponents t = tau(constant_spectrum({0.0, 1.0, 2.0}, 0.5));
        REQUIRE(t.tau[2] == Catch::Approx(0.0).margin(1e-15));
    }
}

TEST_CASE("legendre spectrum", "[scaling]") {
    SECTION("monofractal collapse") {
        const HurstSpectrum spec = constant_spectrum({-4.0, -2.0, 0.0, 2.0, 4.0}, 0.58);
        const SingularitySpectrum s = legendre(spec);
        for (double a : s.alpha) REQUIRE(a == Catch::Approx(0.58).margin(1e-12));
        for (double f : s.f_alpha) REQUIRE(f == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(s.width <= 1e-12);
        REQUIRE(delta_h(spec) == 0.0);
    }

    SECTION("linear h through the closed form") {
        // h = a - b q  =>  h' = -b exactly, alpha = a - 2 b q, f = 1 - b q^2.
        const double a = 0.9, b = 0.05;
        HurstSpectrum spec;
        spec.q_grid = {-4.0, -2.0, 0.0, 2.0, 4.0};
        for (double q : spec.q_grid) spec.h.push_back(a - b * q);
        spec.r2.assign(spec.q_grid.size(), 1.0);

        const SingularitySpectrum s = legendre(spec);
        for (std::size_t i = 0; i < spec.q_grid.size(); ++i) {
            const double q = spec.q_grid[i];
            REQUIRE(s.alpha[i] == Catch::Approx(a - 2.0 * b * q).margin(1e-12));
            REQUIRE(s.f_alpha[i] == Catch::Approx(1.0 - b * q * q).margin(1e-12));
        }
        REQUIRE(s.width == Catch::Approx(0.8).margin(1e-12));
    }

    SECTION("f is one at the grid point nearest zero") {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> jitter(-0.01, 0.01);
        HurstSpectrum spec;
        spec.q_grid = {-6.0, -3.0, -1.0, -0.25, 0.5, 1.5, 3.0, 6.0};
        for (double q : spec.q_grid) spec.h.push_back(0.7 - 0.04 * q + jitter(rng));
        spec.r2.assign(spec.q_grid.size(), 1.0);

        const SingularitySpectrum s = legendre(spec);
        double max_dh = 0.0;
        for (std::size_t i = 1; i + 1 < spec.q_grid.size(); ++i)
            max_dh = std::max(max_dh, std::abs((spec.h[i + 1] - spec.h[i - 1]) /
                                               (spec.q_grid[i + 1] - spec.q_grid[i - 1])));
        const double q_near = -0.25;  // closest grid point to zero
        const std::size_t idx = 3;
        REQUIRE(std::abs(s.f_alpha[idx] - 1.0) <= q_near * q_near * max_dh + 1e-9);
    }

    SECTION("needs three grid points") {
        REQUIRE_THROWS_MATCHES(legendre(constant_spectrum({0.0, 1.0}, 0.5)), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::grid_too_small;
                               }));
    }
}

TEST_CASE("monotonicity diagnostic", "[scaling]") {
    HurstSpectrum spec;
    spec.q_grid = {-4.0, -2.0, 0.0, 2.0, 4.0};
    spec.h = {0.9, 0.8, 0.7, 0.6, 0.5};
    spec.r2.assign(5, 1.0);
    REQUIRE(monotonicity_violations(spec) == 0);

    spec.h = {0.9, 0.8, 0.85, 0.6, 0.65};
    REQUIRE(monotonicity_violations(spec) == 2);

    REQUIRE(monotonicity_violations(constant_spectrum(spec.q_grid, 0.5)) == 0);

    // a cascade spectrum estimated end to end stays monotone
    GeneratorSpec gen;
    gen.kind = GeneratorKind::binomial_cascade;
    gen.length = 4096;
    gen.p = 0.75;
    gen.cascade_randomize = false;
    const Profile prof = build_profile(generate(gen));
    const FluctuationSurface surface = fluctuation_surface(
        prof, Method::mfdfa, {-8.0, -4.0, -2.0, 0.0, 2.0, 4.0, 8.0},
        {16, 23, 32, 45, 64, 91, 128, 181, 256}, 0.25, DetrendConfig{1});
    REQUIRE(monotonicity_violations(fit_hurst(surface, {16, 256}), 1e-6) == 0);
}

TEST_CASE("white noise h(2) via Monte Carlo", "[scaling][slow]") {
    // Mean over 20 seeds of the fitted exponent for i.i.d. Gaussian noise.
    const std::vector<std::size_t> scales{16, 23, 32, 45, 64, 91, 128, 181, 256};
    double sum = 0.0;
    const int seeds = 20;
    for (int seed = 0; seed < seeds; ++seed) {
        std::mt19937_64 rng(1000 + seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        TimeSeries ts;
        ts.values.reserve(4096);
        for (int i = 0; i < 4096; ++i) ts.values.push_back(normal(rng));
        const FluctuationSurface surface = fluctuation_surface(
            build_profile(ts), Method::mfdfa, {2.0}, scales, 0.25, DetrendConfig{1});
        sum += fit_hurst(surface, {16, 256}).h[0];
    }
    REQUIRE(sum / seeds == Catch::Approx(0.5).margin(0.05));
}
