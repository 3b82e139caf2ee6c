#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mfdfa/errors.hpp"
#include "mfdfa/fluctuation.hpp"

namespace mfdfa {

/// Generalized Hurst exponents: per-q slope of ln F_q(s) against ln s over
/// the fitted scale range, with the coefficient of determination per q.
struct HurstSpectrum {
    std::vector<double> q_grid;
    std::vector<double> h;
    std::vector<double> r2;
    std::pair<std::size_t, std::size_t> scale_range{0, 0};
};

struct ScalingExponents {
    std::vector<double> q_grid;
    std::vector<double> tau;
};

/// Legendre transform of tau(q): alpha = h + q h', f(alpha) = q^2 h' + 1.
struct SingularitySpectrum {
    std::vector<double> alpha;
    std::vector<double> f_alpha;
    double width = 0.0;  // alpha_max - alpha_min
};

enum class FlagPolicy {
    strict,       // a flagged column inside the fit range is an error
    skip_flagged  // flagged columns are excluded from the fit
};

namespace detail {

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};

inline OlsFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    // syy == 0 means the data are exactly flat; the zero-slope line is exact.
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace detail

inline HurstSpectrum fit_hurst(const FluctuationSurface& surface,
                               std::pair<std::size_t, std::size_t> scale_range,
                               FlagPolicy policy = FlagPolicy::strict) {
    HurstSpectrum spectrum;
    spectrum.q_grid = surface.q_grid;
    spectrum.scale_range = scale_range;
    spectrum.h.resize(surface.q_grid.size());
    spectrum.r2.resize(surface.q_grid.size());

    std::vector<std::size_t> in_range;
    for (std::size_t si = 0; si < surface.scales.size(); ++si) {
        const std::size_t s = surface.scales[si];
        if (s < scale_range.first || s > scale_range.second) continue;
        if (surface.column_flagged[si]) {
            if (policy == FlagPolicy::strict)
                fail(errc::flagged_column_in_range,
                     "scale " + std::to_string(s) + " is flagged inside the fit range");
            continue;
        }
        in_range.push_back(si);
    }

    std::vector<double> log_s, log_f;
    for (std::size_t qi = 0; qi < surface.q_grid.size(); ++qi) {
        log_s.clear();
        log_f.clear();
        for (std::size_t si : in_range) {
            const double f = surface.values[qi][si];
            if (!FluctuationSurface::cell_valid(f)) continue;
            log_s.push_back(std::log(static_cast<double>(surface.scales[si])));
            log_f.push_back(std::log(f));
        }
        if (log_s.size() < 4)
            fail(errc::too_few_scales,
                 "q = " + std::to_string(surface.q_grid[qi]) + " has only " +
                     std::to_string(log_s.size()) + " usable scales in range (need 4)");
        const detail::OlsFit fit = detail::ols(log_s, log_f);
        spectrum.h[qi] = fit.slope;
        spectrum.r2[qi] = fit.r2;
    }
    return spectrum;
}

/// h(q_min) - h(q_max); zero for a monofractal spectrum.
inline double delta_h(const HurstSpectrum& spectrum) {
    if (spectrum.q_grid.size() < 2)
        fail(errc::grid_too_small, "delta h needs at least 2 q values");
    return spectrum.h.front() - spectrum.h.back();
}

/// Soft diagnostic: h(q) of a stationary series is expected to decrease in
/// q, but finite samples can violate that. Counts adjacent increases beyond
/// the tolerance; zero means the estimate is well behaved.
inline std::size_t monotonicity_violations(const HurstSpectrum& spectrum,
                                           double tolerance = 1e-12) {
    std::size_t count = 0;
    for (std::size_t i = 1; i < spectrum.h.size(); ++i)
        if (spectrum.h[i] > spectrum.h[i - 1] + tolerance) ++count;
    return count;
}

/// tau(q) = q h(q) - 1, pointwise.
inline ScalingExponents tau(const HurstSpectrum& spectrum) {
    ScalingExponents exponents;
    exponents.q_grid = spectrum.q_grid;
    exponents.tau.resize(spectrum.q_grid.size());
    for (std::size_t i = 0; i < spectrum.q_grid.size(); ++i)
        exponents.tau[i] = spectrum.q_grid[i] * spectrum.h[i] - 1.0;
    return exponents;
}

/// Singularity spectrum via numerical h'(q): symmetric differences across
/// neighbours on the (possibly non-uniform) grid, one-sided at the ends.
inline SingularitySpectrum legendre(const HurstSpectrum& spectrum) {
    const std::size_t n = spectrum.q_grid.size();
    if (n < 3)
        fail(errc::grid_too_small, "Legendre transform needs at least 3 q values");

    const std::vector<double>& q = spectrum.q_grid;
    const std::vector<double>& h = spectrum.h;

    SingularitySpectrum spec;
    spec.alpha.resize(n);
    spec.f_alpha.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double dh;
        if (i == 0)
            dh = (h[1] - h[0]) / (q[1] - q[0]);
        else if (i == n - 1)
            dh = (h[n - 1] - h[n - 2]) / (q[n - 1] - q[n - 2]);
        else
            dh = (h[i + 1] - h[i - 1]) / (q[i + 1] - q[i - 1]);
        spec.alpha[i] = h[i] + q[i] * dh;
        spec.f_alpha[i] = q[i] * q[i] * dh + 1.0;
    }

    double lo = spec.alpha[0], hi = spec.alpha[0];
    for (double a : spec.alpha) {
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    spec.width = hi - lo;
    return spec;
}

}  // namespace mfdfa
