#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mfdfa/errors.hpp"
#include "mfdfa/segmentation.hpp"
#include "mfdfa/time_series.hpp"

namespace mfdfa {

/// Degree of the local least-squares polynomial removed inside each window.
struct DetrendConfig {
    int order = 1;
};

inline void validate_detrend(const DetrendConfig& cfg) {
    if (cfg.order < 1 || cfg.order > 5)
        fail(errc::bad_config, "detrend order must be in [1, 5], got " + std::to_string(cfg.order));
}

namespace detail {

/// Orthonormal basis for degree-m polynomials sampled on s equispaced points.
/// Abscissae are mapped to [-1, 1] before the QR factorization, so the fit
/// stays well conditioned at large window lengths and high orders.
inline Eigen::MatrixXd detrend_basis(std::size_t length, int order) {
    const auto s = static_cast<Eigen::Index>(length);
    const Eigen::Index cols = order + 1;
    Eigen::MatrixXd basis(s, cols);
    for (Eigen::Index i = 0; i < s; ++i) {
        const double t = s == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(s - 1);
        double pw = 1.0;
        for (Eigen::Index j = 0; j < cols; ++j) {
            basis(i, j) = pw;
            pw *= t;
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    Eigen::MatrixXd thin_q = qr.householderQ() * Eigen::MatrixXd::Identity(s, cols);
    return thin_q;
}

/// Mean squared residual of the projection onto the span of the basis.
inline double residual_variance(const double* y, const Eigen::MatrixXd& thin_q) {
    const Eigen::Index s = thin_q.rows();
    Eigen::Map<const Eigen::VectorXd> yv(y, s);
    Eigen::VectorXd coeffs = thin_q.transpose() * yv;
    Eigen::VectorXd residual = yv - thin_q * coeffs;
    return residual.squaredNorm() / static_cast<double>(s);
}

}  // namespace detail

/// F^2(v, s): mean squared residual of the degree-m fit to the profile
/// samples inside one window.
inline double window_variance(const Profile& profile, const Window& window,
                              const DetrendConfig& cfg) {
    validate_detrend(cfg);
    if (window.length < static_cast<std::size_t>(cfg.order) + 2)
        fail(errc::window_too_short,
             "window length " + std::to_string(window.length) + " below order+2 = " +
                 std::to_string(cfg.order + 2));
    if (window.start + window.length > profile.size())
        fail(errc::bad_spec, "window escapes profile bounds");

    const Eigen::MatrixXd basis = detail::detrend_basis(window.length, cfg.order);
    return detail::residual_variance(profile.values.data() + window.start, basis);
}

/// q-th order fluctuation: the generalized power mean of the per-window
/// fluctuations, F_q = (mean_v (F^2_v)^(q/2))^(1/q), with the q -> 0
/// logarithmic form F_0 = exp(mean_v ln F_v). Evaluated in log space so
/// extreme moments neither overflow nor underflow.
inline double fq(std::span<const double> variances, double q) {
    if (variances.empty())
        fail(errc::empty_windows, "fluctuation of an empty window set");

    const std::size_t count = variances.size();

    if (q == 0.0) {
        double acc = 0.0;
        for (double v : variances) {
            if (v <= 0.0) return 0.0;  // geometric mean collapses
            acc += std::log(v);
        }
        return std::exp(0.5 * acc / static_cast<double>(count));
    }

    if (q < 0.0) {
        for (double v : variances)
            if (v <= 0.0)
                fail(errc::zero_variance_negative_q,
                     "zero window variance makes q = " + std::to_string(q) + " diverge");
    }

    // log-sum-exp over (q/2) * ln F^2_v
    double peak = -std::numeric_limits<double>::infinity();
    for (double v : variances)
        if (v > 0.0) peak = std::max(peak, 0.5 * q * std::log(v));
    if (!std::isfinite(peak)) return 0.0;  // every variance is zero, q > 0

    double sum = 0.0;
    for (double v : variances)
        sum += v > 0.0 ? std::exp(0.5 * q * std::log(v) - peak) : 0.0;
    return std::exp((peak + std::log(sum / static_cast<double>(count))) / q);
}

/// F_q(s) over a q-grid x scale-grid. Cells that cannot be represented on
/// the log-log plot (zero or non-finite moments) are stored as NaN and the
/// whole scale column is flagged rather than dropped.
struct FluctuationSurface {
    std::vector<double> q_grid;
    std::vector<std::size_t> scales;
    Method method = Method::mfdfa;
    std::vector<std::vector<double>> values;  // one row per q, one column per scale
    std::vector<char> column_flagged;         // per scale

    double value(std::size_t qi, std::size_t si) const { return values[qi][si]; }

    static bool cell_valid(double v) { return std::isfinite(v) && v > 0.0; }

    /// All (q, s) pairs whose moment could not be formed.
    std::vector<std::pair<double, std::size_t>> flagged_cells() const {
        std::vector<std::pair<double, std::size_t>> out;
        for (std::size_t si = 0; si < scales.size(); ++si) {
            if (!column_flagged[si]) continue;
            for (std::size_t qi = 0; qi < q_grid.size(); ++qi)
                if (!cell_valid(values[qi][si])) out.emplace_back(q_grid[qi], scales[si]);
        }
        return out;
    }
};

/// Overlap length for one scale: round(fraction * s) clamped into the valid
/// range 0 < l < s/2.
inline std::size_t overlap_for_scale(double fraction, std::size_t scale) {
    if (!(fraction > 0.0) || !(fraction < 0.5))
        fail(errc::bad_overlap,
             "overlap fraction must lie in (0, 0.5), got " + std::to_string(fraction));
    const auto raw = static_cast<long long>(std::llround(fraction * static_cast<double>(scale)));
    const long long hi = (static_cast<long long>(scale) - 1) / 2;
    return static_cast<std::size_t>(std::clamp<long long>(raw, 1, std::max<long long>(1, hi)));
}

inline FluctuationSurface fluctuation_surface(const Profile& profile, Method method,
                                              std::vector<double> q_grid,
                                              std::vector<std::size_t> scales,
                                              double overlap_fraction,
                                              const DetrendConfig& cfg) {
    validate_detrend(cfg);
    if (q_grid.empty() || scales.empty())
        fail(errc::bad_config, "q grid and scale grid must be non-empty");
    if (!std::is_sorted(q_grid.begin(), q_grid.end()) ||
        std::adjacent_find(q_grid.begin(), q_grid.end()) != q_grid.end())
        fail(errc::bad_config, "q grid must be sorted and unique");
    if (!std::is_sorted(scales.begin(), scales.end()) ||
        std::adjacent_find(scales.begin(), scales.end()) != scales.end())
        fail(errc::bad_config, "scale grid must be sorted and unique");
    for (std::size_t s : scales)
        if (s < static_cast<std::size_t>(cfg.order) + 2)
            fail(errc::scale_too_small, "scale " + std::to_string(s) +
                                            " below order+2 = " + std::to_string(cfg.order + 2));

    FluctuationSurface surface;
    surface.method = method;
    surface.q_grid = std::move(q_grid);
    surface.scales = std::move(scales);
    surface.values.assign(surface.q_grid.size(),
                          std::vector<double>(surface.scales.size(), 0.0));
    surface.column_flagged.assign(surface.scales.size(), 0);

    std::vector<double> variances;
    for (std::size_t si = 0; si < surface.scales.size(); ++si) {
        const std::size_t s = surface.scales[si];
        const SegmentationPlan plan =
            method == Method::mfdfa
                ? mfdfa_plan(profile.size(), s)
                : biosw_plan(profile.size(), s, overlap_for_scale(overlap_fraction, s));

        const Eigen::MatrixXd basis = detail::detrend_basis(s, cfg.order);
        variances.resize(plan.windows.size());
        for (std::size_t v = 0; v < plan.windows.size(); ++v)
            variances[v] =
                detail::residual_variance(profile.values.data() + plan.windows[v].start, basis);

        bool flagged = false;
        for (std::size_t qi = 0; qi < surface.q_grid.size(); ++qi) {
            double f;
            try {
                f = fq(variances, surface.q_grid[qi]);
            } catch (const Error& e) {
                if (e.code() != errc::zero_variance_negative_q) throw;
                f = std::numeric_limits<double>::quiet_NaN();
            }
            if (!FluctuationSurface::cell_valid(f)) {
                f = std::numeric_limits<double>::quiet_NaN();
                flagged = true;
            }
            surface.values[qi][si] = f;
        }
        surface.column_flagged[si] = flagged ? 1 : 0;
    }
    return surface;
}

}  // namespace mfdfa
