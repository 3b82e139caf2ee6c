#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mfdfa/csv.hpp"
#include "mfdfa/errors.hpp"
#include "mfdfa/fluctuation.hpp"
#include "mfdfa/scaling.hpp"
#include "mfdfa/segmentation.hpp"
#include "mfdfa/surrogate.hpp"
#include "mfdfa/time_series.hpp"
#include "mfdfa/version.hpp"

namespace mfdfa {

enum class MethodChoice { mfdfa, biosw, both };

inline const char* method_choice_name(MethodChoice m) {
    switch (m) {
        case MethodChoice::mfdfa: return "mfdfa";
        case MethodChoice::biosw: return "biosw";
        case MethodChoice::both: return "both";
    }
    return "both";
}

/// min:max:count for the log-spaced integer scale grid; zeros mean
/// "derive from the series length".
struct ScaleGridSpec {
    std::size_t min = 0;
    std::size_t max = 0;
    std::size_t count = 0;
};

struct AnalysisConfig {
    MethodChoice method = MethodChoice::both;
    int detrend_order = 1;
    std::vector<double> q_grid;  // empty = default grid
    ScaleGridSpec scales;
    double overlap_fraction = 0.25;
    std::vector<SurrogateMode> surrogates;
    int replicates = 10;
    std::uint64_t seed = 0;
    std::string column = "0";
    char delimiter = ',';
    SeriesKind kind = SeriesKind::price;
    std::string label;
};

/// Reporting grid: wide q range with unit-or-finer steps near zero so the
/// numerical Legendre derivative stays stable.
inline std::vector<double> default_q_grid() {
    return {-20.0, -16.0, -12.0, -8.0, -4.0, -3.0, -2.0, -1.0, -0.5,
            0.0,   0.5,   1.0,   2.0,  3.0,  4.0,  8.0,  12.0, 16.0, 20.0};
}

/// Log-spaced integer scales, deduplicated. Defaults: max(10, m+2) up to
/// min(N/4, 500), 20 points.
inline std::vector<std::size_t> build_scale_grid(std::size_t n, int detrend_order,
                                                 const ScaleGridSpec& spec) {
    const std::size_t lo =
        spec.min > 0 ? spec.min : std::max<std::size_t>(10, static_cast<std::size_t>(detrend_order) + 2);
    const std::size_t hi = spec.max > 0 ? spec.max : std::min<std::size_t>(n / 4, 500);
    const std::size_t count = spec.count > 0 ? spec.count : 20;
    if (lo < 3) fail(errc::scale_too_small, "scale minimum must be at least 3");
    if (hi <= lo)
        fail(errc::too_short, "series of length " + std::to_string(n) +
                                  " leaves no scale range above s_min = " + std::to_string(lo));
    if (count < 4) fail(errc::bad_config, "scale grid needs at least 4 points");

    std::vector<std::size_t> scales;
    scales.reserve(count);
    const double log_lo = std::log(static_cast<double>(lo));
    const double log_hi = std::log(static_cast<double>(hi));
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        const auto s = static_cast<std::size_t>(std::llround(std::exp(log_lo + t * (log_hi - log_lo))));
        if (scales.empty() || s > scales.back()) scales.push_back(s);
    }
    if (scales.size() < 4)
        fail(errc::too_few_scales, "scale grid collapsed to fewer than 4 distinct scales");
    return scales;
}

/// Checks everything that can be checked before data arrives.
inline void validate_config(const AnalysisConfig& config) {
    if (config.detrend_order < 1 || config.detrend_order > 5)
        fail(errc::bad_config,
             "detrend order must be in [1, 5], got " + std::to_string(config.detrend_order));
    if (!(config.overlap_fraction > 0.0) || !(config.overlap_fraction < 0.5))
        fail(errc::bad_overlap, "overlap fraction must lie in (0, 0.5), got " +
                                    std::to_string(config.overlap_fraction));
    if (config.replicates < 1)
        fail(errc::bad_config, "replicates must be >= 1, got " + std::to_string(config.replicates));
    if (!config.q_grid.empty()) {
        if (!std::is_sorted(config.q_grid.begin(), config.q_grid.end()) ||
            std::adjacent_find(config.q_grid.begin(), config.q_grid.end()) != config.q_grid.end())
            fail(errc::bad_config, "q grid must be sorted and unique");
    }
    if (config.scales.min > 0 && config.scales.max > 0 && config.scales.min >= config.scales.max)
        fail(errc::bad_config, "scale minimum must be below the maximum");
    if (config.column.empty()) fail(errc::bad_config, "column selector must not be empty");
}

struct ReplicateStats {
    int count = 0;
    double delta_h_mean = 0.0;
    double delta_h_min = 0.0;
    double delta_h_max = 0.0;
};

/// One (method, variant) cell of the report. The spectra come from the
/// first replicate; the replicate statistics aggregate delta h over all of
/// them.
struct VariantResult {
    Method method = Method::mfdfa;
    std::string variant;  // "original", "shuffle", "phase_single_angle", "phase_random"
    FluctuationSurface surface;
    HurstSpectrum hurst;
    ScalingExponents exponents;
    SingularitySpectrum spectrum;
    double delta_h_full = 0.0;
    double delta_h_q10 = std::numeric_limits<double>::quiet_NaN();
    double delta_alpha = 0.0;
    std::vector<std::pair<double, std::size_t>> flagged;  // (q, scale)
    bool has_replicates = false;
    ReplicateStats replicates;
};

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct AnalysisReport {
    std::string tool_version = kVersion;
    AnalysisConfig config;
    std::vector<double> q_grid;           // resolved
    std::vector<std::size_t> scale_grid;  // resolved
    std::string input_label;
    std::size_t input_length = 0;   // samples as ingested
    bool log_returns_applied = false;
    std::size_t analyzed_length = 0;
    DescriptiveStats stats;
    std::vector<VariantResult> results;
    std::vector<StageTiming> timings;  // wall clock; not part of the canonical report bytes
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Stable per-(variant, replicate) stream derived from the master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t variant_index,
                                 std::uint64_t replicate) {
    std::uint64_t state = master ^ (0xa0761d6478bd642full * (variant_index + 1)) ^
                          (0xe7037ed1a0b428dbull * (replicate + 1));
    return splitmix64(state);
}

inline double delta_h_restricted(const HurstSpectrum& spectrum, double q_abs_limit) {
    double h_lo = std::numeric_limits<double>::quiet_NaN();
    double h_hi = std::numeric_limits<double>::quiet_NaN();
    bool any = false;
    for (std::size_t i = 0; i < spectrum.q_grid.size(); ++i) {
        if (std::abs(spectrum.q_grid[i]) > q_abs_limit) continue;
        if (!any) h_lo = spectrum.h[i];
        h_hi = spectrum.h[i];
        any = true;
    }
    return h_lo - h_hi;  // NaN when the restricted grid is empty
}

}  // namespace detail

/// Full analysis of one variant series under one method.
inline VariantResult analyze_variant(const TimeSeries& series, Method method,
                                     const std::vector<double>& q_grid,
                                     const std::vector<std::size_t>& scales,
                                     double overlap_fraction, const DetrendConfig& detrend) {
    VariantResult result;
    result.method = method;

    const Profile prof = build_profile(series);
    result.surface = fluctuation_surface(prof, method, q_grid, scales, overlap_fraction, detrend);
    result.flagged = result.surface.flagged_cells();
    result.hurst = fit_hurst(result.surface, {scales.front(), scales.back()},
                             FlagPolicy::skip_flagged);
    result.delta_h_full = delta_h(result.hurst);
    result.delta_h_q10 = detail::delta_h_restricted(result.hurst, 10.0);
    result.exponents = tau(result.hurst);
    result.spectrum = legendre(result.hurst);
    result.delta_alpha = result.spectrum.width;
    return result;
}

inline TimeSeries make_surrogate(const TimeSeries& base, SurrogateMode mode,
                                 std::uint64_t seed) {
    SurrogateConfig cfg;
    cfg.seed = seed;
    cfg.mode = mode;
    if (mode == SurrogateMode::shuffle) return shuffle(base, cfg);
    return phase_randomize(base, cfg);
}

inline AnalysisReport run(const TimeSeries& input, const AnalysisConfig& config) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();

    validate_config(config);

    AnalysisReport report;
    report.config = config;
    report.input_label = input.label;
    report.input_length = input.size();

    TimeSeries series = input;
    if (config.kind == SeriesKind::price) {
        series = log_returns(input);
        report.log_returns_applied = true;
    }
    report.analyzed_length = series.size();
    report.stats = describe(series);

    report.q_grid = config.q_grid.empty() ? default_q_grid() : config.q_grid;
    report.scale_grid = build_scale_grid(series.size(), config.detrend_order, config.scales);

    const DetrendConfig detrend{config.detrend_order};

    std::vector<Method> methods;
    if (config.method == MethodChoice::mfdfa || config.method == MethodChoice::both)
        methods.push_back(Method::mfdfa);
    if (config.method == MethodChoice::biosw || config.method == MethodChoice::both)
        methods.push_back(Method::biosw);

    // Surrogate replicate series are shared across methods so both see the
    // same draws.
    struct VariantSeries {
        std::string name;
        bool is_original;
        std::vector<TimeSeries> replicates;
    };
    std::vector<VariantSeries> variants;
    variants.push_back({"original", true, {series}});
    for (std::size_t vi = 0; vi < config.surrogates.size(); ++vi) {
        const SurrogateMode mode = config.surrogates[vi];
        VariantSeries vs{surrogate_mode_name(mode), false, {}};
        vs.replicates.reserve(static_cast<std::size_t>(config.replicates));
        for (int r = 0; r < config.replicates; ++r)
            vs.replicates.push_back(
                make_surrogate(series, mode, detail::derive_seed(config.seed, vi, static_cast<std::uint64_t>(r))));
        variants.push_back(std::move(vs));
    }

    for (Method method : methods) {
        for (const VariantSeries& vs : variants) {
            const auto t_variant = clock::now();
            VariantResult result =
                analyze_variant(vs.replicates.front(), method, report.q_grid, report.scale_grid,
                                config.overlap_fraction, detrend);
            result.variant = vs.name;

            if (!vs.is_original) {
                ReplicateStats stats;
                stats.count = static_cast<int>(vs.replicates.size());
                double sum = 0.0;
                double lo = std::numeric_limits<double>::infinity();
                double hi = -std::numeric_limits<double>::infinity();
                for (std::size_t r = 0; r < vs.replicates.size(); ++r) {
                    const double dh =
                        r == 0 ? result.delta_h_full
                               : analyze_variant(vs.replicates[r], method, report.q_grid,
                                                 report.scale_grid, config.overlap_fraction,
                                                 detrend)
                                     .delta_h_full;
                    sum += dh;
                    lo = std::min(lo, dh);
                    hi = std::max(hi, dh);
                }
                stats.delta_h_mean = sum / static_cast<double>(stats.count);
                stats.delta_h_min = lo;
                stats.delta_h_max = hi;
                result.has_replicates = true;
                result.replicates = stats;
            }

            report.results.push_back(std::move(result));
            report.timings.push_back(
                {std::string(method_name(method)) + "/" + vs.name,
                 std::chrono::duration<double>(clock::now() - t_variant).count()});
        }
    }

    report.timings.push_back({"total", std::chrono::duration<double>(clock::now() - t0).count()});
    return report;
}

/// CSV entry point used by the CLI.
inline TimeSeries ingest(const std::string& path, const AnalysisConfig& config) {
    CsvOptions options;
    options.column = config.column;
    options.delimiter = config.delimiter;
    options.kind = config.kind;
    options.label = config.label.empty() ? path : config.label;
    TimeSeries ts = ingest_csv(path, options);
    if (ts.values.empty())
        fail(errc::parse_error, path + " holds no data rows in column " + config.column);
    return ts;
}

}  // namespace mfdfa
