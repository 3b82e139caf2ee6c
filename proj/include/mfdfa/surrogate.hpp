#pragma once

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mfdfa/errors.hpp"
#include "mfdfa/time_series.hpp"

namespace mfdfa {

enum class SurrogateMode { shuffle, phase_single_angle, phase_random };

inline const char* surrogate_mode_name(SurrogateMode m) {
    switch (m) {
        case SurrogateMode::shuffle: return "shuffle";
        case SurrogateMode::phase_single_angle: return "phase_single_angle";
        case SurrogateMode::phase_random: return "phase_random";
    }
    return "shuffle";
}

enum class ShuffleAlgo {
    transpositions,  // swap_factor * N random pair swaps
    fisher_yates     // single-pass unbiased permutation
};

struct SurrogateConfig {
    std::uint64_t seed = 0;
    SurrogateMode mode = SurrogateMode::shuffle;
    int swap_factor = 20;
    ShuffleAlgo shuffle_algo = ShuffleAlgo::transpositions;
};

/// Random permutation of the values; the multiset is preserved bitwise.
/// The default algorithm performs swap_factor * N random transpositions;
/// the fisher_yates alternative draws one unbiased permutation.
inline TimeSeries shuffle(const TimeSeries& series, const SurrogateConfig& cfg) {
    if (series.size() < 2)
        fail(errc::too_short, "shuffle needs at least 2 samples");
    if (cfg.swap_factor < 1)
        fail(errc::bad_config, "swap factor must be >= 1");

    TimeSeries out = series;
    std::mt19937_64 rng(cfg.seed);
    const std::size_t n = out.size();

    if (cfg.shuffle_algo == ShuffleAlgo::fisher_yates) {
        for (std::size_t i = n - 1; i > 0; --i) {
            std::uniform_int_distribution<std::size_t> pick(0, i);
            std::swap(out.values[i], out.values[pick(rng)]);
        }
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        const std::size_t steps = static_cast<std::size_t>(cfg.swap_factor) * n;
        for (std::size_t k = 0; k < steps; ++k) {
            const std::size_t a = pick(rng);
            const std::size_t b = pick(rng);
            std::swap(out.values[a], out.values[b]);
        }
    }
    return out;
}

namespace detail {

/// Rotate every positive-frequency bin by its angle (the conjugate mirror
/// turns by the negative), keep DC and Nyquist real, and transform back.
/// Conjugate symmetry is rebuilt explicitly and the leftover imaginary part
/// is checked against 1e-9 of the series scale before it is discarded.
inline TimeSeries rotate_bins(const TimeSeries& series, const std::vector<double>& angles) {
    const std::size_t n = series.size();
    Eigen::FFT<double> fft;

    std::vector<std::complex<double>> spectrum;
    std::vector<double> input = series.values;
    fft.fwd(spectrum, input);

    const std::size_t positive_bins = (n - 1) / 2;  // excludes DC and any Nyquist bin
    for (std::size_t k = 1; k <= positive_bins; ++k) {
        const std::complex<double> rot = std::polar(1.0, angles[k - 1]);
        spectrum[k] *= rot;
        spectrum[n - k] = std::conj(spectrum[k]);
    }
    if (n % 2 == 0) spectrum[n / 2] = std::complex<double>(spectrum[n / 2].real(), 0.0);

    std::vector<std::complex<double>> back;
    fft.inv(back, spectrum);

    double scale = 0.0;
    for (double v : series.values) scale = std::max(scale, std::abs(v));
    double residue = 0.0;
    for (const auto& z : back) residue = std::max(residue, std::abs(z.imag()));
    if (residue > 1e-9 * std::max(scale, 1e-300))
        fail(errc::bad_spec, "phase surrogate lost conjugate symmetry (imag residue " +
                                 std::to_string(residue) + ")");

    TimeSeries out;
    out.kind = series.kind;
    out.label = series.label;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = back[i].real();
    return out;
}

inline double draw_angle(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(0.0, 2.0 * M_PI);
    double theta = dist(rng);
    while (theta == 0.0) theta = dist(rng);
    return theta;
}

}  // namespace detail

/// Rotate every positive-frequency component by one given angle. With
/// angle = 0 this is the identity up to FFT round-trip rounding.
inline TimeSeries phase_rotate(const TimeSeries& series, double angle) {
    if (series.size() < 4)
        fail(errc::too_short, "phase rotation needs at least 4 samples");
    require_finite(series.values, "series");
    const std::size_t positive_bins = (series.size() - 1) / 2;
    return detail::rotate_bins(series, std::vector<double>(positive_bins, angle));
}

/// Phase surrogate. phase_single_angle advances every positive frequency by
/// one seeded angle in (0, 2pi); phase_random draws an independent angle per
/// bin. Either way the amplitude spectrum, and hence the power spectrum and
/// the linear correlations, are preserved.
inline TimeSeries phase_randomize(const TimeSeries& series, const SurrogateConfig& cfg) {
    if (series.size() < 4)
        fail(errc::too_short, "phase randomization needs at least 4 samples");
    require_finite(series.values, "series");
    if (cfg.mode == SurrogateMode::shuffle)
        fail(errc::bad_config, "phase_randomize called with shuffle mode");

    std::mt19937_64 rng(cfg.seed);
    const std::size_t positive_bins = (series.size() - 1) / 2;
    std::vector<double> angles(positive_bins);
    if (cfg.mode == SurrogateMode::phase_single_angle) {
        const double theta = detail::draw_angle(rng);
        for (double& a : angles) a = theta;
    } else {
        for (double& a : angles) a = detail::draw_angle(rng);
    }
    return detail::rotate_bins(series, angles);
}

}  // namespace mfdfa
