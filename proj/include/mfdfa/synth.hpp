#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mfdfa/errors.hpp"
#include "mfdfa/time_series.hpp"

namespace mfdfa {

enum class GeneratorKind { gaussian_iid, student_t, binomial_cascade, random_walk };

inline const char* generator_kind_name(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::gaussian_iid: return "gaussian_iid";
        case GeneratorKind::student_t: return "student_t";
        case GeneratorKind::binomial_cascade: return "binomial_cascade";
        case GeneratorKind::random_walk: return "random_walk";
    }
    return "gaussian_iid";
}

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::gaussian_iid;
    std::size_t length = 0;
    std::uint64_t seed = 0;
    double df = 3.0;                // student_t: degrees of freedom (> 2)
    double p = 0.75;                // cascade: dominant weight in (0.5, 1)
    bool cascade_randomize = true;  // seeded coin decides which half gets p
};

namespace detail {

inline void cascade_split(std::vector<double>& values, std::size_t lo, std::size_t hi, double p,
                          bool randomize, std::mt19937_64& rng) {
    const std::size_t len = hi - lo;
    if (len < 2) return;
    const std::size_t mid = lo + len / 2;

    double left = p;
    if (randomize && (rng() & 1u)) left = 1.0 - p;
    const double right = 1.0 - left;

    for (std::size_t i = lo; i < mid; ++i) values[i] *= left;
    for (std::size_t i = mid; i < hi; ++i) values[i] *= right;
    cascade_split(values, lo, mid, p, randomize, rng);
    cascade_split(values, mid, hi, p, randomize, rng);
}

}  // namespace detail

/// Deterministic per seed. The binomial cascade starts from a unit mass
/// over 2^k cells and halves k times, weighting the two halves by p and
/// 1 - p; which side receives p is a seeded coin per node (or always the
/// left half when cascade_randomize is off).
inline TimeSeries generate(const GeneratorSpec& spec) {
    if (spec.length < 1) fail(errc::bad_spec, "generator length must be positive");

    TimeSeries out;
    out.kind = SeriesKind::generic;
    out.label = generator_kind_name(spec.kind);
    out.values.resize(spec.length);

    std::mt19937_64 rng(spec.seed);
    switch (spec.kind) {
        case GeneratorKind::gaussian_iid: {
            std::normal_distribution<double> normal(0.0, 1.0);
            for (double& v : out.values) v = normal(rng);
            break;
        }
        case GeneratorKind::student_t: {
            if (!(spec.df > 2.0)) fail(errc::bad_spec, "student_t needs df > 2");
            std::student_t_distribution<double> student(spec.df);
            for (double& v : out.values) v = student(rng);
            break;
        }
        case GeneratorKind::random_walk: {
            std::normal_distribution<double> normal(0.0, 1.0);
            double acc = 0.0;
            for (double& v : out.values) {
                acc += normal(rng);
                v = acc;
            }
            break;
        }
        case GeneratorKind::binomial_cascade: {
            if ((spec.length & (spec.length - 1)) != 0)
                fail(errc::bad_spec, "cascade length must be a power of 2, got " +
                                         std::to_string(spec.length));
            if (!(spec.p > 0.5) || !(spec.p < 1.0))
                fail(errc::bad_spec, "cascade weight must lie in (0.5, 1)");
            std::fill(out.values.begin(), out.values.end(), 1.0);
            detail::cascade_split(out.values, 0, spec.length, spec.p, spec.cascade_randomize,
                                  rng);
            break;
        }
    }
    return out;
}

/// Closed-form generalized Hurst exponent of the binomial cascade,
/// h(q) = 1/q - ln(p^q + (1-p)^q) / (q ln 2), with the q -> 0 limit
/// -(ln p + ln(1-p)) / (2 ln 2). Strictly decreasing in q; the q -> +inf
/// asymptote is -ln p / ln 2.
inline double cascade_h_analytic(double p, double q) {
    if (!(p > 0.5) || !(p < 1.0))
        fail(errc::bad_p, "cascade weight must lie in (0.5, 1), got " + std::to_string(p));

    if (std::abs(q) < 1e-7)
        return -(std::log(p) + std::log1p(-p)) / (2.0 * M_LN2);

    // Factor out the dominant term so large |q| neither overflows nor
    // loses the sum: p dominates for q > 0, (1 - p) for q < 0.
    const double log_dominant = q > 0.0 ? std::log(p) : std::log1p(-p);
    const double log_other = q > 0.0 ? std::log1p(-p) : std::log(p);
    const double log_sum = q * log_dominant + std::log1p(std::exp(q * (log_other - log_dominant)));
    return 1.0 / q - log_sum / (q * M_LN2);
}

}  // namespace mfdfa
