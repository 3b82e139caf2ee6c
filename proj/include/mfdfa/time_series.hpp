#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mfdfa/errors.hpp"

namespace mfdfa {

enum class SeriesKind { price, returns, generic };

inline const char* series_kind_name(SeriesKind k) {
    switch (k) {
        case SeriesKind::price: return "price";
        case SeriesKind::returns: return "return";
        case SeriesKind::generic: return "generic";
    }
    return "generic";
}

/// A one-dimensional sample sequence. Values are immutable by convention:
/// every operation takes the series by const reference and returns a new one.
struct TimeSeries {
    std::vector<double> values;
    std::string label;
    SeriesKind kind = SeriesKind::generic;

    std::size_t size() const noexcept { return values.size(); }
};

/// Cumulative sum of the mean-centered series. Indexing is 0-based:
/// values[i] corresponds to the partial sum over the first i+1 samples,
/// so the last entry is zero up to accumulated rounding.
struct Profile {
    std::vector<double> values;
    double source_mean = 0.0;

    std::size_t size() const noexcept { return values.size(); }
};

/// Moment-based summary. Kurtosis is raw (a normal sample tends to 3),
/// not excess.
struct DescriptiveStats {
    std::size_t n = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
};

inline void require_finite(const std::vector<double>& values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            fail(errc::parse_error,
                 std::string(what) + " contains a non-finite value at index " + std::to_string(i));
    }
}

/// r_t = ln I_{t+1} - ln I_t for consecutive prices. Output has length N-1.
inline TimeSeries log_returns(const TimeSeries& prices) {
    if (prices.size() < 2)
        fail(errc::too_short, "log returns need at least 2 prices, got " +
                                  std::to_string(prices.size()));
    require_finite(prices.values, "price series");
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (prices.values[i] <= 0.0)
            fail(errc::non_positive_price,
                 "price at index " + std::to_string(i) + " is " +
                     std::to_string(prices.values[i]));
    }
    TimeSeries out;
    out.kind = SeriesKind::returns;
    out.label = prices.label;
    out.values.resize(prices.size() - 1);
    for (std::size_t t = 0; t + 1 < prices.size(); ++t)
        out.values[t] = std::log(prices.values[t + 1]) - std::log(prices.values[t]);
    return out;
}

/// Y(i) = sum_{k<=i} (x_k - mean).
inline Profile build_profile(const TimeSeries& series) {
    if (series.size() < 4)
        fail(errc::too_short, "profile needs at least 4 samples, got " +
                                  std::to_string(series.size()));
    require_finite(series.values, "series");

    const std::size_t n = series.size();
    double sum = 0.0;
    for (double v : series.values) sum += v;
    const double mean = sum / static_cast<double>(n);

    Profile p;
    p.source_mean = mean;
    p.values.resize(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += series.values[i] - mean;
        p.values[i] = acc;
    }
    return p;
}

inline DescriptiveStats describe(const TimeSeries& series) {
    if (series.size() < 4)
        fail(errc::too_short, "descriptive statistics need at least 4 samples, got " +
                                  std::to_string(series.size()));
    require_finite(series.values, "series");

    const std::size_t n = series.size();
    DescriptiveStats st;
    st.n = n;

    double sum = 0.0;
    st.min = std::numeric_limits<double>::infinity();
    st.max = -std::numeric_limits<double>::infinity();
    for (double v : series.values) {
        sum += v;
        st.min = std::min(st.min, v);
        st.max = std::max(st.max, v);
    }
    st.mean = sum / static_cast<double>(n);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : series.values) {
        const double d = v - st.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);

    if (m2 <= 0.0)
        fail(errc::zero_variance, "skewness/kurtosis undefined for a constant series");

    st.skewness = m3 / std::pow(m2, 1.5);
    st.kurtosis = m4 / (m2 * m2);
    return st;
}

}  // namespace mfdfa
