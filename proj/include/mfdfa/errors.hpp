#pragma once

#include <stdexcept>
#include <string>

namespace mfdfa {

// Every failure the library can signal. CLI maps these onto exit codes:
// config errors (bad parameters), data errors (bad input), numeric errors
// (analysis broke down on otherwise valid input).
enum class errc {
    too_short,
    non_positive_price,
    zero_variance,
    scale_too_small,
    scale_too_large,
    bad_overlap,
    window_too_short,
    empty_windows,
    zero_variance_negative_q,
    too_few_scales,
    flagged_column_in_range,
    grid_too_small,
    bad_spec,
    bad_p,
    file_not_found,
    parse_error,
    unknown_view,
    bad_config,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::too_short: return "too_short";
        case errc::non_positive_price: return "non_positive_price";
        case errc::zero_variance: return "zero_variance";
        case errc::scale_too_small: return "scale_too_small";
        case errc::scale_too_large: return "scale_too_large";
        case errc::bad_overlap: return "bad_overlap";
        case errc::window_too_short: return "window_too_short";
        case errc::empty_windows: return "empty_windows";
        case errc::zero_variance_negative_q: return "zero_variance_negative_q";
        case errc::too_few_scales: return "too_few_scales";
        case errc::flagged_column_in_range: return "flagged_column_in_range";
        case errc::grid_too_small: return "grid_too_small";
        case errc::bad_spec: return "bad_spec";
        case errc::bad_p: return "bad_p";
        case errc::file_not_found: return "file_not_found";
        case errc::parse_error: return "parse_error";
        case errc::unknown_view: return "unknown_view";
        case errc::bad_config: return "bad_config";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
    throw Error(code, msg);
}

}  // namespace mfdfa
