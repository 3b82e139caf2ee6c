#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "mfdfa/errors.hpp"
#include "mfdfa/time_series.hpp"

namespace mfdfa {

/// Column is selected by 0-based index ("0", "1", ...) or by header name.
struct CsvOptions {
    std::string column = "0";
    char delimiter = ',';
    SeriesKind kind = SeriesKind::price;
    std::string label;
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line, char delimiter,
                                                  std::vector<std::string_view>& out) {
    out.clear();
    std::size_t begin = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, begin);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(begin));
            break;
        }
        out.push_back(line.substr(begin, pos - begin));
        begin = pos + 1;
    }
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view field, double& out) {
    field = trim(field);
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

inline bool is_integer(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

/// Read one numeric column from a delimited text file. Blank lines are
/// skipped; a first row whose selected cell does not parse is treated as a
/// header. Reported row numbers are 1-based physical line numbers.
inline TimeSeries ingest_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) fail(errc::file_not_found, path);

    TimeSeries out;
    out.kind = options.kind;
    out.label = options.label.empty() ? path : options.label;

    const bool by_index = detail::is_integer(options.column);
    std::size_t column_index = 0;
    if (by_index) column_index = std::stoul(options.column);

    bool header_resolved = by_index ? false : true;
    bool need_header_row = !by_index;

    std::string line;
    std::vector<std::string_view> fields;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;

        detail::split_fields(line, options.delimiter, fields);

        if (need_header_row) {
            bool found = false;
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (detail::trim(fields[i]) == options.column) {
                    column_index = i;
                    found = true;
                    break;
                }
            }
            if (!found)
                fail(errc::parse_error,
                     "column '" + options.column + "' not found in header (row " +
                         std::to_string(row) + ")");
            need_header_row = false;
            continue;
        }

        if (column_index >= fields.size())
            fail(errc::parse_error, "row " + std::to_string(row) + " has only " +
                                        std::to_string(fields.size()) + " columns, need index " +
                                        std::to_string(column_index));

        double value = 0.0;
        if (!detail::parse_double(fields[column_index], value)) {
            // A non-numeric first row under index selection is a header.
            if (!header_resolved && out.values.empty()) {
                header_resolved = true;
                continue;
            }
            fail(errc::parse_error,
                 "row " + std::to_string(row) + " column " + std::to_string(column_index) +
                     ": cannot parse '" + std::string(detail::trim(fields[column_index])) + "'");
        }
        header_resolved = true;
        if (!std::isfinite(value))
            fail(errc::parse_error,
                 "row " + std::to_string(row) + " column " + std::to_string(column_index) +
                     ": non-finite value");
        out.values.push_back(value);
    }
    return out;
}

}  // namespace mfdfa
