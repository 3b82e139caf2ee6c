#pragma once

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mfdfa/errors.hpp"
#include "mfdfa/pipeline.hpp"

namespace mfdfa {

namespace detail {

using ordered_json = nlohmann::ordered_json;

/// Doubles that cannot sit on a log axis serialize as null.
inline ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

inline ordered_json json_array(const std::vector<double>& values) {
    ordered_json arr = ordered_json::array();
    for (double v : values) arr.push_back(json_number(v));
    return arr;
}

inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const AnalysisReport& report) {
    using detail::json_array;
    using detail::json_number;
    using detail::ordered_json;

    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = {{"name", "mfdfa"}, {"version", report.tool_version}};

    ordered_json cfg;
    cfg["method"] = method_choice_name(report.config.method);
    cfg["detrend_order"] = report.config.detrend_order;
    cfg["q_grid"] = json_array(report.q_grid);
    cfg["scales"] = report.scale_grid;
    cfg["overlap_fraction"] = report.config.overlap_fraction;
    ordered_json surrogates = ordered_json::array();
    for (SurrogateMode m : report.config.surrogates) surrogates.push_back(surrogate_mode_name(m));
    cfg["surrogates"] = surrogates;
    cfg["replicates"] = report.config.replicates;
    cfg["seed"] = report.config.seed;
    cfg["column"] = report.config.column;
    cfg["delimiter"] = std::string(1, report.config.delimiter);
    cfg["kind"] = series_kind_name(report.config.kind);
    j["config"] = cfg;

    j["input"] = {{"label", report.input_label},
                  {"length", report.input_length},
                  {"log_returns_applied", report.log_returns_applied},
                  {"analyzed_length", report.analyzed_length}};

    j["descriptive"] = {{"n", report.stats.n},         {"mean", json_number(report.stats.mean)},
                        {"min", json_number(report.stats.min)}, {"max", json_number(report.stats.max)},
                        {"skewness", json_number(report.stats.skewness)},
                        {"kurtosis", json_number(report.stats.kurtosis)}};

    ordered_json results = ordered_json::array();
    for (const VariantResult& r : report.results) {
        ordered_json item;
        item["method"] = method_name(r.method);
        item["variant"] = r.variant;
        item["scale_range"] = {r.hurst.scale_range.first, r.hurst.scale_range.second};
        item["hurst"] = {{"q", json_array(r.hurst.q_grid)},
                         {"h", json_array(r.hurst.h)},
                         {"r2", json_array(r.hurst.r2)}};
        item["tau"] = json_array(r.exponents.tau);
        item["spectrum"] = {{"alpha", json_array(r.spectrum.alpha)},
                            {"f_alpha", json_array(r.spectrum.f_alpha)},
                            {"width", json_number(r.spectrum.width)}};
        item["delta_h"] = json_number(r.delta_h_full);
        item["delta_h_q10"] = json_number(r.delta_h_q10);
        item["delta_alpha"] = json_number(r.delta_alpha);

        ordered_json fq_values = ordered_json::array();
        for (const auto& row : r.surface.values) fq_values.push_back(json_array(row));
        item["fq"] = {{"scales", r.surface.scales}, {"values", fq_values}};

        ordered_json flagged = ordered_json::array();
        for (const auto& [q, s] : r.flagged) flagged.push_back({q, s});
        item["flagged"] = flagged;

        if (r.has_replicates)
            item["replicates"] = {{"count", r.replicates.count},
                                  {"delta_h_mean", json_number(r.replicates.delta_h_mean)},
                                  {"delta_h_min", json_number(r.replicates.delta_h_min)},
                                  {"delta_h_max", json_number(r.replicates.delta_h_max)}};
        else
            item["replicates"] = nullptr;
        results.push_back(item);
    }
    j["results"] = results;
    return j;
}

inline void write_report_json(const AnalysisReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::file_not_found, "cannot open " + path + " for writing");
    out << report_to_json(report).dump(2) << '\n';
}

/// Wall-clock numbers live in their own file: the canonical report must be
/// byte-identical across reruns with the same seed, and timings are not.
inline void write_timings_json(const AnalysisReport& report, const std::string& path) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const StageTiming& t : report.timings)
        j.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::file_not_found, "cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

/// One tidy CSV per figure type: fluctuation (q, s, Fq), hurst (q, h, r2),
/// tau (q, tau), spectrum (alpha, f_alpha); every row carries method and
/// variant. Values are printed with 17 significant digits so they
/// round-trip exactly.
inline void export_plot_data(const AnalysisReport& report, const std::string& which,
                             const std::string& out_path) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(errc::file_not_found, "cannot open " + out_path + " for writing");

    using detail::format_full;
    if (which == "fluctuation") {
        out << "method,variant,q,s,fq\n";
        for (const VariantResult& r : report.results)
            for (std::size_t qi = 0; qi < r.surface.q_grid.size(); ++qi)
                for (std::size_t si = 0; si < r.surface.scales.size(); ++si) {
                    const double f = r.surface.values[qi][si];
                    if (!FluctuationSurface::cell_valid(f)) continue;
                    out << method_name(r.method) << ',' << r.variant << ','
                        << format_full(r.surface.q_grid[qi]) << ',' << r.surface.scales[si] << ','
                        << format_full(f) << '\n';
                }
    } else if (which == "hurst") {
        out << "method,variant,q,h,r2\n";
        for (const VariantResult& r : report.results)
            for (std::size_t i = 0; i < r.hurst.q_grid.size(); ++i)
                out << method_name(r.method) << ',' << r.variant << ','
                    << format_full(r.hurst.q_grid[i]) << ',' << format_full(r.hurst.h[i]) << ','
                    << format_full(r.hurst.r2[i]) << '\n';
    } else if (which == "tau") {
        out << "method,variant,q,tau\n";
        for (const VariantResult& r : report.results)
            for (std::size_t i = 0; i < r.exponents.q_grid.size(); ++i)
                out << method_name(r.method) << ',' << r.variant << ','
                    << format_full(r.exponents.q_grid[i]) << ',' << format_full(r.exponents.tau[i])
                    << '\n';
    } else if (which == "spectrum") {
        out << "method,variant,alpha,f_alpha\n";
        for (const VariantResult& r : report.results)
            for (std::size_t i = 0; i < r.spectrum.alpha.size(); ++i)
                out << method_name(r.method) << ',' << r.variant << ','
                    << format_full(r.spectrum.alpha[i]) << ',' << format_full(r.spectrum.f_alpha[i])
                    << '\n';
    } else {
        fail(errc::unknown_view, "no plot view named '" + which + "'");
    }
}

inline const std::vector<std::string>& plot_views() {
    static const std::vector<std::string> views = {"fluctuation", "hurst", "tau", "spectrum"};
    return views;
}

/// Console summary in the style of the report tables: h(q) per variant,
/// then the multifractality degrees. Every printed number also sits in the
/// JSON report.
inline void print_summary(const AnalysisReport& report, std::ostream& os) {
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%10.4f", v);
        return std::string(buf);
    };

    os << "input: " << report.input_label << "  (" << report.input_length << " samples";
    if (report.log_returns_applied)
        os << " -> " << report.analyzed_length << " log returns";
    os << ")\n\n";

    const DescriptiveStats& st = report.stats;
    os << "descriptive statistics\n";
    os << "  n=" << st.n << "  mean=" << st.mean << "  min=" << st.min << "  max=" << st.max
       << "  skewness=" << st.skewness << "  kurtosis=" << st.kurtosis << "\n\n";

    for (Method method : {Method::mfdfa, Method::biosw}) {
        std::vector<const VariantResult*> rows;
        for (const VariantResult& r : report.results)
            if (r.method == method) rows.push_back(&r);
        if (rows.empty()) continue;

        os << "h(q)  [" << method_name(method) << ", scales " << rows.front()->hurst.scale_range.first
           << ".." << rows.front()->hurst.scale_range.second << "]\n";
        os << "         q";
        for (const VariantResult* r : rows) {
            std::snprintf(buf, sizeof(buf), "%18s", r->variant.c_str());
            os << buf;
        }
        os << '\n';
        for (std::size_t qi = 0; qi < report.q_grid.size(); ++qi) {
            os << num(report.q_grid[qi]);
            for (const VariantResult* r : rows) os << "        " << num(r->hurst.h[qi]);
            os << '\n';
        }
        os << "   delta_h";
        for (const VariantResult* r : rows) os << "        " << num(r->delta_h_full);
        os << "\n\n";
    }

    os << "multifractality degree\n";
    os << "  method   variant              delta_h   delta_alpha\n";
    for (const VariantResult& r : report.results) {
        std::snprintf(buf, sizeof(buf), "  %-8s %-20s %8.4f    %8.4f\n", method_name(r.method),
                      r.variant.c_str(), r.delta_h_full, r.delta_alpha);
        os << buf;
    }
    for (const VariantResult& r : report.results) {
        if (r.flagged.empty()) continue;
        os << "  note: " << method_name(r.method) << "/" << r.variant << " has "
           << r.flagged.size() << " flagged (q, s) cells excluded from fits\n";
    }
}

}  // namespace mfdfa
