#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "clear/errors.hpp"
#include "clear/fom.hpp"
#include "clear/textutil.hpp"

// Historical machine records, per-record figure-of-merit series, base-2
// log-linear trend fitting, and detection of the year a series falls off a
// reference growth line.

namespace clear {

enum class TechClass { vacuum_tube, transistor, mos, multicore, photonic };

inline std::string_view to_string(TechClass c) {
    switch (c) {
        case TechClass::vacuum_tube: return "vacuum_tube";
        case TechClass::transistor: return "transistor";
        case TechClass::mos: return "mos";
        case TechClass::multicore: return "multicore";
        case TechClass::photonic: return "photonic";
    }
    return "?";
}

inline std::optional<TechClass> tech_class_from_string(std::string_view s) {
    if (s == "vacuum_tube") return TechClass::vacuum_tube;
    if (s == "transistor") return TechClass::transistor;
    if (s == "mos") return TechClass::mos;
    if (s == "multicore") return TechClass::multicore;
    if (s == "photonic") return TechClass::photonic;
    return std::nullopt;
}

// One machine or component observation. Numeric fields other than year are
// optional; absent means the source did not report them.
struct HistoricalRecord {
    double year = 0.0;  // fractional calendar year in [1900, 2100]
    std::string label;
    TechClass tech_class = TechClass::transistor;
    std::optional<std::int64_t> component_count;
    std::optional<double> mips;
    std::optional<double> size_m3;
    std::optional<double> power_w;
    std::optional<double> cost_usd;
    std::optional<double> instruction_length_bits;

    bool operator==(const HistoricalRecord&) const = default;
};

struct Dataset {
    std::vector<HistoricalRecord> records;  // ascending by year

    bool operator==(const Dataset&) const = default;
};

inline constexpr std::string_view k_dataset_csv_header =
    "year,label,tech_class,component_count,mips,size_m3,power_w,cost_usd,instruction_length_bits";

namespace detail {

inline double parse_positive_cell(const std::string& cell, std::size_t line_no,
                                  const char* column) {
    double v = 0.0;
    if (!parse_double(cell, v) || !std::isfinite(v) || v <= 0.0) {
        throw MalformedRow(line_no, column, "expected a positive number, got '" + cell + "'");
    }
    return v;
}

}  // namespace detail

// Reads the documented nine-column CSV. Rows may leave optional cells empty;
// any malformed cell aborts with the line number and column name. Records
// come back sorted ascending by year (stable for equal years).
inline Dataset ingest_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw MalformedHeader("empty input, expected CSV header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != k_dataset_csv_header) {
        throw MalformedHeader("expected header '" + std::string(k_dataset_csv_header) + "', got '" +
                              line + "'");
    }

    Dataset data;
    std::vector<std::string> cells;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!split_csv_line(line, cells)) {
            throw MalformedRow(line_no, "row", "unterminated quoted field");
        }
        if (cells.size() != 9) {
            throw MalformedRow(line_no, "row",
                               "expected 9 columns, got " + std::to_string(cells.size()));
        }
        HistoricalRecord rec;
        if (!parse_double(cells[0], rec.year) || !(rec.year >= 1900.0 && rec.year <= 2100.0)) {
            throw MalformedRow(line_no, "year", "expected a year in [1900, 2100], got '" + cells[0] + "'");
        }
        rec.label = cells[1];
        if (auto cls = tech_class_from_string(cells[2])) {
            rec.tech_class = *cls;
        } else {
            throw MalformedRow(line_no, "tech_class", "unknown class '" + cells[2] + "'");
        }
        if (!cells[3].empty()) {
            std::int64_t count = 0;
            if (!parse_int64(cells[3], count) || count <= 0) {
                throw MalformedRow(line_no, "component_count",
                                   "expected a positive integer, got '" + cells[3] + "'");
            }
            rec.component_count = count;
        }
        if (!cells[4].empty()) rec.mips = detail::parse_positive_cell(cells[4], line_no, "mips");
        if (!cells[5].empty()) rec.size_m3 = detail::parse_positive_cell(cells[5], line_no, "size_m3");
        if (!cells[6].empty()) rec.power_w = detail::parse_positive_cell(cells[6], line_no, "power_w");
        if (!cells[7].empty()) rec.cost_usd = detail::parse_positive_cell(cells[7], line_no, "cost_usd");
        if (!cells[8].empty()) {
            rec.instruction_length_bits =
                detail::parse_positive_cell(cells[8], line_no, "instruction_length_bits");
        }
        data.records.push_back(std::move(rec));
    }
    if (data.records.empty()) throw EmptyDataset("no data rows");
    std::stable_sort(data.records.begin(), data.records.end(),
                     [](const HistoricalRecord& a, const HistoricalRecord& b) { return a.year < b.year; });
    return data;
}

inline void serialize_csv(const Dataset& data, std::ostream& out) {
    out << k_dataset_csv_header << '\n';
    for (const HistoricalRecord& r : data.records) {
        out << format_double(r.year) << ',' << csv_escape(r.label) << ',' << to_string(r.tech_class)
            << ',';
        if (r.component_count) out << format_int(*r.component_count);
        out << ',';
        if (r.mips) out << format_double(*r.mips);
        out << ',';
        if (r.size_m3) out << format_double(*r.size_m3);
        out << ',';
        if (r.power_w) out << format_double(*r.power_w);
        out << ',';
        if (r.cost_usd) out << format_double(*r.cost_usd);
        out << ',';
        if (r.instruction_length_bits) out << format_double(*r.instruction_length_bits);
        out << '\n';
    }
    if (!out) throw SinkWriteError("dataset CSV write failed");
}

enum class FomKind { component_count, makimoto, clear };

inline std::string_view to_string(FomKind kind) {
    switch (kind) {
        case FomKind::component_count: return "component_count";
        case FomKind::makimoto: return "makimoto";
        case FomKind::clear: return "clear";
    }
    return "?";
}

inline FomKind fom_kind_from_string(std::string_view s) {
    if (s == "component_count") return FomKind::component_count;
    if (s == "makimoto") return FomKind::makimoto;
    if (s == "clear") return FomKind::clear;
    throw Error("unknown figure of merit '" + std::string(s) + "'");
}

struct FomSeries {
    std::vector<std::pair<double, double>> points;  // (year, value)
    std::size_t skipped_records = 0;                // lacked a required field
};

// Per-record figure-of-merit values. System-level factors are built as:
// C = mips * 1e6 * instruction_length_bits, L = 1/(mips * 1e6) as the
// per-instruction time proxy, E = power / C, A = size_m3, R = cost_usd.
inline FomSeries fom_series(const Dataset& data, FomKind kind, const WeightVector& weights) {
    FomSeries series;
    for (const HistoricalRecord& r : data.records) {
        switch (kind) {
            case FomKind::component_count:
                if (!r.component_count) {
                    ++series.skipped_records;
                    continue;
                }
                series.points.emplace_back(r.year, static_cast<double>(*r.component_count));
                break;
            case FomKind::makimoto: {
                if (!(r.mips && r.size_m3 && r.cost_usd && r.power_w)) {
                    ++series.skipped_records;
                    continue;
                }
                MakimotoFactors f{*r.mips, *r.size_m3, *r.cost_usd, *r.power_w};
                series.points.emplace_back(r.year, compute_makimoto(f).value);
                break;
            }
            case FomKind::clear: {
                if (!(r.mips && r.instruction_length_bits && r.power_w && r.size_m3 && r.cost_usd)) {
                    ++series.skipped_records;
                    continue;
                }
                const double capability =
                    system_capability(SystemSpec{*r.mips, *r.instruction_length_bits});
                ClearFactors f;
                f.capability_bps = capability;
                f.latency_s = 1.0 / (*r.mips * 1e6);
                f.energy_j_per_bit = *r.power_w / capability;
                f.amount = Amount{*r.size_m3, AmountDimension::volume_m3};
                f.resistance_usd = *r.cost_usd;
                series.points.emplace_back(r.year, compute_clear(f, weights, HierarchyLevel::system).value);
                break;
            }
        }
    }
    if (series.points.empty()) {
        throw NoUsableRecords("no record carries the fields required for " +
                              std::string(to_string(kind)));
    }
    return series;
}

struct TrendFit {
    double slope_log2_per_year = 0.0;
    double intercept_log2 = 0.0;                  // at calendar year 0
    std::optional<double> doubling_time_months;   // 12/slope, only when slope > 0
    double r_squared = 0.0;
    std::size_t n_points = 0;
    double year_min = 0.0;
    double year_max = 0.0;
};

// Ordinary least squares on (year, log2 value). Exact on noiseless geometric
// series; slope reads directly as doublings per year.
inline TrendFit fit_trend(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 2) {
        throw InsufficientPoints("fit_trend needs at least 2 points, got " +
                                 std::to_string(series.size()));
    }
    std::vector<double> t(series.size()), y(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        t[i] = series[i].first;
        if (!(std::isfinite(series[i].second) && series[i].second > 0.0)) {
            throw NonPositiveFactor("fit_trend: value at year " + format_double(t[i]) +
                                    " must be > 0, got " + format_double(series[i].second));
        }
        y[i] = std::log2(series[i].second);
    }
    const double n = static_cast<double>(series.size());
    double t_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        t_mean += t[i];
        y_mean += y[i];
    }
    t_mean /= n;
    y_mean /= n;
    double s_tt = 0.0, s_ty = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        s_tt += (t[i] - t_mean) * (t[i] - t_mean);
        s_ty += (t[i] - t_mean) * (y[i] - y_mean);
    }
    if (s_tt == 0.0) throw DegenerateYears("fit_trend: all points share one year");

    TrendFit fit;
    fit.slope_log2_per_year = s_ty / s_tt;
    fit.intercept_log2 = y_mean - fit.slope_log2_per_year * t_mean;
    if (fit.slope_log2_per_year > 0.0) {
        fit.doubling_time_months = 12.0 / fit.slope_log2_per_year;
    }
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double predicted = fit.slope_log2_per_year * t[i] + fit.intercept_log2;
        ss_res += (y[i] - predicted) * (y[i] - predicted);
        ss_tot += (y[i] - y_mean) * (y[i] - y_mean);
    }
    fit.r_squared = ss_tot == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
    fit.n_points = series.size();
    const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
    fit.year_min = *lo;
    fit.year_max = *hi;
    return fit;
}

// Doubles as the detector configuration and its result: deviation_year is
// filled in by detect_deviation when a deviation exists.
struct DeviationReport {
    double reference_slope_log2_per_year = 1.0;  // 2x per year
    int consecutive_threshold = 3;
    double factor_threshold = 2.0;
    std::optional<double> deviation_year;
};

// Anchors the reference growth line at the first point and reports the year
// of the first point of the earliest run of >= consecutive_threshold points
// falling below the line by more than factor_threshold.
inline DeviationReport detect_deviation(const std::vector<std::pair<double, double>>& series,
                                        const DeviationReport& config) {
    if (!(config.factor_threshold > 1.0) || config.consecutive_threshold < 1) {
        throw InvalidParams("detect_deviation: factor_threshold > 1 and consecutive_threshold >= 1 required");
    }
    if (series.size() < static_cast<std::size_t>(config.consecutive_threshold) + 2) {
        throw InsufficientPoints("detect_deviation needs at least consecutive_threshold + 2 points");
    }
    const double t0 = series.front().first;
    const double v0 = series.front().second;
    if (!(std::isfinite(v0) && v0 > 0.0)) {
        throw NonPositiveFactor("detect_deviation: first value must be > 0");
    }

    DeviationReport report = config;
    report.deviation_year.reset();
    int run = 0;
    std::size_t run_start = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto [t, v] = series[i];
        if (!(std::isfinite(v) && v > 0.0)) {
            throw NonPositiveFactor("detect_deviation: value at year " + format_double(t) +
                                    " must be > 0");
        }
        const double reference = v0 * std::exp2(config.reference_slope_log2_per_year * (t - t0));
        const bool deviating = reference / v > config.factor_threshold;
        if (deviating) {
            if (run == 0) run_start = i;
            ++run;
            if (run >= config.consecutive_threshold) {
                report.deviation_year = series[run_start].first;
                return report;
            }
        } else {
            run = 0;
        }
    }
    return report;
}

// Value of the fitted line at an arbitrary year: 2^(slope*year + intercept).
inline double extrapolate(const TrendFit& fit, double year) {
    if (!(std::isfinite(fit.slope_log2_per_year) && std::isfinite(fit.intercept_log2))) {
        throw InvalidParams("extrapolate: fit is not finite");
    }
    return std::exp2(fit.slope_log2_per_year * year + fit.intercept_log2);
}

}  // namespace clear
