#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clear/errors.hpp"
#include "clear/models.hpp"

// Finds the link length at which two technologies' figures of merit cross for
// a given year, and fills the year x length value surface with the per-year
// crossing curve attached.

namespace clear {

struct LengthRange {
    double min_m = 1e-6;
    double max_m = 1.0;
    int n_points = 200;  // log-spaced

    void validate() const {
        if (!(std::isfinite(min_m) && std::isfinite(max_m) && min_m > 0.0 && min_m < max_m)) {
            throw InvalidRange("length range requires 0 < min < max");
        }
        if (n_points < 2) throw InvalidRange("length range requires n_points >= 2");
    }
};

// Log-spaced grid over [min_m, max_m] with exact endpoints.
inline std::vector<double> log_spaced_lengths(const LengthRange& range) {
    range.validate();
    std::vector<double> lengths(static_cast<std::size_t>(range.n_points));
    const double log_min = std::log(range.min_m);
    const double log_max = std::log(range.max_m);
    const int last = range.n_points - 1;
    for (int i = 0; i <= last; ++i) {
        lengths[static_cast<std::size_t>(i)] =
            std::exp(log_min + (log_max - log_min) * static_cast<double>(i) / last);
    }
    lengths.front() = range.min_m;
    lengths.back() = range.max_m;
    return lengths;
}

struct CrossingResult {
    std::optional<double> crossing_length_m;
    std::string dominant_label;  // set when there is no crossing

    bool has_crossing() const { return crossing_length_m.has_value(); }
};

using LengthEvaluator = std::function<double(double)>;

namespace detail {

inline double checked_log_ratio(const LengthEvaluator& eval_a, const LengthEvaluator& eval_b,
                                double length) {
    const double a = eval_a(length);
    const double b = eval_b(length);
    if (!(std::isfinite(a) && a > 0.0) || !(std::isfinite(b) && b > 0.0)) {
        throw NonPositiveEvaluation("evaluator returned a non-positive value at length " +
                                    format_double(length));
    }
    return std::log(a / b);
}

}  // namespace detail

// Bisection on the sign of log(eval_a/eval_b) in log-length space. An 8-point
// log-spaced pre-scan locates the smallest-length sign change; a grid point
// with |log ratio| < 1e-12 counts as a crossing right there. With no sign
// change anywhere the dominant side is reported instead. Terminates when
// bracket width / midpoint < rel_tol.
inline CrossingResult break_even_length(const LengthEvaluator& eval_a,
                                        const LengthEvaluator& eval_b, const LengthRange& range,
                                        double rel_tol, const std::string& label_a = "a",
                                        const std::string& label_b = "b") {
    range.validate();
    if (!(std::isfinite(rel_tol) && rel_tol > 0.0 && rel_tol <= 0.1)) {
        throw InvalidRange("rel_tol must be in (0, 0.1], got " + format_double(rel_tol));
    }

    constexpr int kPreScanPoints = 8;
    constexpr double kEqualityEps = 1e-12;
    double points[kPreScanPoints];
    double ratios[kPreScanPoints];
    const double log_min = std::log(range.min_m);
    const double log_max = std::log(range.max_m);
    for (int i = 0; i < kPreScanPoints; ++i) {
        points[i] = std::exp(log_min + (log_max - log_min) * i / (kPreScanPoints - 1));
    }
    points[0] = range.min_m;
    points[kPreScanPoints - 1] = range.max_m;

    double lo = 0.0, hi = 0.0, f_lo = 0.0;
    bool bracketed = false;
    for (int i = 0; i < kPreScanPoints; ++i) {
        ratios[i] = detail::checked_log_ratio(eval_a, eval_b, points[i]);
        if (std::fabs(ratios[i]) < kEqualityEps) {
            return CrossingResult{points[i], {}};
        }
        if (i > 0 && std::signbit(ratios[i]) != std::signbit(ratios[i - 1])) {
            lo = points[i - 1];
            hi = points[i];
            f_lo = ratios[i - 1];
            bracketed = true;
            break;
        }
    }
    if (!bracketed) {
        return CrossingResult{std::nullopt, ratios[0] > 0.0 ? label_a : label_b};
    }

    double mid = std::sqrt(lo * hi);
    while ((hi - lo) / mid > rel_tol) {
        const double f_mid = detail::checked_log_ratio(eval_a, eval_b, mid);
        if (std::fabs(f_mid) < kEqualityEps) return CrossingResult{mid, {}};
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        mid = std::sqrt(lo * hi);
    }
    return CrossingResult{mid, {}};
}

// Per-year break-even length between two link technologies.
inline std::vector<std::pair<double, CrossingResult>> crossing_curve(
    const TechnologyParams& params_a, const TechnologyParams& params_b,
    const std::vector<double>& years, const LengthRange& range, const WeightVector& weights,
    double rel_tol = 1e-3) {
    if (years.empty()) throw InvalidRange("crossing_curve: years must be non-empty");
    for (std::size_t i = 1; i < years.size(); ++i) {
        if (!(years[i] > years[i - 1])) {
            throw InvalidRange("crossing_curve: years must be strictly ascending");
        }
    }
    std::vector<std::pair<double, CrossingResult>> curve;
    curve.reserve(years.size());
    for (double year : years) {
        auto eval_a = [&params_a, year, &weights](double length) {
            return link_clear(params_a, length, year, weights).value;
        };
        auto eval_b = [&params_b, year, &weights](double length) {
            return link_clear(params_b, length, year, weights).value;
        };
        curve.emplace_back(year, break_even_length(eval_a, eval_b, range, rel_tol, params_a.label,
                                                   params_b.label));
    }
    return curve;
}

struct SurfaceGrid {
    std::string label_a;
    std::string label_b;
    std::vector<double> years;    // ascending
    std::vector<double> lengths;  // ascending, log-spaced
    std::vector<std::vector<double>> values_a;  // [year][length]
    std::vector<std::vector<double>> values_b;
    std::vector<std::pair<double, CrossingResult>> crossing_curve;
};

// Evaluates both technologies at every grid point. Cells are pure function
// evaluations, so the result is identical to calling link_clear directly at
// each coordinate.
inline SurfaceGrid surface(const TechnologyParams& params_a, const TechnologyParams& params_b,
                           const std::vector<double>& years, const LengthRange& range,
                           const WeightVector& weights, double rel_tol = 1e-3) {
    SurfaceGrid grid;
    grid.label_a = params_a.label;
    grid.label_b = params_b.label;
    grid.years = years;
    grid.lengths = log_spaced_lengths(range);
    grid.values_a.reserve(years.size());
    grid.values_b.reserve(years.size());
    grid.crossing_curve = crossing_curve(params_a, params_b, years, range, weights, rel_tol);
    for (double year : years) {
        std::vector<double> row_a, row_b;
        row_a.reserve(grid.lengths.size());
        row_b.reserve(grid.lengths.size());
        for (double length : grid.lengths) {
            row_a.push_back(link_clear(params_a, length, year, weights).value);
            row_b.push_back(link_clear(params_b, length, year, weights).value);
        }
        grid.values_a.push_back(std::move(row_a));
        grid.values_b.push_back(std::move(row_b));
    }
    return grid;
}

}  // namespace clear
