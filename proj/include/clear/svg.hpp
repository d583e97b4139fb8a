#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "clear/breakeven.hpp"
#include "clear/errors.hpp"
#include "clear/textutil.hpp"
#include "clear/trend.hpp"

// Dependency-free static SVG output. Two chart kinds: a scatter-plus-fit
// trend chart and a year x length surface chart with dominance cells and the
// crossing polyline. Output is deterministic for identical inputs: no
// timestamps, no randomness, numbers in shortest round-trip form.
//
// Element vocabulary is deliberately narrow so charts stay testable:
// data markers are <circle>, the fitted trend is the only <line>, axes and
// ticks are <path>, surface cells are <rect>, the crossing curve is a
// <polyline>, annotations are <polygon> diamonds plus <text>.

namespace clear {

struct PlotSpec {
    int width_px = 880;
    int height_px = 560;
    std::string title;
    std::string x_label;
    std::string y_label;
    bool x_log = false;
    bool y_log = false;

    struct Annotation {
        std::string label;
        double x = 0.0;
        double y = 0.0;
    };
    std::vector<Annotation> annotations;

    void validate() const {
        if (width_px <= 0 || height_px <= 0) {
            throw InvalidParams("plot: width and height must be positive");
        }
    }
};

namespace svg_detail {

constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 44.0;
constexpr double kMarginBottom = 56.0;

// Two decimal places is below SVG rendering resolution and keeps files small.
inline std::string px(double v) {
    return format_double(std::round(v * 100.0) / 100.0);
}

struct Axis {
    double data_min = 0.0;
    double data_max = 1.0;
    bool log = false;
    double pix_min = 0.0;  // pixel coordinate of data_min
    double pix_max = 1.0;

    double transform(double v) const { return log ? std::log10(v) : v; }

    double to_pixel(double v) const {
        const double t0 = transform(data_min);
        const double t1 = transform(data_max);
        const double t = transform(v);
        if (t1 == t0) return (pix_min + pix_max) / 2.0;
        return pix_min + (t - t0) / (t1 - t0) * (pix_max - pix_min);
    }
};

struct Tick {
    double value;
    std::string label;
};

inline std::vector<Tick> linear_ticks(double lo, double hi) {
    std::vector<Tick> ticks;
    if (!(hi > lo)) {
        ticks.push_back({lo, format_double(lo)});
        return ticks;
    }
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    }
    double tick = std::ceil(lo / step) * step;
    while (tick <= hi + step * 1e-9) {
        // snap values like 2016.0000000001 back onto the step grid
        const double snapped = std::round(tick / step) * step;
        ticks.push_back({snapped, format_double(snapped)});
        tick += step;
    }
    return ticks;
}

inline std::string power_of_ten_label(int exponent) {
    return "1e" + std::to_string(exponent);
}

inline std::vector<Tick> log_ticks(double lo, double hi) {
    std::vector<Tick> ticks;
    const int e_lo = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
    const int e_hi = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
    const int decades = std::max(0, e_hi - e_lo);
    const int step = std::max(1, (decades + 11) / 12);
    for (int e = e_lo; e <= e_hi; e += step) {
        ticks.push_back({std::pow(10.0, e), power_of_ten_label(e)});
    }
    if (ticks.empty()) ticks.push_back({lo, format_double(lo)});
    return ticks;
}

inline std::vector<Tick> ticks_for(const Axis& axis) {
    return axis.log ? log_ticks(axis.data_min, axis.data_max) : linear_ticks(axis.data_min, axis.data_max);
}

inline void open_document(std::string& out, const PlotSpec& spec) {
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width_px) +
           "\" height=\"" + std::to_string(spec.height_px) + "\" viewBox=\"0 0 " +
           std::to_string(spec.width_px) + " " + std::to_string(spec.height_px) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width_px) + "\" height=\"" +
           std::to_string(spec.height_px) + "\" fill=\"#ffffff\"/>\n";
    if (!spec.title.empty()) {
        out += "<text x=\"" + px(spec.width_px / 2.0) +
               "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
               xml_escape(spec.title) + "</text>\n";
    }
}

inline void draw_axes(std::string& out, const PlotSpec& spec, const Axis& x, const Axis& y) {
    const double left = kMarginLeft;
    const double right = spec.width_px - kMarginRight;
    const double top = kMarginTop;
    const double bottom = spec.height_px - kMarginBottom;

    out += "<path d=\"M " + px(left) + " " + px(top) + " L " + px(left) + " " + px(bottom) + " L " +
           px(right) + " " + px(bottom) + "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    for (const Tick& tick : ticks_for(x)) {
        if (tick.value < x.data_min - 1e-12 || tick.value > x.data_max * (x.log ? 1.0000001 : 1.0) + 1e-12) continue;
        const double tx = x.to_pixel(tick.value);
        out += "<path d=\"M " + px(tx) + " " + px(bottom) + " L " + px(tx) + " " + px(bottom + 5) +
               "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + px(tx) + "\" y=\"" + px(bottom + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               xml_escape(tick.label) + "</text>\n";
    }
    for (const Tick& tick : ticks_for(y)) {
        if (tick.value < y.data_min - 1e-12 || tick.value > y.data_max * (y.log ? 1.0000001 : 1.0) + 1e-12) continue;
        const double ty = y.to_pixel(tick.value);
        out += "<path d=\"M " + px(left - 5) + " " + px(ty) + " L " + px(left) + " " + px(ty) +
               "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + px(left - 8) + "\" y=\"" + px(ty + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               xml_escape(tick.label) + "</text>\n";
    }
    if (!spec.x_label.empty()) {
        out += "<text x=\"" + px((left + right) / 2.0) + "\" y=\"" + px(spec.height_px - 12.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
               xml_escape(spec.x_label) + "</text>\n";
    }
    if (!spec.y_label.empty()) {
        out += "<text x=\"18\" y=\"" + px((top + bottom) / 2.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
               px((top + bottom) / 2.0) + ")\">" + xml_escape(spec.y_label) + "</text>\n";
    }
}

inline void draw_annotations(std::string& out, const PlotSpec& spec, const Axis& x, const Axis& y) {
    for (const PlotSpec::Annotation& a : spec.annotations) {
        const double ax = x.to_pixel(a.x);
        const double ay = y.to_pixel(a.y);
        out += "<polygon points=\"" + px(ax) + "," + px(ay - 6) + " " + px(ax + 6) + "," + px(ay) +
               " " + px(ax) + "," + px(ay + 6) + " " + px(ax - 6) + "," + px(ay) +
               "\" fill=\"#e6b117\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + px(ax + 9) + "\" y=\"" + px(ay - 6) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(a.label) + "</text>\n";
    }
}

inline std::size_t write_all(const std::string& doc, std::ostream& out) {
    out.write(doc.data(), static_cast<std::streamsize>(doc.size()));
    if (!out) throw SinkWriteError("SVG write failed");
    return doc.size();
}

}  // namespace svg_detail

// Scatter chart of a (year, value) series with an optional fitted trend line.
// Returns the byte count written.
inline std::size_t render_trend_svg(const std::vector<std::pair<double, double>>& series,
                                    const std::optional<TrendFit>& fit, const PlotSpec& spec,
                                    std::ostream& out) {
    spec.validate();
    if (series.empty()) throw EmptyData("render_trend_svg: empty series");

    double x_min = series.front().first, x_max = x_min;
    double y_min = series.front().second, y_max = y_min;
    for (const auto& [t, v] : series) {
        x_min = std::min(x_min, t);
        x_max = std::max(x_max, t);
        y_min = std::min(y_min, v);
        y_max = std::max(y_max, v);
    }
    if (fit) {
        for (double edge : {extrapolate(*fit, x_min), extrapolate(*fit, x_max)}) {
            y_min = std::min(y_min, edge);
            y_max = std::max(y_max, edge);
        }
    }
    if (spec.y_log && !(y_min > 0.0)) {
        throw EmptyData("render_trend_svg: log scale requires positive values");
    }
    if (x_max == x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if (y_max == y_min) {
        y_min = spec.y_log ? y_min / 2.0 : y_min - 0.5;
        y_max = spec.y_log ? y_max * 2.0 : y_max + 0.5;
    }

    svg_detail::Axis x{x_min, x_max, spec.x_log, svg_detail::kMarginLeft,
                       spec.width_px - svg_detail::kMarginRight};
    svg_detail::Axis y{y_min, y_max, spec.y_log, spec.height_px - svg_detail::kMarginBottom,
                       svg_detail::kMarginTop};

    std::string doc;
    svg_detail::open_document(doc, spec);
    svg_detail::draw_axes(doc, spec, x, y);
    if (fit) {
        doc += "<line class=\"fit\" x1=\"" + svg_detail::px(x.to_pixel(x_min)) + "\" y1=\"" +
               svg_detail::px(y.to_pixel(extrapolate(*fit, x_min))) + "\" x2=\"" +
               svg_detail::px(x.to_pixel(x_max)) + "\" y2=\"" +
               svg_detail::px(y.to_pixel(extrapolate(*fit, x_max))) +
               "\" stroke=\"#2a6fb0\" stroke-width=\"1.5\"/>\n";
    }
    for (const auto& [t, v] : series) {
        doc += "<circle cx=\"" + svg_detail::px(x.to_pixel(t)) + "\" cy=\"" +
               svg_detail::px(y.to_pixel(v)) + "\" r=\"3\" fill=\"#d62728\"/>\n";
    }
    svg_detail::draw_annotations(doc, spec, x, y);
    doc += "</svg>\n";
    return svg_detail::write_all(doc, out);
}

// Surface chart: every grid cell is filled by the dominant technology
// (series a red, series b blue), with opacity stepped by the decade magnitude
// of the value ratio, so equal-ratio regions read as level bands. The
// crossing curve overlays as a single polyline when at least two years cross.
inline std::size_t render_surface_svg(const SurfaceGrid& grid, const PlotSpec& spec,
                                      std::ostream& out) {
    spec.validate();
    if (grid.years.empty() || grid.lengths.empty()) throw EmptyData("render_surface_svg: empty grid");

    svg_detail::Axis x{grid.years.front(), grid.years.back(), false, svg_detail::kMarginLeft,
                       spec.width_px - svg_detail::kMarginRight};
    if (x.data_min == x.data_max) {
        x.data_min -= 0.5;
        x.data_max += 0.5;
    }
    svg_detail::Axis y{grid.lengths.front(), grid.lengths.back(), true,
                       spec.height_px - svg_detail::kMarginBottom, svg_detail::kMarginTop};
    if (y.data_min == y.data_max) {
        y.data_min /= 2.0;
        y.data_max *= 2.0;
    }

    std::string doc;
    svg_detail::open_document(doc, spec);

    // cell edges midway between grid points (log-midway along the length axis)
    auto edges = [](const std::vector<double>& centers, bool log) {
        std::vector<double> e(centers.size() + 1);
        auto mid = [log](double a, double b) { return log ? std::sqrt(a * b) : (a + b) / 2.0; };
        e.front() = centers.front();
        e.back() = centers.back();
        for (std::size_t i = 1; i < centers.size(); ++i) e[i] = mid(centers[i - 1], centers[i]);
        return e;
    };
    const std::vector<double> x_edges = edges(grid.years, false);
    const std::vector<double> y_edges = edges(grid.lengths, true);

    for (std::size_t yi = 0; yi < grid.years.size(); ++yi) {
        for (std::size_t li = 0; li < grid.lengths.size(); ++li) {
            const double va = grid.values_a[yi][li];
            const double vb = grid.values_b[yi][li];
            const bool a_wins = va >= vb;
            const double decades = std::fabs(std::log10(va / vb));
            const int bin = std::min(5, static_cast<int>(decades));
            const double opacity = 0.15 + 0.13 * bin;
            const double px0 = x.to_pixel(x_edges[yi]);
            const double px1 = x.to_pixel(x_edges[yi + 1]);
            const double py0 = y.to_pixel(y_edges[li + 1]);  // smaller length = lower on screen
            const double py1 = y.to_pixel(y_edges[li]);
            doc += "<rect class=\"";
            doc += a_wins ? "cell-a" : "cell-b";
            doc += "\" x=\"" + svg_detail::px(px0) + "\" y=\"" + svg_detail::px(py0) + "\" width=\"" +
                   svg_detail::px(px1 - px0) + "\" height=\"" + svg_detail::px(py1 - py0) +
                   "\" fill=\"";
            doc += a_wins ? "#d62728" : "#1f77b4";
            doc += "\" fill-opacity=\"" + format_double(opacity) + "\"/>\n";
        }
    }

    std::string crossing_points;
    std::size_t crossing_count = 0;
    for (const auto& [year, crossing] : grid.crossing_curve) {
        if (!crossing.has_crossing()) continue;
        if (crossing_count > 0) crossing_points += ' ';
        crossing_points += svg_detail::px(x.to_pixel(year)) + "," +
                           svg_detail::px(y.to_pixel(*crossing.crossing_length_m));
        ++crossing_count;
    }
    if (crossing_count >= 2) {
        doc += "<polyline class=\"crossing\" points=\"" + crossing_points +
               "\" fill=\"none\" stroke=\"#1a1a1a\" stroke-width=\"2\"/>\n";
    }

    svg_detail::draw_axes(doc, spec, x, y);
    svg_detail::draw_annotations(doc, spec, x, y);
    doc += "</svg>\n";
    return svg_detail::write_all(doc, out);
}

}  // namespace clear
