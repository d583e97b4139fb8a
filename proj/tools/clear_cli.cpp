// clear-cli: command-line front end for the CLEAR modeling library.
//
// Subcommands: compute, link, fit, breakeven, surface, select.
// Exit codes: 0 success, 2 input or parse error, 3 breakeven found no
// crossing (the result is still printed). Output is deterministic for
// identical arguments and input files.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clear/clear.hpp"

namespace {

using clear::format_double;

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw clear::Error("cannot open file '" + path + "'");
    return nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
}

clear::WeightVector parse_weights(const std::string& text) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string cell =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        double v = 0.0;
        if (!clear::parse_double(cell, v)) {
            throw clear::InvalidParams("weights: bad number '" + cell + "' in '" + text + "'");
        }
        parts.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (parts.size() != 5) {
        throw clear::InvalidParams("weights: expected 5 comma-separated values wC,wL,wE,wA,wR");
    }
    clear::WeightVector w{parts[0], parts[1], parts[2], parts[3], parts[4]};
    w.validate();
    return w;
}

struct RangeSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log = false;
};

// min:max:count with an optional "log" suffix on the count, e.g. 1e-6:1:200log
RangeSpec parse_range(const std::string& text) {
    const std::size_t c1 = text.find(':');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw clear::InvalidRange("range '" + text + "': expected min:max:count[log]");
    }
    RangeSpec range;
    std::string count_part = text.substr(c2 + 1);
    if (count_part.size() >= 3 && count_part.substr(count_part.size() - 3) == "log") {
        range.log = true;
        count_part = count_part.substr(0, count_part.size() - 3);
    }
    std::int64_t count = 0;
    if (!clear::parse_double(text.substr(0, c1), range.min) ||
        !clear::parse_double(text.substr(c1 + 1, c2 - c1 - 1), range.max) ||
        !clear::parse_int64(count_part, count) || count < 1) {
        throw clear::InvalidRange("range '" + text + "': expected min:max:count[log]");
    }
    range.count = static_cast<int>(count);
    if (range.count == 1) {
        if (range.min != range.max) {
            throw clear::InvalidRange("range '" + text + "': count 1 needs min == max");
        }
    } else if (!(range.min < range.max)) {
        throw clear::InvalidRange("range '" + text + "': min must be < max");
    }
    return range;
}

std::vector<double> linear_points(const RangeSpec& range) {
    std::vector<double> points(static_cast<std::size_t>(range.count));
    if (range.count == 1) {
        points[0] = range.min;
        return points;
    }
    const double step = (range.max - range.min) / (range.count - 1);
    for (int i = 0; i < range.count; ++i) points[static_cast<std::size_t>(i)] = range.min + step * i;
    points.back() = range.max;
    return points;
}

clear::LengthRange to_length_range(const RangeSpec& range) {
    clear::LengthRange lengths;
    lengths.min_m = range.min;
    lengths.max_m = range.max;
    lengths.n_points = static_cast<std::size_t>(range.count);
    lengths.validate();
    return lengths;
}

// label:x:y, splitting from the right so labels may contain colons
clear::PlotSpec::Annotation parse_annotation(const std::string& text) {
    const std::size_t cy = text.rfind(':');
    const std::size_t cx = cy == std::string::npos ? std::string::npos : text.rfind(':', cy - 1);
    clear::PlotSpec::Annotation a;
    if (cy == std::string::npos || cx == std::string::npos || cx == 0 ||
        !clear::parse_double(text.substr(cx + 1, cy - cx - 1), a.x) ||
        !clear::parse_double(text.substr(cy + 1), a.y)) {
        throw clear::InvalidParams("annotation '" + text + "': expected label:x:y");
    }
    a.label = text.substr(0, cx);
    return a;
}

std::ofstream open_sink(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw clear::Error("cannot open output file '" + path + "'");
    return out;
}

const clear::TechnologyParams& pick_tech(const clear::TechnologyPair& pair,
                                         const std::string& name) {
    if (name == "electrical") return pair.electrical;
    if (name == "hybrid" || name == "hybrid_photonic_plasmonic") return pair.hybrid;
    throw clear::InvalidParams("unknown technology '" + name +
                               "' (expected electrical or hybrid)");
}

void print_fom(const clear::FomValue& fom) {
    std::cout << "value=" << format_double(fom.value) << "\n";
    std::cout << "level=" << clear::to_string(fom.level) << "\n";
    std::cout << "unit=" << fom.unit_signature << "\n";
}

struct ComputeArgs {
    std::string factors_path;
    std::string makimoto_path;
    std::string weights;
    std::string level;
};

int run_compute(const ComputeArgs& args) {
    if (args.factors_path.empty() == args.makimoto_path.empty()) {
        throw clear::InvalidParams("compute: pass exactly one of --factors or --makimoto");
    }
    if (!args.makimoto_path.empty()) {
        if (!args.weights.empty()) {
            throw clear::InvalidParams("compute: --weights does not apply to --makimoto");
        }
        const auto factors = load_json(args.makimoto_path).get<clear::MakimotoFactors>();
        print_fom(clear::compute_makimoto(factors));
        return 0;
    }
    const auto factors = load_json(args.factors_path).get<clear::ClearFactors>();
    const clear::WeightVector weights =
        args.weights.empty() ? clear::WeightVector{} : parse_weights(args.weights);
    const clear::HierarchyLevel level =
        args.level.empty() ? clear::level_for_amount(factors.amount.dimension)
                           : clear::hierarchy_from_string(args.level);
    print_fom(clear::compute_clear(factors, weights, level));
    return 0;
}

struct LinkArgs {
    std::string params_path;
    std::string tech;
    double year = 0.0;
    double length = 0.0;
    std::string weights;
};

int run_link(const LinkArgs& args) {
    const clear::TechnologyPair pair = clear::load_params_file(args.params_path);
    const clear::TechnologyParams& tech = pick_tech(pair, args.tech);
    const clear::WeightVector weights =
        args.weights.empty() ? clear::WeightVector{} : parse_weights(args.weights);
    const clear::ClearFactors factors = clear::link_factors(tech, args.length, args.year);
    const clear::FomValue fom =
        clear::compute_clear(factors, weights, clear::HierarchyLevel::link);
    std::cout << "tech=" << tech.label << "\n";
    std::cout << "capability_bps=" << format_double(factors.capability_bps) << "\n";
    std::cout << "latency_s=" << format_double(factors.latency_s) << "\n";
    std::cout << "energy_j_per_bit=" << format_double(factors.energy_j_per_bit) << "\n";
    std::cout << "amount_value=" << format_double(factors.amount.value) << "\n";
    std::cout << "amount_dim=" << clear::to_string(factors.amount.dimension) << "\n";
    std::cout << "resistance_usd=" << format_double(factors.resistance_usd) << "\n";
    print_fom(fom);
    return 0;
}

struct FitArgs {
    std::string input_path;
    std::string fom = "component_count";
    std::string weights;
    std::string svg_path;
    std::vector<std::string> annotations;
    bool deviation = false;
};

int run_fit(const FitArgs& args) {
    std::ifstream in(args.input_path);
    if (!in) throw clear::Error("cannot open file '" + args.input_path + "'");
    const clear::Dataset data = clear::ingest_csv(in);
    const clear::FomKind kind = clear::fom_kind_from_string(args.fom);
    const clear::WeightVector weights =
        args.weights.empty() ? clear::WeightVector{} : parse_weights(args.weights);
    const clear::FomSeries series = clear::fom_series(data, kind, weights);
    const clear::TrendFit fit = clear::fit_trend(series.points);

    std::cout << "fom=" << clear::to_string(kind) << "\n";
    std::cout << "n_points=" << clear::format_int(fit.n_points) << "\n";
    std::cout << "skipped_records=" << clear::format_int(series.skipped_records) << "\n";
    std::cout << "slope_log2_per_year=" << format_double(fit.slope_log2_per_year) << "\n";
    std::cout << "doubling_time_months="
              << (fit.doubling_time_months ? format_double(*fit.doubling_time_months) : "none")
              << "\n";
    std::cout << "r_squared=" << format_double(fit.r_squared) << "\n";
    std::cout << "year_min=" << format_double(fit.year_min) << "\n";
    std::cout << "year_max=" << format_double(fit.year_max) << "\n";

    if (args.deviation) {
        const clear::DeviationReport report =
            clear::detect_deviation(series.points, clear::DeviationReport{});
        std::cout << "deviation_year="
                  << (report.deviation_year ? format_double(*report.deviation_year) : "none")
                  << "\n";
    }
    if (!args.svg_path.empty()) {
        clear::PlotSpec spec;
        spec.title = std::string(clear::to_string(kind)) + " trend";
        spec.x_label = "year";
        spec.y_label = std::string(clear::to_string(kind));
        spec.y_log = true;
        for (const std::string& text : args.annotations) {
            spec.annotations.push_back(parse_annotation(text));
        }
        std::ofstream svg = open_sink(args.svg_path);
        const std::size_t bytes = clear::render_trend_svg(series.points, fit, spec, svg);
        std::cout << "svg_bytes=" << clear::format_int(bytes) << "\n";
    }
    return 0;
}

struct BreakevenArgs {
    std::string params_path;
    double year = 0.0;
    std::string range = "1e-6:1:200log";
    double rel_tol = 1e-3;
    std::string weights;
};

int run_breakeven(const BreakevenArgs& args) {
    const clear::TechnologyPair pair = clear::load_params_file(args.params_path);
    const clear::WeightVector weights =
        args.weights.empty() ? clear::WeightVector{} : parse_weights(args.weights);
    const clear::LengthRange range = to_length_range(parse_range(args.range));
    const auto eval_for = [&](const clear::TechnologyParams& tech) {
        return [&tech, &weights, year = args.year](double length) {
            return clear::link_clear(tech, length, year, weights).value;
        };
    };
    const clear::CrossingResult result = clear::break_even_length(
        eval_for(pair.electrical), eval_for(pair.hybrid), range, args.rel_tol);
    std::cout << "year=" << format_double(args.year) << "\n";
    if (result.has_crossing()) {
        std::cout << "crossing_length_m=" << format_double(*result.crossing_length_m) << "\n";
        return 0;
    }
    std::cout << "crossing=none\n";
    std::cout << "dominant="
              << (result.dominant_label == "a" ? pair.electrical.label : pair.hybrid.label)
              << "\n";
    return 3;
}

struct SurfaceArgs {
    std::string params_path;
    std::string years;
    std::string lengths = "1e-6:1:200log";
    std::string weights;
    std::string out_path;
    std::string crossing_path;
    std::string svg_path;
    std::vector<std::string> annotations;
};

int run_surface(const SurfaceArgs& args) {
    const clear::TechnologyPair pair = clear::load_params_file(args.params_path);
    const clear::WeightVector weights =
        args.weights.empty() ? clear::WeightVector{} : parse_weights(args.weights);
    const RangeSpec year_range = parse_range(args.years);
    if (year_range.log) throw clear::InvalidRange("years range must be linear");
    const std::vector<double> years = linear_points(year_range);
    const clear::LengthRange lengths = to_length_range(parse_range(args.lengths));

    const clear::SurfaceGrid grid =
        clear::surface(pair.electrical, pair.hybrid, years, lengths, weights);

    std::ofstream out = open_sink(args.out_path);
    const std::size_t rows = clear::emit_grid_csv(grid, out);
    std::cout << "rows=" << clear::format_int(rows) << "\n";

    std::size_t crossings = 0;
    for (const auto& [year, crossing] : grid.crossing_curve) {
        (void)year;
        if (crossing.has_crossing()) ++crossings;
    }
    std::cout << "crossings=" << clear::format_int(crossings) << "\n";

    if (!args.crossing_path.empty()) {
        std::ofstream crossing_out = open_sink(args.crossing_path);
        clear::emit_crossing_csv(grid.crossing_curve, crossing_out);
    }
    if (!args.svg_path.empty()) {
        clear::PlotSpec spec;
        spec.title = grid.label_a + " vs " + grid.label_b;
        spec.x_label = "year";
        spec.y_label = "length_m";
        spec.y_log = true;
        for (const std::string& text : args.annotations) {
            spec.annotations.push_back(parse_annotation(text));
        }
        std::ofstream svg = open_sink(args.svg_path);
        const std::size_t bytes = clear::render_surface_svg(grid, spec, svg);
        std::cout << "svg_bytes=" << clear::format_int(bytes) << "\n";
    }
    return 0;
}

struct SelectArgs {
    std::string options_path;
    std::string context_path;
    std::string policy_path;
};

int run_select(const SelectArgs& args) {
    const auto options = clear::parse_options(load_json(args.options_path));
    const auto ctx = load_json(args.context_path).get<clear::OperatingContext>();
    clear::WeightPolicy policy;
    if (!args.policy_path.empty()) {
        policy = load_json(args.policy_path).get<clear::WeightPolicy>();
    }
    const clear::SelectionResult result = clear::select_technology(options, ctx, policy);
    std::cout << clear::format_trace(result);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CLEAR figure-of-merit calculator and trend analyzer"};
    app.require_subcommand(1);

    ComputeArgs compute_args;
    CLI::App* compute = app.add_subcommand(
        "compute", "Evaluate a CLEAR or Makimoto figure of merit from a factors file");
    compute->add_option("--factors", compute_args.factors_path,
                        "JSON file with CLEAR factors (capability_bps, latency_s, ...)");
    compute->add_option("--makimoto", compute_args.makimoto_path,
                        "JSON file with Makimoto factors (mips, size_m3, cost_usd, power_w)");
    compute->add_option("--weights", compute_args.weights,
                        "Weight exponents as wC,wL,wE,wA,wR (default all 1)");
    compute->add_option("--level", compute_args.level,
                        "Hierarchy level: device, link, network, or system "
                        "(default inferred from amount_dim)");

    LinkArgs link_args;
    CLI::App* link = app.add_subcommand(
        "link", "Evaluate one technology's link-level CLEAR factors at (year, length)");
    link->add_option("--params", link_args.params_path, "Technology parameter JSON file")
        ->required();
    link->add_option("--tech", link_args.tech, "Technology: electrical or hybrid")->required();
    link->add_option("--year", link_args.year, "Calendar year")->required();
    link->add_option("--length", link_args.length, "Link length in meters")->required();
    link->add_option("--weights", link_args.weights, "Weight exponents wC,wL,wE,wA,wR");

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand(
        "fit", "Fit a log-linear trend to a historical records CSV");
    fit->add_option("--input", fit_args.input_path, "Historical records CSV file")->required();
    fit->add_option("--fom", fit_args.fom,
                    "Figure of merit: component_count, makimoto, or clear")
        ->default_str(fit_args.fom);
    fit->add_option("--weights", fit_args.weights, "Weight exponents for --fom clear");
    fit->add_flag("--deviation", fit_args.deviation,
                  "Also report the deviation year from the 2x/year reference");
    fit->add_option("--svg", fit_args.svg_path, "Write a scatter + fit line SVG chart here");
    fit->add_option("--annotate", fit_args.annotations,
                    "Annotation marker label:x:y (repeatable)");

    BreakevenArgs breakeven_args;
    CLI::App* breakeven = app.add_subcommand(
        "breakeven", "Find the electrical vs hybrid break-even length for a year");
    breakeven->add_option("--params", breakeven_args.params_path, "Technology parameter JSON file")
        ->required();
    breakeven->add_option("--year", breakeven_args.year, "Calendar year")->required();
    breakeven->add_option("--range", breakeven_args.range,
                          "Length range min:max:count[log] (log-spaced; default 1e-6:1:200log)")
        ->default_str(breakeven_args.range);
    breakeven->add_option("--rel-tol", breakeven_args.rel_tol,
                          "Relative bracket tolerance in (0, 0.1]")
        ->default_str(format_double(breakeven_args.rel_tol));
    breakeven->add_option("--weights", breakeven_args.weights, "Weight exponents wC,wL,wE,wA,wR");

    SurfaceArgs surface_args;
    CLI::App* surface = app.add_subcommand(
        "surface", "Evaluate the year x length CLEAR surface for both technologies");
    surface->add_option("--params", surface_args.params_path, "Technology parameter JSON file")
        ->required();
    surface->add_option("--years", surface_args.years, "Year range min:max:count (linear)")
        ->required();
    surface->add_option("--lengths", surface_args.lengths,
                        "Length range min:max:count[log] (log-spaced; default 1e-6:1:200log)")
        ->default_str(surface_args.lengths);
    surface->add_option("--weights", surface_args.weights, "Weight exponents wC,wL,wE,wA,wR");
    surface->add_option("--out", surface_args.out_path,
                        "Write the long-format grid CSV here (year,length_m,clear_a,clear_b)")
        ->required();
    surface->add_option("--crossing-out", surface_args.crossing_path,
                        "Write the per-year crossing CSV here (year,crossing_length_m)");
    surface->add_option("--svg", surface_args.svg_path, "Write a dominance surface SVG here");
    surface->add_option("--annotate", surface_args.annotations,
                        "Annotation marker label:x:y (repeatable)");

    SelectArgs select_args;
    CLI::App* select = app.add_subcommand(
        "select", "Pick the best technology option for an operating context");
    select->add_option("--options", select_args.options_path,
                       "JSON array of {label, factors} options")
        ->required();
    select->add_option("--context", select_args.context_path,
                       "Operating context JSON (battery_fraction, load_fraction, ...)")
        ->required();
    select->add_option("--policy", select_args.policy_path,
                       "Weight policy JSON (base, energy_gain, amount_gain, latency_gain)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed()) return run_compute(compute_args);
        if (link->parsed()) return run_link(link_args);
        if (fit->parsed()) return run_fit(fit_args);
        if (breakeven->parsed()) return run_breakeven(breakeven_args);
        if (surface->parsed()) return run_surface(surface_args);
        if (select->parsed()) return run_select(select_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
