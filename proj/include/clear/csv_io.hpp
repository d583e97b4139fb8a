#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "clear/breakeven.hpp"
#include "clear/errors.hpp"
#include "clear/textutil.hpp"

// Long-format CSV for value surfaces and the companion crossing-curve file.
// Numbers are written in shortest round-trip form, so emit -> parse -> emit
// is byte-stable and the matrices survive bit-for-bit.

namespace clear {

inline constexpr std::string_view k_grid_csv_header = "year,length_m,clear_a,clear_b";
inline constexpr std::string_view k_crossing_csv_header = "year,crossing_length_m";

// One row per (year, length) cell, year-major. Returns the data row count.
inline std::size_t emit_grid_csv(const SurfaceGrid& grid, std::ostream& out) {
    out << k_grid_csv_header << '\n';
    std::size_t rows = 0;
    for (std::size_t yi = 0; yi < grid.years.size(); ++yi) {
        for (std::size_t li = 0; li < grid.lengths.size(); ++li) {
            out << format_double(grid.years[yi]) << ',' << format_double(grid.lengths[li]) << ','
                << format_double(grid.values_a[yi][li]) << ',' << format_double(grid.values_b[yi][li])
                << '\n';
            ++rows;
        }
    }
    if (!out) throw SinkWriteError("grid CSV write failed");
    return rows;
}

// Rebuilds a surface (axes and value matrices, no crossing curve) from the
// long format. Rows must cover a full year x length rectangle in emit order.
inline SurfaceGrid parse_grid_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw MalformedHeader("empty input, expected grid CSV header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != k_grid_csv_header) {
        throw MalformedHeader("expected header '" + std::string(k_grid_csv_header) + "', got '" +
                              line + "'");
    }
    SurfaceGrid grid;
    std::vector<std::string> cells;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!split_csv_line(line, cells) || cells.size() != 4) {
            throw MalformedRow(line_no, "row", "expected 4 columns");
        }
        double year = 0.0, length = 0.0, va = 0.0, vb = 0.0;
        if (!parse_double(cells[0], year)) throw MalformedRow(line_no, "year", "not a number");
        if (!parse_double(cells[1], length)) throw MalformedRow(line_no, "length_m", "not a number");
        if (!parse_double(cells[2], va)) throw MalformedRow(line_no, "clear_a", "not a number");
        if (!parse_double(cells[3], vb)) throw MalformedRow(line_no, "clear_b", "not a number");

        if (grid.years.empty() || grid.years.back() != year) {
            grid.years.push_back(year);
            grid.values_a.emplace_back();
            grid.values_b.emplace_back();
        }
        if (grid.years.size() == 1) {
            grid.lengths.push_back(length);
        } else {
            const std::size_t col = grid.values_a.back().size();
            if (col >= grid.lengths.size() || grid.lengths[col] != length) {
                throw MalformedRow(line_no, "length_m", "rows do not form a rectangular grid");
            }
        }
        grid.values_a.back().push_back(va);
        grid.values_b.back().push_back(vb);
    }
    if (grid.years.empty()) throw EmptyDataset("grid CSV has no data rows");
    for (const auto& row : grid.values_a) {
        if (row.size() != grid.lengths.size()) {
            throw EmptyDataset("grid CSV rows do not form a rectangular grid");
        }
    }
    return grid;
}

// Empty cell when a year has no crossing in range.
inline std::size_t emit_crossing_csv(const std::vector<std::pair<double, CrossingResult>>& curve,
                                     std::ostream& out) {
    out << k_crossing_csv_header << '\n';
    std::size_t rows = 0;
    for (const auto& [year, crossing] : curve) {
        out << format_double(year) << ',';
        if (crossing.has_crossing()) out << format_double(*crossing.crossing_length_m);
        out << '\n';
        ++rows;
    }
    if (!out) throw SinkWriteError("crossing CSV write failed");
    return rows;
}

}  // namespace clear
