#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clear/errors.hpp"
#include "clear/textutil.hpp"

// Five-factor figure of merit: capability over latency x energy x amount x
// resistance, with per-factor weighting exponents and a hardware hierarchy
// level attached to every value. All quantities are fixed SI units: bits/s,
// seconds, joules/bit, meters^d, USD. No unit conversion happens here.

namespace clear {

enum class HierarchyLevel { device, link, network, system };

enum class AmountDimension { length_m, area_m2, volume_m3 };

inline std::string_view to_string(HierarchyLevel level) {
    switch (level) {
        case HierarchyLevel::device: return "device";
        case HierarchyLevel::link: return "link";
        case HierarchyLevel::network: return "network";
        case HierarchyLevel::system: return "system";
    }
    return "?";
}

inline HierarchyLevel hierarchy_from_string(std::string_view s) {
    if (s == "device") return HierarchyLevel::device;
    if (s == "link") return HierarchyLevel::link;
    if (s == "network") return HierarchyLevel::network;
    if (s == "system") return HierarchyLevel::system;
    throw Error("unknown hierarchy level '" + std::string(s) + "'");
}

inline std::string_view to_string(AmountDimension dim) {
    switch (dim) {
        case AmountDimension::length_m: return "length_m";
        case AmountDimension::area_m2: return "area_m2";
        case AmountDimension::volume_m3: return "volume_m3";
    }
    return "?";
}

inline AmountDimension amount_dimension_from_string(std::string_view s) {
    if (s == "length_m") return AmountDimension::length_m;
    if (s == "area_m2") return AmountDimension::area_m2;
    if (s == "volume_m3") return AmountDimension::volume_m3;
    throw Error("unknown amount dimension '" + std::string(s) + "'");
}

// Devices occupy a scaling length, links and networks a footprint area,
// systems a volume.
inline AmountDimension amount_dimension_for(HierarchyLevel level) {
    switch (level) {
        case HierarchyLevel::device: return AmountDimension::length_m;
        case HierarchyLevel::link: return AmountDimension::area_m2;
        case HierarchyLevel::network: return AmountDimension::area_m2;
        case HierarchyLevel::system: return AmountDimension::volume_m3;
    }
    return AmountDimension::area_m2;
}

namespace detail {

inline bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

inline void require_positive(double v, const char* name) {
    if (!positive_finite(v)) {
        throw NonPositiveFactor(std::string(name) + " must be strictly positive and finite, got " +
                                format_double(v));
    }
}

// Weighting exponent application. The w == 1 branch keeps the unweighted
// value bit-identical to a plain product, whatever libm does with pow.
inline double wpow(double x, double w) { return w == 1.0 ? x : std::pow(x, w); }

}  // namespace detail

struct Amount {
    double value = 0.0;
    AmountDimension dimension = AmountDimension::area_m2;
};

struct ClearFactors {
    double capability_bps = 0.0;   // delivered data rate
    double latency_s = 0.0;        // response / end-to-end delay
    double energy_j_per_bit = 0.0; // energy to move or process one bit
    Amount amount;                 // occupied length, footprint, or volume
    double resistance_usd = 0.0;   // economic resistance (per-unit cost)

    void validate() const {
        detail::require_positive(capability_bps, "capability_bps");
        detail::require_positive(latency_s, "latency_s");
        detail::require_positive(energy_j_per_bit, "energy_j_per_bit");
        detail::require_positive(amount.value, "amount_value");
        detail::require_positive(resistance_usd, "resistance_usd");
    }
};

struct WeightVector {
    double wC = 1.0;
    double wL = 1.0;
    double wE = 1.0;
    double wA = 1.0;
    double wR = 1.0;

    void validate() const {
        for (auto [w, name] : {std::pair{wC, "wC"}, {wL, "wL"}, {wE, "wE"}, {wA, "wA"}, {wR, "wR"}}) {
            if (!std::isfinite(w) || w < 0.0) {
                throw NonPositiveFactor(std::string(name) + " must be finite and >= 0, got " +
                                        format_double(w));
            }
        }
    }
};

inline std::string_view amount_unit_symbol(AmountDimension dim) {
    switch (dim) {
        case AmountDimension::length_m: return "m";
        case AmountDimension::area_m2: return "m2";
        case AmountDimension::volume_m3: return "m3";
    }
    return "?";
}

// Canonical unit string for a weighted five-factor value. Two values may be
// ordered against each other only when these strings (and the levels) match,
// so a CLE^2AR number can never be silently compared with a CLEAR number.
inline std::string clear_unit_signature(HierarchyLevel level, const WeightVector& w) {
    std::string s = "bps^";
    s += format_double(w.wC);
    s += "/(s^";
    s += format_double(w.wL);
    s += "*J/b^";
    s += format_double(w.wE);
    s += "*";
    s += amount_unit_symbol(amount_dimension_for(level));
    s += "^";
    s += format_double(w.wA);
    s += "*USD^";
    s += format_double(w.wR);
    s += ")";
    return s;
}

// A computed figure of merit. Ordering across hierarchy levels or across
// different weightings is an error, never a silent coercion.
struct FomValue {
    double value = 0.0;
    HierarchyLevel level = HierarchyLevel::link;
    std::string unit_signature;

    bool comparable_with(const FomValue& other) const {
        return level == other.level && unit_signature == other.unit_signature;
    }

    void require_comparable(const FomValue& other) const {
        if (!comparable_with(other)) {
            throw IncomparableValues("cannot compare " + std::string(to_string(level)) + " [" +
                                     unit_signature + "] with " + std::string(to_string(other.level)) +
                                     " [" + other.unit_signature + "]");
        }
    }

    friend bool operator<(const FomValue& a, const FomValue& b) {
        a.require_comparable(b);
        return a.value < b.value;
    }
    friend bool operator>(const FomValue& a, const FomValue& b) {
        a.require_comparable(b);
        return a.value > b.value;
    }
    friend bool operator<=(const FomValue& a, const FomValue& b) {
        a.require_comparable(b);
        return a.value <= b.value;
    }
    friend bool operator>=(const FomValue& a, const FomValue& b) {
        a.require_comparable(b);
        return a.value >= b.value;
    }
    friend bool operator==(const FomValue& a, const FomValue& b) {
        a.require_comparable(b);
        return a.value == b.value;
    }
    friend bool operator!=(const FomValue& a, const FomValue& b) { return !(a == b); }
};

struct MakimotoFactors {
    double mips = 0.0;
    double size_m3 = 0.0;
    double cost_usd = 0.0;
    double power_w = 0.0;

    void validate() const {
        detail::require_positive(mips, "mips");
        detail::require_positive(size_m3, "size_m3");
        detail::require_positive(cost_usd, "cost_usd");
        detail::require_positive(power_w, "power_w");
    }
};

struct SystemSpec {
    double mips = 0.0;
    double instruction_length_bits = 0.0;

    void validate() const {
        detail::require_positive(mips, "mips");
        detail::require_positive(instruction_length_bits, "instruction_length_bits");
    }
};

// value = C^wC / (L^wL * E^wE * A^wA * R^wR)
inline FomValue compute_clear(const ClearFactors& factors, const WeightVector& weights,
                              HierarchyLevel level) {
    factors.validate();
    weights.validate();
    if (factors.amount.dimension != amount_dimension_for(level)) {
        throw DimensionMismatch("amount dimension " +
                                std::string(to_string(factors.amount.dimension)) +
                                " does not match hierarchy level " + std::string(to_string(level)) +
                                " (expects " +
                                std::string(to_string(amount_dimension_for(level))) + ")");
    }
    const double num = detail::wpow(factors.capability_bps, weights.wC);
    const double den = ((detail::wpow(factors.latency_s, weights.wL) *
                         detail::wpow(factors.energy_j_per_bit, weights.wE)) *
                        detail::wpow(factors.amount.value, weights.wA)) *
                       detail::wpow(factors.resistance_usd, weights.wR);
    const double value = num / den;
    if (!detail::positive_finite(value)) {
        throw Error("figure of merit is not positive and finite (overflow or underflow): " +
                    format_double(value));
    }
    return FomValue{value, level, clear_unit_signature(level, weights)};
}

// value = MIPS / (Size * Cost * Power), a system-level four-factor merit.
inline FomValue compute_makimoto(const MakimotoFactors& factors) {
    factors.validate();
    const double value = factors.mips / ((factors.size_m3 * factors.cost_usd) * factors.power_w);
    if (!detail::positive_finite(value)) {
        throw Error("figure of merit is not positive and finite (overflow or underflow): " +
                    format_double(value));
    }
    return FomValue{value, HierarchyLevel::system, "MIPS/(m3*USD*W)"};
}

// System capability in bits/second: compute rate times instruction width.
inline double system_capability(const SystemSpec& spec) {
    spec.validate();
    return spec.mips * 1e6 * spec.instruction_length_bits;
}

// Device-level merit: operating speed over response time, energy, scaling
// length, and cost. The amount collapses to a single length.
inline FomValue device_clear(double speed_bps, double response_time_s, double energy_j_per_bit,
                             double scaling_length_m, double resistance_usd,
                             const WeightVector& weights) {
    ClearFactors factors;
    factors.capability_bps = speed_bps;
    factors.latency_s = response_time_s;
    factors.energy_j_per_bit = energy_j_per_bit;
    factors.amount = Amount{scaling_length_m, AmountDimension::length_m};
    factors.resistance_usd = resistance_usd;
    return compute_clear(factors, weights, HierarchyLevel::device);
}

// Evaluates every option at the same level and weighting and sorts descending
// by value. Ties break by ascending label so the output is deterministic.
inline std::vector<std::pair<std::string, FomValue>> rank_options(
    const std::vector<std::pair<std::string, ClearFactors>>& options, const WeightVector& weights,
    HierarchyLevel level) {
    if (options.empty()) throw EmptyOptionSet("rank_options: no options given");
    std::vector<std::pair<std::string, FomValue>> ranked;
    ranked.reserve(options.size());
    for (const auto& [label, factors] : options) {
        ranked.emplace_back(label, compute_clear(factors, weights, level));
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second.value != b.second.value) return a.second.value > b.second.value;
        return a.first < b.first;
    });
    return ranked;
}

}  // namespace clear
