#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "clear/errors.hpp"
#include "clear/fom.hpp"
#include "clear/textutil.hpp"

// Maps a runtime operating context (battery, load, footprint pressure,
// latency sensitivity) to weighting exponents and picks the best technology
// option under those weights. A low battery raising the energy exponent
// turns CLEAR into CLE^2AR and so on.

namespace clear {

struct OperatingContext {
    double battery_fraction = 1.0;
    double load_fraction = 0.0;       // accepted, unused by the default policy
    double footprint_pressure = 0.0;
    double latency_sensitivity = 0.0;

    void validate() const {
        for (auto [v, name] :
             {std::pair{battery_fraction, "battery_fraction"}, {load_fraction, "load_fraction"},
              {footprint_pressure, "footprint_pressure"}, {latency_sensitivity, "latency_sensitivity"}}) {
            if (!(std::isfinite(v) && v >= 0.0 && v <= 1.0)) {
                throw InvalidParams(std::string(name) + " must be in [0, 1], got " + format_double(v));
            }
        }
    }
};

// Affine context-to-exponent map: each stimulus adds gain * stimulus to its
// exponent, so produced weights are always >= the base weights.
struct WeightPolicy {
    WeightVector base;
    double energy_gain = 0.0;
    double amount_gain = 0.0;
    double latency_gain = 0.0;

    void validate() const {
        base.validate();
        for (auto [g, name] : {std::pair{energy_gain, "energy_gain"}, {amount_gain, "amount_gain"},
                               {latency_gain, "latency_gain"}}) {
            if (!(std::isfinite(g) && g >= 0.0)) {
                throw InvalidParams(std::string(name) + " must be >= 0, got " + format_double(g));
            }
        }
    }
};

inline WeightVector weights_from_context(const OperatingContext& ctx, const WeightPolicy& policy) {
    ctx.validate();
    policy.validate();
    WeightVector w = policy.base;
    w.wE = policy.base.wE + policy.energy_gain * (1.0 - ctx.battery_fraction);
    w.wA = policy.base.wA + policy.amount_gain * ctx.footprint_pressure;
    w.wL = policy.base.wL + policy.latency_gain * ctx.latency_sensitivity;
    return w;
}

struct SelectionResult {
    std::string label;
    FomValue value;
    WeightVector weights;
    std::vector<std::pair<std::string, FomValue>> trace;  // every option, ranked
};

// Hierarchy level implied by an amount dimension. Links and networks share
// the area dimension; link is the convention for option comparisons.
inline HierarchyLevel level_for_amount(AmountDimension dim) {
    switch (dim) {
        case AmountDimension::length_m: return HierarchyLevel::device;
        case AmountDimension::area_m2: return HierarchyLevel::link;
        case AmountDimension::volume_m3: return HierarchyLevel::system;
    }
    return HierarchyLevel::link;
}

// Derives weights from the context, ranks every option under them, and
// returns the winner along with the full ranked trace. The hierarchy level
// follows the options' shared amount dimension.
inline SelectionResult select_technology(
    const std::vector<std::pair<std::string, ClearFactors>>& options, const OperatingContext& ctx,
    const WeightPolicy& policy) {
    if (options.empty()) throw EmptyOptionSet("select_technology: no options given");
    const AmountDimension dim = options.front().second.amount.dimension;
    for (const auto& [label, factors] : options) {
        if (factors.amount.dimension != dim) {
            throw DimensionMismatch("option '" + label + "' uses amount dimension " +
                                    std::string(to_string(factors.amount.dimension)) +
                                    " while the first option uses " + std::string(to_string(dim)));
        }
    }
    const WeightVector weights = weights_from_context(ctx, policy);
    auto ranked = rank_options(options, weights, level_for_amount(dim));
    SelectionResult result;
    result.label = ranked.front().first;
    result.value = ranked.front().second;
    result.weights = weights;
    result.trace = std::move(ranked);
    return result;
}

// Line-oriented report of a selection decision.
inline std::string format_trace(const SelectionResult& result) {
    std::string out = "selected=" + result.label + "\n";
    out += "value=" + format_double(result.value.value) + "\n";
    out += "weights=" + format_double(result.weights.wC) + "," + format_double(result.weights.wL) +
           "," + format_double(result.weights.wE) + "," + format_double(result.weights.wA) + "," +
           format_double(result.weights.wR) + "\n";
    for (const auto& [label, value] : result.trace) {
        out += "option " + label + " value=" + format_double(value.value) + "\n";
    }
    return out;
}

}  // namespace clear
