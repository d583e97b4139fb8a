#pragma once

#include <fstream>
#include <initializer_list>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "clear/errors.hpp"
#include "clear/fom.hpp"
#include "clear/models.hpp"
#include "clear/reconfig.hpp"

// JSON bindings for the value types and the technology parameter file.
// Parsing is strict: unknown keys are rejected so a typo in a config never
// silently falls back to a default. Files may carry // comments.

namespace clear {

using json = nlohmann::json;

namespace detail {

inline void check_keys(const json& j, std::initializer_list<const char*> allowed,
                       const char* context) {
    if (!j.is_object()) throw InvalidParams(std::string(context) + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw InvalidParams(std::string(context) + ": unknown key '" + key + "'");
        }
    }
}

inline double get_number(const json& j, const char* key, const char* context) {
    if (!j.contains(key)) {
        throw InvalidParams(std::string(context) + ": missing key '" + key + "'");
    }
    if (!j.at(key).is_number()) {
        throw InvalidParams(std::string(context) + ": key '" + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

}  // namespace detail

inline void to_json(json& j, const WeightVector& w) {
    j = json{{"wC", w.wC}, {"wL", w.wL}, {"wE", w.wE}, {"wA", w.wA}, {"wR", w.wR}};
}

inline void from_json(const json& j, WeightVector& w) {
    detail::check_keys(j, {"wC", "wL", "wE", "wA", "wR"}, "weights");
    w.wC = detail::get_number(j, "wC", "weights");
    w.wL = detail::get_number(j, "wL", "weights");
    w.wE = detail::get_number(j, "wE", "weights");
    w.wA = detail::get_number(j, "wA", "weights");
    w.wR = detail::get_number(j, "wR", "weights");
    w.validate();
}

inline void to_json(json& j, const ClearFactors& f) {
    j = json{{"capability_bps", f.capability_bps},
             {"latency_s", f.latency_s},
             {"energy_j_per_bit", f.energy_j_per_bit},
             {"amount_value", f.amount.value},
             {"amount_dim", std::string(to_string(f.amount.dimension))},
             {"resistance_usd", f.resistance_usd}};
}

inline void from_json(const json& j, ClearFactors& f) {
    detail::check_keys(j,
                       {"capability_bps", "latency_s", "energy_j_per_bit", "amount_value",
                        "amount_dim", "resistance_usd"},
                       "factors");
    f.capability_bps = detail::get_number(j, "capability_bps", "factors");
    f.latency_s = detail::get_number(j, "latency_s", "factors");
    f.energy_j_per_bit = detail::get_number(j, "energy_j_per_bit", "factors");
    f.amount.value = detail::get_number(j, "amount_value", "factors");
    if (!j.contains("amount_dim") || !j.at("amount_dim").is_string()) {
        throw InvalidParams("factors: 'amount_dim' must be a string");
    }
    f.amount.dimension = amount_dimension_from_string(j.at("amount_dim").get<std::string>());
    f.resistance_usd = detail::get_number(j, "resistance_usd", "factors");
    f.validate();
}

inline void to_json(json& j, const MakimotoFactors& f) {
    j = json{{"mips", f.mips}, {"size_m3", f.size_m3}, {"cost_usd", f.cost_usd}, {"power_w", f.power_w}};
}

inline void from_json(const json& j, MakimotoFactors& f) {
    detail::check_keys(j, {"mips", "size_m3", "cost_usd", "power_w"}, "makimoto factors");
    f.mips = detail::get_number(j, "mips", "makimoto factors");
    f.size_m3 = detail::get_number(j, "size_m3", "makimoto factors");
    f.cost_usd = detail::get_number(j, "cost_usd", "makimoto factors");
    f.power_w = detail::get_number(j, "power_w", "makimoto factors");
    f.validate();
}

inline void from_json(const json& j, ChannelSpec& ch) {
    detail::check_keys(j,
                       {"year_ref", "b0", "bandwidth_growth_per_year", "snr0", "rolloff_length",
                        "attenuation_db_per_m"},
                       "channel");
    ch.year_ref = detail::get_number(j, "year_ref", "channel");
    ch.b0 = detail::get_number(j, "b0", "channel");
    ch.bandwidth_growth_per_year = detail::get_number(j, "bandwidth_growth_per_year", "channel");
    ch.snr0 = detail::get_number(j, "snr0", "channel");
    ch.rolloff_length = detail::get_number(j, "rolloff_length", "channel");
    ch.attenuation_db_per_m = detail::get_number(j, "attenuation_db_per_m", "channel");
    ch.validate();
}

inline void from_json(const json& j, KoomeyParams& k) {
    detail::check_keys(j, {"e_ref", "year_ref", "halving_period", "temperature"}, "energy");
    k.e_ref = detail::get_number(j, "e_ref", "energy");
    k.year_ref = detail::get_number(j, "year_ref", "energy");
    k.halving_period = detail::get_number(j, "halving_period", "energy");
    k.temperature = detail::get_number(j, "temperature", "energy");
    k.validate();
}

inline void from_json(const json& j, ExperienceCurveParams& c) {
    detail::check_keys(j,
                       {"c_ref", "year_ref", "volume_growth_per_year", "learning_exponent",
                        "overhead_onset_year", "overhead_coeff", "overhead_power"},
                       "cost");
    c.c_ref = detail::get_number(j, "c_ref", "cost");
    c.year_ref = detail::get_number(j, "year_ref", "cost");
    c.volume_growth_per_year = detail::get_number(j, "volume_growth_per_year", "cost");
    c.learning_exponent = detail::get_number(j, "learning_exponent", "cost");
    if (j.contains("overhead_onset_year")) {
        c.overhead_onset_year = detail::get_number(j, "overhead_onset_year", "cost");
        c.overhead_coeff = detail::get_number(j, "overhead_coeff", "cost");
        c.overhead_power = detail::get_number(j, "overhead_power", "cost");
    }
    c.validate();
}

inline void from_json(const json& j, ParallelismParams& p) {
    detail::check_keys(j, {"onset_year", "core_doubling_period", "utilization_cap"}, "parallelism");
    p.onset_year = detail::get_number(j, "onset_year", "parallelism");
    p.core_doubling_period = detail::get_number(j, "core_doubling_period", "parallelism");
    p.utilization_cap = detail::get_number(j, "utilization_cap", "parallelism");
    p.validate();
}

inline void from_json(const json& j, TechnologyParams& t) {
    detail::check_keys(j,
                       {"label", "kind", "channel", "energy", "cost", "parallelism", "device_pitch",
                        "latency_per_length", "latency_fixed"},
                       "technology");
    if (!j.contains("label") || !j.at("label").is_string()) {
        throw InvalidParams("technology: 'label' must be a string");
    }
    t.label = j.at("label").get<std::string>();
    if (!j.contains("kind") || !j.at("kind").is_string()) {
        throw InvalidParams("technology: 'kind' must be a string");
    }
    t.kind = technology_kind_from_string(j.at("kind").get<std::string>());
    if (!j.contains("channel")) throw InvalidParams("technology: missing 'channel'");
    t.channel = j.at("channel").get<ChannelSpec>();
    if (!j.contains("energy")) throw InvalidParams("technology: missing 'energy'");
    t.energy = j.at("energy").get<KoomeyParams>();
    if (!j.contains("cost")) throw InvalidParams("technology: missing 'cost'");
    t.cost = j.at("cost").get<ExperienceCurveParams>();
    if (j.contains("parallelism")) {
        t.parallelism = j.at("parallelism").get<ParallelismParams>();
    } else {
        t.parallelism.reset();
    }
    t.device_pitch = detail::get_number(j, "device_pitch", "technology");
    t.latency_per_length = detail::get_number(j, "latency_per_length", "technology");
    t.latency_fixed = detail::get_number(j, "latency_fixed", "technology");
    t.validate();
}

struct TechnologyPair {
    TechnologyParams electrical;
    TechnologyParams hybrid;
};

inline TechnologyPair parse_params(std::istream& in) {
    json j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    detail::check_keys(j, {"electrical", "hybrid"}, "params file");
    if (!j.contains("electrical") || !j.contains("hybrid")) {
        throw InvalidParams("params file: needs both 'electrical' and 'hybrid' entries");
    }
    TechnologyPair pair;
    pair.electrical = j.at("electrical").get<TechnologyParams>();
    pair.hybrid = j.at("hybrid").get<TechnologyParams>();
    return pair;
}

inline TechnologyPair load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open params file '" + path + "'");
    return parse_params(in);
}

inline void from_json(const json& j, OperatingContext& ctx) {
    detail::check_keys(
        j, {"battery_fraction", "load_fraction", "footprint_pressure", "latency_sensitivity"},
        "context");
    ctx.battery_fraction = detail::get_number(j, "battery_fraction", "context");
    ctx.load_fraction = detail::get_number(j, "load_fraction", "context");
    ctx.footprint_pressure = detail::get_number(j, "footprint_pressure", "context");
    ctx.latency_sensitivity = detail::get_number(j, "latency_sensitivity", "context");
    ctx.validate();
}

// Policy fields are optional: base defaults to all-ones, gains to zero.
inline void from_json(const json& j, WeightPolicy& policy) {
    detail::check_keys(j, {"base", "energy_gain", "amount_gain", "latency_gain"}, "policy");
    policy = WeightPolicy{};
    if (j.contains("base")) policy.base = j.at("base").get<WeightVector>();
    if (j.contains("energy_gain")) policy.energy_gain = detail::get_number(j, "energy_gain", "policy");
    if (j.contains("amount_gain")) policy.amount_gain = detail::get_number(j, "amount_gain", "policy");
    if (j.contains("latency_gain")) policy.latency_gain = detail::get_number(j, "latency_gain", "policy");
    policy.validate();
}

// Option list for technology selection: [{"label": ..., "factors": {...}}, ...]
inline std::vector<std::pair<std::string, ClearFactors>> parse_options(const json& j) {
    if (!j.is_array()) throw InvalidParams("options: expected a JSON array");
    std::vector<std::pair<std::string, ClearFactors>> options;
    options.reserve(j.size());
    for (const auto& entry : j) {
        detail::check_keys(entry, {"label", "factors"}, "option");
        if (!entry.contains("label") || !entry.at("label").is_string()) {
            throw InvalidParams("option: 'label' must be a string");
        }
        if (!entry.contains("factors")) throw InvalidParams("option: missing 'factors'");
        options.emplace_back(entry.at("label").get<std::string>(),
                             entry.at("factors").get<ClearFactors>());
    }
    return options;
}

}  // namespace clear
