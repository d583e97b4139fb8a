#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "clear/errors.hpp"
#include "clear/fom.hpp"

// Parametric time- and length-dependent models producing link-level factors
// for an electrical interconnect and a hybrid photonic-plasmonic one:
// a Shannon-limited capability model, an energy halving trend floored at the
// thermodynamic erase limit, an experience-curve cost model, and a saturating
// parallelism factor for the electrical side.

namespace clear {

inline constexpr double k_boltzmann_j_per_k = 1.380649e-23;  // exact, SI 2019

struct PhysicalConstants {
    double boltzmann_kB = k_boltzmann_j_per_k;
    double default_temperature_k = 300.0;
};

// Minimum energy to erase one bit: kB * T * ln 2.
inline double landauer_limit(double temperature_k) {
    if (!(std::isfinite(temperature_k) && temperature_k > 0.0)) {
        throw NonPositiveTemperature("temperature must be > 0 K, got " +
                                     format_double(temperature_k));
    }
    return k_boltzmann_j_per_k * temperature_k * std::numbers::ln2;
}

// Energy-per-bit halving trend. e_ref holds at year_ref and halves every
// halving_period years until the Landauer floor takes over.
struct KoomeyParams {
    double e_ref = 0.0;           // J/bit at year_ref
    double year_ref = 2016.0;
    double halving_period = 1.57; // years per halving
    double temperature = 300.0;   // K, sets the floor

    void validate() const {
        if (!(std::isfinite(e_ref) && std::isfinite(year_ref) && std::isfinite(halving_period) &&
              halving_period > 0.0)) {
            throw InvalidParams("energy trend: e_ref/year_ref must be finite, halving_period > 0");
        }
        if (!(e_ref > landauer_limit(temperature))) {
            throw InvalidParams("energy trend: e_ref " + format_double(e_ref) +
                                " must exceed the Landauer floor at T=" + format_double(temperature));
        }
    }
};

inline double energy_per_bit(double year, const KoomeyParams& params) {
    params.validate();
    if (!std::isfinite(year)) throw InvalidParams("energy_per_bit: year must be finite");
    const double trend = params.e_ref * std::exp2(-(year - params.year_ref) / params.halving_period);
    return std::max(trend, landauer_limit(params.temperature));
}

// Data rate of a noisy channel: B * log2(1 + SNR).
inline double shannon_capacity(double bandwidth_hz, double snr_linear) {
    if (!(std::isfinite(bandwidth_hz) && bandwidth_hz >= 0.0)) {
        throw NegativeInput("shannon_capacity: bandwidth must be >= 0, got " +
                            format_double(bandwidth_hz));
    }
    if (!(std::isfinite(snr_linear) && snr_linear >= 0.0)) {
        throw NegativeInput("shannon_capacity: SNR must be >= 0, got " + format_double(snr_linear));
    }
    return bandwidth_hz * std::log2(1.0 + snr_linear);
}

// Per-unit cost following an experience curve: cumulative volume grows
// geometrically with time and cost falls as volume^-learning_exponent.
// An optional overhead term models cost growth after a density-scaling wall.
struct ExperienceCurveParams {
    double c_ref = 0.0;                  // USD/unit at year_ref
    double year_ref = 2016.0;
    double volume_growth_per_year = 2.0; // > 1
    double learning_exponent = 0.0;      // >= 0
    std::optional<double> overhead_onset_year;
    double overhead_coeff = 0.0;         // USD/year^overhead_power
    double overhead_power = 1.0;

    void validate() const {
        if (!(std::isfinite(c_ref) && c_ref > 0.0)) {
            throw InvalidParams("cost model: c_ref must be > 0");
        }
        if (!(std::isfinite(volume_growth_per_year) && volume_growth_per_year > 1.0)) {
            throw InvalidParams("cost model: volume_growth_per_year must be > 1");
        }
        if (!(std::isfinite(learning_exponent) && learning_exponent >= 0.0)) {
            throw InvalidParams("cost model: learning_exponent must be >= 0");
        }
        if (overhead_onset_year && !(std::isfinite(*overhead_onset_year) && overhead_coeff >= 0.0 &&
                                     std::isfinite(overhead_coeff) && std::isfinite(overhead_power))) {
            throw InvalidParams("cost model: overhead term parameters must be finite, coeff >= 0");
        }
    }
};

inline double experience_cost(const ExperienceCurveParams& params, double year) {
    params.validate();
    if (!(std::isfinite(year) && year >= params.year_ref - 100.0)) {
        throw InvalidParams("cost model: year " + format_double(year) +
                            " is more than 100 years before year_ref");
    }
    double cost = params.c_ref *
                  std::pow(params.volume_growth_per_year,
                           -params.learning_exponent * (year - params.year_ref));
    if (params.overhead_onset_year && year > *params.overhead_onset_year) {
        cost += params.overhead_coeff *
                std::pow(year - *params.overhead_onset_year, params.overhead_power);
    }
    if (!(std::isfinite(cost) && cost > 0.0)) {
        throw InvalidParams("cost model: evaluated cost is not positive and finite at year " +
                            format_double(year));
    }
    return cost;
}

// Channel model shared by both link kinds. The electrical side loses
// bandwidth with length through a soft 1/(1+(L/Lc)^2) knee at constant SNR;
// the hybrid side keeps its bandwidth and loses SNR through dB/m attenuation.
struct ChannelSpec {
    double year_ref = 2016.0;             // year at which b0 holds
    double b0 = 0.0;                      // Hz
    double bandwidth_growth_per_year = 1.0;
    double snr0 = 0.0;                    // linear SNR at zero length
    double rolloff_length = 1.0;          // m, electrical knee scale
    double attenuation_db_per_m = 0.0;    // hybrid propagation loss

    void validate() const {
        if (!(std::isfinite(year_ref) && std::isfinite(b0) && b0 > 0.0)) {
            throw InvalidParams("channel: b0 must be > 0 and year_ref finite");
        }
        if (!(std::isfinite(bandwidth_growth_per_year) && bandwidth_growth_per_year > 0.0)) {
            throw InvalidParams("channel: bandwidth_growth_per_year must be > 0");
        }
        if (!(std::isfinite(snr0) && snr0 > 0.0)) {
            throw InvalidParams("channel: snr0 must be > 0");
        }
        if (!(std::isfinite(rolloff_length) && rolloff_length > 0.0)) {
            throw InvalidParams("channel: rolloff_length must be > 0");
        }
        if (!(std::isfinite(attenuation_db_per_m) && attenuation_db_per_m >= 0.0)) {
            throw InvalidParams("channel: attenuation must be >= 0");
        }
    }
};

// Multi-core growth after onset_year, capped by the fraction of the chip
// that can be powered at once. Equivalent to Amdahl's law with parallel
// fraction utilization_cap, so the factor saturates at 1/(1-utilization_cap).
struct ParallelismParams {
    double onset_year = 2006.0;
    double core_doubling_period = 2.0;  // years
    double utilization_cap = 0.85;      // in (0, 1]

    void validate() const {
        if (!(std::isfinite(onset_year) && std::isfinite(core_doubling_period) &&
              core_doubling_period > 0.0)) {
            throw InvalidParams("parallelism: onset_year finite, core_doubling_period > 0 required");
        }
        if (!(std::isfinite(utilization_cap) && utilization_cap > 0.0 && utilization_cap <= 1.0)) {
            throw InvalidParams("parallelism: utilization_cap must be in (0, 1]");
        }
    }
};

inline double parallelism_factor(double year, const ParallelismParams& params) {
    params.validate();
    if (!std::isfinite(year)) throw InvalidParams("parallelism_factor: year must be finite");
    if (year <= params.onset_year) return 1.0;
    const double cores = std::exp2((year - params.onset_year) / params.core_doubling_period);
    const double usable = 1.0 / (1.0 - params.utilization_cap * (1.0 - 1.0 / cores));
    return std::min(cores, usable);
}

enum class TechnologyKind { electrical, hybrid_photonic_plasmonic };

inline std::string_view to_string(TechnologyKind kind) {
    return kind == TechnologyKind::electrical ? "electrical" : "hybrid_photonic_plasmonic";
}

inline TechnologyKind technology_kind_from_string(std::string_view s) {
    if (s == "electrical") return TechnologyKind::electrical;
    if (s == "hybrid_photonic_plasmonic") return TechnologyKind::hybrid_photonic_plasmonic;
    throw InvalidParams("unknown technology kind '" + std::string(s) + "'");
}

struct TechnologyParams {
    std::string label;
    TechnologyKind kind = TechnologyKind::electrical;
    ChannelSpec channel;
    KoomeyParams energy;
    ExperienceCurveParams cost;
    std::optional<ParallelismParams> parallelism;  // electrical only
    double device_pitch = 0.0;                     // m of footprint width per link
    double latency_per_length = 0.0;               // s/m
    double latency_fixed = 0.0;                    // s

    void validate() const {
        channel.validate();
        energy.validate();
        cost.validate();
        if (parallelism) {
            if (kind == TechnologyKind::hybrid_photonic_plasmonic) {
                throw InvalidParams("technology '" + label +
                                    "': parallelism applies to electrical links only");
            }
            parallelism->validate();
        }
        if (!(std::isfinite(device_pitch) && device_pitch > 0.0)) {
            throw InvalidParams("technology '" + label + "': device_pitch must be > 0");
        }
        if (!(std::isfinite(latency_per_length) && latency_per_length > 0.0)) {
            throw InvalidParams("technology '" + label + "': latency_per_length must be > 0");
        }
        if (!(std::isfinite(latency_fixed) && latency_fixed > 0.0)) {
            throw InvalidParams("technology '" + label + "': latency_fixed must be > 0");
        }
    }
};

// Deliverable data rate across a link of the given length.
inline double link_capability(const TechnologyParams& tech, double length_m, double year) {
    tech.validate();
    if (!(std::isfinite(length_m) && length_m > 0.0)) {
        throw NonPositiveLength("link_capability: length must be > 0 m, got " +
                                format_double(length_m));
    }
    const ChannelSpec& ch = tech.channel;
    const double growth = std::pow(ch.bandwidth_growth_per_year, year - ch.year_ref);
    if (tech.kind == TechnologyKind::electrical) {
        const double knee = length_m / ch.rolloff_length;
        const double bandwidth = ch.b0 * growth / (1.0 + knee * knee);
        double capability = shannon_capacity(bandwidth, ch.snr0);
        if (tech.parallelism) capability *= parallelism_factor(year, *tech.parallelism);
        return capability;
    }
    const double bandwidth = ch.b0 * growth;
    const double snr = ch.snr0 * std::pow(10.0, -ch.attenuation_db_per_m * length_m / 10.0);
    return shannon_capacity(bandwidth, snr);
}

inline double cost_resistance(const TechnologyParams& tech, double year) {
    tech.validate();
    return experience_cost(tech.cost, year);
}

// Assembles the five link-level factors at (length, year) and evaluates the
// weighted figure of merit. The amount is a strip of silicon:
// device_pitch * length.
inline ClearFactors link_factors(const TechnologyParams& tech, double length_m, double year) {
    tech.validate();
    if (!(std::isfinite(length_m) && length_m > 0.0)) {
        throw NonPositiveLength("link_factors: length must be > 0 m, got " + format_double(length_m));
    }
    ClearFactors factors;
    factors.capability_bps = link_capability(tech, length_m, year);
    factors.latency_s = tech.latency_fixed + tech.latency_per_length * length_m;
    factors.energy_j_per_bit = energy_per_bit(year, tech.energy);
    factors.amount = Amount{tech.device_pitch * length_m, AmountDimension::area_m2};
    factors.resistance_usd = cost_resistance(tech, year);
    return factors;
}

inline FomValue link_clear(const TechnologyParams& tech, double length_m, double year,
                           const WeightVector& weights) {
    return compute_clear(link_factors(tech, length_m, year), weights, HierarchyLevel::link);
}

}  // namespace clear
