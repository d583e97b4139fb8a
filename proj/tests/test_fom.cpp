#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "clear/fom.hpp"

using namespace clear;

namespace {

ClearFactors make_factors(double c, double l, double e, double a, double r,
                          AmountDimension dim = AmountDimension::area_m2) {
    ClearFactors f;
    f.capability_bps = c;
    f.latency_s = l;
    f.energy_j_per_bit = e;
    f.amount = Amount{a, dim};
    f.resistance_usd = r;
    return f;
}

std::mt19937_64 rng(20160614ULL);

double random_positive() {
    std::uniform_real_distribution<double> mantissa(0.1, 10.0);
    std::uniform_int_distribution<int> exponent(-12, 12);
    return mantissa(rng) * std::pow(10.0, exponent(rng));
}

}  // namespace

TEST_CASE("compute_clear identity and direct arithmetic") {
    const WeightVector ones;

    SECTION("all factors 1 with unit weights is exactly 1") {
        const FomValue v =
            compute_clear(make_factors(1, 1, 1, 1, 1), ones, HierarchyLevel::link);
        REQUIRE(v.value == 1.0);
        REQUIRE(v.level == HierarchyLevel::link);
    }
    SECTION("link example evaluates to 1e40") {
        const FomValue v = compute_clear(make_factors(1e9, 1e-9, 1e-12, 1e-10, 1.0), ones,
                                         HierarchyLevel::link);
        REQUIRE_THAT(v.value, Catch::Matchers::WithinRel(1e40, 1e-12));
    }
    SECTION("energy weight raises the energy penalty") {
        const ClearFactors f = make_factors(20, 1, 2, 1, 1);
        REQUIRE(compute_clear(f, ones, HierarchyLevel::link).value == 10.0);
        WeightVector heavy;
        heavy.wE = 3.0;
        REQUIRE(compute_clear(f, heavy, HierarchyLevel::link).value == 2.5);
    }
}

TEST_CASE("compute_clear rejects bad inputs") {
    const WeightVector ones;

    SECTION("non-positive factor") {
        REQUIRE_THROWS_AS(
            compute_clear(make_factors(0, 1, 1, 1, 1), ones, HierarchyLevel::link),
            NonPositiveFactor);
        REQUIRE_THROWS_AS(
            compute_clear(make_factors(1, -2, 1, 1, 1), ones, HierarchyLevel::link),
            NonPositiveFactor);
    }
    SECTION("amount dimension must match the level") {
        const ClearFactors f = make_factors(1, 1, 1, 1, 1, AmountDimension::volume_m3);
        REQUIRE_THROWS_AS(compute_clear(f, ones, HierarchyLevel::link), DimensionMismatch);
        REQUIRE_NOTHROW(compute_clear(f, ones, HierarchyLevel::system));
    }
    SECTION("negative weight") {
        WeightVector w;
        w.wA = -1.0;
        REQUIRE_THROWS_AS(compute_clear(make_factors(1, 1, 1, 1, 1), w, HierarchyLevel::link),
                          NonPositiveFactor);
    }
}

TEST_CASE("amount dimension conventions per level") {
    REQUIRE(amount_dimension_for(HierarchyLevel::device) == AmountDimension::length_m);
    REQUIRE(amount_dimension_for(HierarchyLevel::link) == AmountDimension::area_m2);
    REQUIRE(amount_dimension_for(HierarchyLevel::network) == AmountDimension::area_m2);
    REQUIRE(amount_dimension_for(HierarchyLevel::system) == AmountDimension::volume_m3);
}

TEST_CASE("unit signature encodes level and weights") {
    const WeightVector ones;
    REQUIRE(clear_unit_signature(HierarchyLevel::link, ones) == "bps^1/(s^1*J/b^1*m2^1*USD^1)");
    WeightVector heavy;
    heavy.wE = 2.0;
    REQUIRE(clear_unit_signature(HierarchyLevel::device, heavy) == "bps^1/(s^1*J/b^2*m^1*USD^1)");
    REQUIRE(clear_unit_signature(HierarchyLevel::system, ones) == "bps^1/(s^1*J/b^1*m3^1*USD^1)");
}

TEST_CASE("cross-hierarchy and cross-weighting comparisons are rejected") {
    const WeightVector ones;
    const FomValue device =
        device_clear(1.0, 1.0, 1.0, 1.0, 1.0, ones);
    const FomValue link = compute_clear(make_factors(1, 1, 1, 1, 1), ones, HierarchyLevel::link);
    WeightVector heavy;
    heavy.wE = 2.0;
    const FomValue link_weighted =
        compute_clear(make_factors(1, 1, 1, 1, 1), heavy, HierarchyLevel::link);

    REQUIRE_THROWS_AS((void)(device < link), IncomparableValues);
    REQUIRE_THROWS_AS((void)(device > link), IncomparableValues);
    REQUIRE_THROWS_AS((void)(device <= link), IncomparableValues);
    REQUIRE_THROWS_AS((void)(device >= link), IncomparableValues);
    REQUIRE_THROWS_AS((void)(device == link), IncomparableValues);
    REQUIRE_THROWS_AS((void)(link == link_weighted), IncomparableValues);
    REQUIRE_NOTHROW((void)(link == link));
}

TEST_CASE("compute_makimoto direct arithmetic") {
    REQUIRE(compute_makimoto(MakimotoFactors{2, 2, 1, 1}).value == 1.0);
    REQUIRE(compute_makimoto(MakimotoFactors{100, 1, 1, 1}).value == 100.0);
    REQUIRE_THAT(compute_makimoto(MakimotoFactors{50, 0.5, 2000, 100}).value,
                 Catch::Matchers::WithinRel(5e-4, 1e-12));
    REQUIRE(compute_makimoto(MakimotoFactors{2, 2, 1, 1}).level == HierarchyLevel::system);
    REQUIRE(compute_makimoto(MakimotoFactors{2, 2, 1, 1}).unit_signature == "MIPS/(m3*USD*W)");
    REQUIRE_THROWS_AS(compute_makimoto(MakimotoFactors{0, 1, 1, 1}), NonPositiveFactor);
}

TEST_CASE("system_capability scales mips by instruction width") {
    REQUIRE(system_capability(SystemSpec{1, 1}) == 1e6);
    REQUIRE_THAT(system_capability(SystemSpec{100, 32}), Catch::Matchers::WithinRel(3.2e9, 1e-12));
    REQUIRE_THROWS_AS(system_capability(SystemSpec{0, 32}), NonPositiveFactor);
}

TEST_CASE("device_clear direct arithmetic") {
    const WeightVector ones;
    REQUIRE(device_clear(1, 1, 1, 1, 1, ones).value == 1.0);
    REQUIRE(device_clear(1, 1, 1, 1, 1, ones).level == HierarchyLevel::device);
    REQUIRE_THAT(device_clear(1e10, 1e-11, 1e-15, 1e-6, 0.01, ones).value,
                 Catch::Matchers::WithinRel(1e44, 1e-12));
    REQUIRE_THROWS_AS(device_clear(1e10, 1e-11, 1e-15, 0.0, 0.01, ones), NonPositiveFactor);
}

TEST_CASE("rank_options orders descending with lexicographic ties") {
    const WeightVector ones;
    std::vector<std::pair<std::string, ClearFactors>> options = {
        {"X", make_factors(20, 1, 2, 1, 1)},
        {"Y", make_factors(6, 1, 1, 1, 1)},
    };

    SECTION("unit weights put X first") {
        const auto ranked = rank_options(options, ones, HierarchyLevel::link);
        REQUIRE(ranked.size() == 2);
        REQUIRE(ranked[0].first == "X");
        REQUIRE(ranked[0].second.value == 10.0);
        REQUIRE(ranked[1].first == "Y");
        REQUIRE(ranked[1].second.value == 6.0);
    }
    SECTION("wE=3 flips the order") {
        WeightVector heavy;
        heavy.wE = 3.0;
        const auto ranked = rank_options(options, heavy, HierarchyLevel::link);
        REQUIRE(ranked[0].first == "Y");
        REQUIRE(ranked[0].second.value == 6.0);
        REQUIRE(ranked[1].first == "X");
        REQUIRE(ranked[1].second.value == 2.5);
    }
    SECTION("ties break by ascending label") {
        options.push_back({"A", make_factors(20, 1, 2, 1, 1)});
        const auto ranked = rank_options(options, ones, HierarchyLevel::link);
        REQUIRE(ranked[0].first == "A");
        REQUIRE(ranked[1].first == "X");
    }
    SECTION("singleton and empty") {
        const auto one = rank_options({options.front()}, ones, HierarchyLevel::link);
        REQUIRE(one.size() == 1);
        REQUIRE(one[0].first == "X");
        REQUIRE_THROWS_AS(rank_options({}, ones, HierarchyLevel::link), EmptyOptionSet);
    }
}

TEST_CASE("homogeneity over randomized factor sets") {
    const WeightVector ones;
    for (int i = 0; i < 1000; ++i) {
        const ClearFactors f = make_factors(random_positive(), random_positive(),
                                            random_positive(), random_positive(),
                                            random_positive());
        const double base = compute_clear(f, ones, HierarchyLevel::link).value;
        const double k = random_positive();

        ClearFactors scaled_c = f;
        scaled_c.capability_bps *= k;
        const double up = compute_clear(scaled_c, ones, HierarchyLevel::link).value;
        REQUIRE_THAT(up, Catch::Matchers::WithinRel(base * k, 1e-12));

        ClearFactors scaled_r = f;
        scaled_r.resistance_usd *= k;
        const double down = compute_clear(scaled_r, ones, HierarchyLevel::link).value;
        REQUIRE_THAT(down, Catch::Matchers::WithinRel(base / k, 1e-12));
    }
}

TEST_CASE("monotonicity in every factor under random positive weights") {
    std::uniform_real_distribution<double> weight_dist(0.25, 3.0);
    for (int i = 0; i < 1000; ++i) {
        WeightVector w{weight_dist(rng), weight_dist(rng), weight_dist(rng), weight_dist(rng),
                       weight_dist(rng)};
        const ClearFactors f = make_factors(random_positive(), random_positive(),
                                            random_positive(), random_positive(),
                                            random_positive());
        const double base = compute_clear(f, w, HierarchyLevel::link).value;

        ClearFactors more_c = f;
        more_c.capability_bps *= 1.5;
        REQUIRE(compute_clear(more_c, w, HierarchyLevel::link).value > base);

        ClearFactors more_l = f;
        more_l.latency_s *= 1.5;
        REQUIRE(compute_clear(more_l, w, HierarchyLevel::link).value < base);

        ClearFactors more_e = f;
        more_e.energy_j_per_bit *= 1.5;
        REQUIRE(compute_clear(more_e, w, HierarchyLevel::link).value < base);

        ClearFactors more_a = f;
        more_a.amount.value *= 1.5;
        REQUIRE(compute_clear(more_a, w, HierarchyLevel::link).value < base);

        ClearFactors more_r = f;
        more_r.resistance_usd *= 1.5;
        REQUIRE(compute_clear(more_r, w, HierarchyLevel::link).value < base);
    }
}

TEST_CASE("weight identity reproduces the unweighted value bit-for-bit") {
    const WeightVector defaulted;
    const WeightVector explicit_ones{1.0, 1.0, 1.0, 1.0, 1.0};
    for (int i = 0; i < 200; ++i) {
        const double c = random_positive(), l = random_positive(), e = random_positive(),
                     a = random_positive(), r = random_positive();
        const ClearFactors f = make_factors(c, l, e, a, r);
        const double unweighted = c / (((l * e) * a) * r);
        const double via_default = compute_clear(f, defaulted, HierarchyLevel::link).value;
        const double via_ones = compute_clear(f, explicit_ones, HierarchyLevel::link).value;
        REQUIRE(via_default == unweighted);
        REQUIRE(via_ones == unweighted);
    }
}

TEST_CASE("rank order is invariant under common scaling of one factor") {
    const WeightVector ones;
    std::uniform_int_distribution<int> which(0, 4);
    std::uniform_int_distribution<int> count(2, 6);
    for (int i = 0; i < 300; ++i) {
        std::vector<std::pair<std::string, ClearFactors>> options;
        const int n = count(rng);
        for (int k = 0; k < n; ++k) {
            options.emplace_back("opt" + std::to_string(k),
                                 make_factors(random_positive(), random_positive(),
                                              random_positive(), random_positive(),
                                              random_positive()));
        }
        const auto before = rank_options(options, ones, HierarchyLevel::link);

        const double k = random_positive();
        const int factor = which(rng);
        for (auto& [label, f] : options) {
            switch (factor) {
                case 0: f.capability_bps *= k; break;
                case 1: f.latency_s *= k; break;
                case 2: f.energy_j_per_bit *= k; break;
                case 3: f.amount.value *= k; break;
                default: f.resistance_usd *= k; break;
            }
        }
        const auto after = rank_options(options, ones, HierarchyLevel::link);
        REQUIRE(before.size() == after.size());
        for (std::size_t j = 0; j < before.size(); ++j) {
            REQUIRE(before[j].first == after[j].first);
        }
    }
}
