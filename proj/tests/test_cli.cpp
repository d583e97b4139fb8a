#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "clear/csv_io.hpp"
#include "clear/textutil.hpp"
#include "support/proc.hpp"
#include "support/xml_check.hpp"

using testsupport::run;
using testsupport::shell_quote;

namespace {

std::string cli() {
    return shell_quote(CLEAR_CLI_PATH);
}

std::string data_path(const char* name) {
    return std::string(CLEAR_DATA_DIR) + "/" + name;
}

// Scratch file in the test working directory, removed when the test ends.
struct TempFile {
    std::filesystem::path path;

    TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
    std::string quoted() const { return shell_quote(path.string()); }
};

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.is_open());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double to_double(const std::string& text) {
    double v = 0.0;
    REQUIRE(clear::parse_double(text, v));
    return v;
}

std::int64_t to_int(const std::string& text) {
    std::int64_t v = 0;
    REQUIRE(clear::parse_int64(text, v));
    return v;
}

// Value of a key=value output line, or FAIL if the key is absent.
std::string value_of(const std::string& out, const std::string& key) {
    const std::string haystack = "\n" + out;
    const std::string needle = "\n" + key + "=";
    const auto pos = haystack.find(needle);
    if (pos == std::string::npos) FAIL("missing key '" << key << "' in output:\n" << out);
    const auto start = pos + needle.size();
    const auto end = haystack.find('\n', start);
    return haystack.substr(start, end - start);
}

const char* const kFactorsJson = R"({
    "capability_bps": 8.0,
    "latency_s": 0.5,
    "energy_j_per_bit": 0.25,
    "amount_value": 2.0,
    "amount_dim": "area_m2",
    "resistance_usd": 4.0
})";

// Hybrid priced out of the market: identical channels, cost 38 orders apart,
// so the electrical side dominates the whole default length range.
const char* const kNoCrossingJson = R"({
    "electrical": {
        "label": "electrical",
        "kind": "electrical",
        "channel": {"year_ref": 2016, "b0": 5e9, "bandwidth_growth_per_year": 1.1,
                    "snr0": 100, "rolloff_length": 5e-4, "attenuation_db_per_m": 0},
        "energy": {"e_ref": 5e-13, "year_ref": 2016, "halving_period": 1.57, "temperature": 300},
        "cost": {"c_ref": 1e-8, "year_ref": 2016, "volume_growth_per_year": 1.4,
                 "learning_exponent": 0.1},
        "device_pitch": 5e-7,
        "latency_per_length": 1e-7,
        "latency_fixed": 5e-11
    },
    "hybrid": {
        "label": "hybrid_photonic_plasmonic",
        "kind": "hybrid_photonic_plasmonic",
        "channel": {"year_ref": 2016, "b0": 5e9, "bandwidth_growth_per_year": 1.1,
                    "snr0": 100, "rolloff_length": 1.0, "attenuation_db_per_m": 0},
        "energy": {"e_ref": 5e-13, "year_ref": 2016, "halving_period": 1.57, "temperature": 300},
        "cost": {"c_ref": 1e30, "year_ref": 2016, "volume_growth_per_year": 1.4,
                 "learning_exponent": 0},
        "device_pitch": 5e-7,
        "latency_per_length": 1e-7,
        "latency_fixed": 5e-11
    }
})";

}  // namespace

TEST_CASE("cli help and argument errors") {
    REQUIRE(run(cli() + " --help").exit_code == 0);
    REQUIRE(run(cli() + " breakeven --help").exit_code == 0);
    REQUIRE(run(cli() + " 2>&1").exit_code == 2);
    REQUIRE(run(cli() + " compute --no-such-flag 2>&1").exit_code == 2);
    REQUIRE(run(cli() + " frobnicate 2>&1").exit_code == 2);
}

TEST_CASE("cli compute") {
    TempFile factors("cli_factors.json", kFactorsJson);

    SECTION("clear factors with default weights") {
        const auto r = run(cli() + " compute --factors " + factors.quoted());
        REQUIRE(r.exit_code == 0);
        REQUIRE(value_of(r.out, "value") == "8");
        REQUIRE(value_of(r.out, "level") == "link");
        REQUIRE(value_of(r.out, "unit") == "bps^1/(s^1*J/b^1*m2^1*USD^1)");
    }
    SECTION("weights reshape the value and the unit") {
        const auto r =
            run(cli() + " compute --factors " + factors.quoted() + " --weights 1,1,3,1,1");
        REQUIRE(r.exit_code == 0);
        // 8 / (0.5 * 0.25^3 * 2 * 4) = 128
        REQUIRE(value_of(r.out, "value") == "128");
        REQUIRE(value_of(r.out, "unit") == "bps^1/(s^1*J/b^3*m2^1*USD^1)");
    }
    SECTION("explicit level overrides the amount convention") {
        const auto r =
            run(cli() + " compute --factors " + factors.quoted() + " --level network");
        REQUIRE(r.exit_code == 0);
        REQUIRE(value_of(r.out, "level") == "network");
    }
    SECTION("makimoto") {
        TempFile mk("cli_makimoto.json",
                    R"({"mips": 2.0, "size_m3": 0.5, "cost_usd": 4.0, "power_w": 0.25})");
        const auto r = run(cli() + " compute --makimoto " + mk.quoted());
        REQUIRE(r.exit_code == 0);
        REQUIRE(value_of(r.out, "value") == "4");
        REQUIRE(value_of(r.out, "level") == "system");
        REQUIRE(value_of(r.out, "unit") == "MIPS/(m3*USD*W)");
    }
    SECTION("factors and makimoto are mutually exclusive") {
        const auto r = run(cli() + " compute --factors " + factors.quoted() + " --makimoto " +
                           factors.quoted() + " 2>&1");
        REQUIRE(r.exit_code == 2);
        REQUIRE(r.out.find("error:") != std::string::npos);
    }
    SECTION("missing input file names the path") {
        const auto r = run(cli() + " compute --factors cli_no_such_file.json 2>&1");
        REQUIRE(r.exit_code == 2);
        REQUIRE(r.out.find("cli_no_such_file.json") != std::string::npos);
    }
}

TEST_CASE("cli link evaluates one technology at a point") {
    const std::string params = shell_quote(data_path("defaults.json"));
    const auto r = run(cli() + " link --params " + params +
                       " --tech electrical --year 2016 --length 0.01");
    REQUIRE(r.exit_code == 0);
    REQUIRE(value_of(r.out, "tech") == "electrical");
    REQUIRE(value_of(r.out, "amount_dim") == "area_m2");
    REQUIRE(value_of(r.out, "level") == "link");
    REQUIRE(to_double(value_of(r.out, "capability_bps")) > 0.0);
    REQUIRE(to_double(value_of(r.out, "value")) > 0.0);

    const auto hybrid = run(cli() + " link --params " + params +
                            " --tech hybrid --year 2016 --length 0.01");
    REQUIRE(hybrid.exit_code == 0);
    REQUIRE(value_of(hybrid.out, "tech") == "hybrid_photonic_plasmonic");
}

TEST_CASE("cli fit reports the trend of the sample dataset") {
    const std::string input = shell_quote(data_path("sample_trends.csv"));

    SECTION("makimoto fit with deviation scan") {
        const auto r = run(cli() + " fit --input " + input + " --fom makimoto --deviation");
        REQUIRE(r.exit_code == 0);
        REQUIRE(value_of(r.out, "fom") == "makimoto");
        const auto n = to_int(value_of(r.out, "n_points"));
        const auto skipped = to_int(value_of(r.out, "skipped_records"));
        REQUIRE(n + skipped == 36);
        REQUIRE(to_double(value_of(r.out, "slope_log2_per_year")) > 0.0);
        REQUIRE(value_of(r.out, "doubling_time_months") != "none");
        const auto r2 = to_double(value_of(r.out, "r_squared"));
        REQUIRE(r2 > 0.5);
        REQUIRE(r2 <= 1.0);
        REQUIRE(value_of(r.out, "year_min") == "1946");
        REQUIRE(value_of(r.out, "year_max") == "2015");
        REQUIRE(r.out.find("deviation_year=") != std::string::npos);
    }
    SECTION("svg sidecar") {
        TempFile svg("cli_fit.svg", "");
        const auto r = run(cli() + " fit --input " + input + " --fom clear --svg " +
                           svg.quoted() + " --annotate turn:2006:1e20");
        REQUIRE(r.exit_code == 0);
        const std::string doc = slurp(svg.path);
        REQUIRE(doc.size() == static_cast<std::size_t>(
                                  to_int(value_of(r.out, "svg_bytes"))));
        REQUIRE(testsupport::xml_check(doc).empty());
        REQUIRE(doc.find("turn") != std::string::npos);
    }
    SECTION("malformed csv is an input error") {
        TempFile bad("cli_bad.csv", "year,stuff\n2000,1\n");
        const auto r = run(cli() + " fit --input " + bad.quoted() + " 2>&1");
        REQUIRE(r.exit_code == 2);
        REQUIRE(r.out.find("error:") != std::string::npos);
    }
}

TEST_CASE("cli breakeven finds the default-model crossing in 2016") {
    const std::string params = shell_quote(data_path("defaults.json"));
    const auto r = run(cli() + " breakeven --params " + params + " --year 2016");
    REQUIRE(r.exit_code == 0);
    REQUIRE(value_of(r.out, "year") == "2016");
    REQUIRE(to_double(value_of(r.out, "crossing_length_m")) > 0.01);

    SECTION("repeated invocations are byte-identical") {
        const auto again = run(cli() + " breakeven --params " + params + " --year 2016");
        REQUIRE(again.exit_code == 0);
        REQUIRE(again.out == r.out);
    }
}

TEST_CASE("cli breakeven reports dominance when nothing crosses") {
    TempFile params("cli_no_crossing.json", kNoCrossingJson);
    const auto r = run(cli() + " breakeven --params " + params.quoted() + " --year 2016");
    REQUIRE(r.exit_code == 3);
    REQUIRE(r.out.find("crossing=none") != std::string::npos);
    REQUIRE(value_of(r.out, "dominant") == "electrical");
}

TEST_CASE("cli surface emits a parseable grid") {
    const std::string params = shell_quote(data_path("defaults.json"));
    TempFile grid_csv("cli_grid.csv", "");
    TempFile crossing_csv("cli_crossing.csv", "");
    TempFile svg("cli_surface.svg", "");

    const auto r = run(cli() + " surface --params " + params +
                       " --years 2016:2030:3 --lengths 1e-4:1:5log --out " + grid_csv.quoted() +
                       " --crossing-out " + crossing_csv.quoted() + " --svg " + svg.quoted());
    REQUIRE(r.exit_code == 0);
    REQUIRE(value_of(r.out, "rows") == "15");
    REQUIRE(value_of(r.out, "crossings") == "3");

    std::ifstream in(grid_csv.path);
    const clear::SurfaceGrid grid = clear::parse_grid_csv(in);
    REQUIRE(grid.years == std::vector<double>{2016.0, 2023.0, 2030.0});
    REQUIRE(grid.lengths.size() == 5);
    REQUIRE(grid.lengths.front() == 1e-4);
    REQUIRE(grid.lengths.back() == 1.0);

    const std::string crossing = slurp(crossing_csv.path);
    REQUIRE(crossing.rfind("year,crossing_length_m\n", 0) == 0);

    const std::string doc = slurp(svg.path);
    REQUIRE(doc.size() ==
            static_cast<std::size_t>(to_int(value_of(r.out, "svg_bytes"))));
    REQUIRE(testsupport::xml_check(doc).empty());

    SECTION("the grid file is reproducible") {
        TempFile second("cli_grid_again.csv", "");
        const auto again = run(cli() + " surface --params " + params +
                               " --years 2016:2030:3 --lengths 1e-4:1:5log --out " +
                               second.quoted());
        REQUIRE(again.exit_code == 0);
        REQUIRE(slurp(second.path) == slurp(grid_csv.path));
    }
    SECTION("a log year range is rejected") {
        const auto bad = run(cli() + " surface --params " + params +
                             " --years 2016:2030:3log --lengths 1e-4:1:5log --out " +
                             grid_csv.quoted() + " 2>&1");
        REQUIRE(bad.exit_code == 2);
        REQUIRE(bad.out.find("linear") != std::string::npos);
    }
}

TEST_CASE("cli select ranks options under a context") {
    TempFile options("cli_options.json", R"([
        {"label": "X", "factors": {"capability_bps": 20, "latency_s": 1, "energy_j_per_bit": 2,
                                   "amount_value": 1, "amount_dim": "area_m2",
                                   "resistance_usd": 1}},
        {"label": "Y", "factors": {"capability_bps": 6, "latency_s": 1, "energy_j_per_bit": 1,
                                   "amount_value": 1, "amount_dim": "area_m2",
                                   "resistance_usd": 1}}
    ])");
    TempFile context("cli_context.json", R"({
        "battery_fraction": 0.0, "load_fraction": 0.0,
        "footprint_pressure": 0.0, "latency_sensitivity": 0.0
    })");
    TempFile policy("cli_policy.json", R"({"energy_gain": 2.0})");

    const auto r = run(cli() + " select --options " + options.quoted() + " --context " +
                       context.quoted() + " --policy " + policy.quoted());
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out ==
            "selected=Y\n"
            "value=6\n"
            "weights=1,1,3,1,1\n"
            "option Y value=6\n"
            "option X value=2.5\n");

    SECTION("without a policy the plugged-in option wins") {
        const auto base = run(cli() + " select --options " + options.quoted() + " --context " +
                              context.quoted());
        REQUIRE(base.exit_code == 0);
        REQUIRE(value_of(base.out, "selected") == "X");
    }
}
