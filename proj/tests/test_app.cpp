#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qotto/app/commands.hpp"
#include "qotto/app/config.hpp"
#include "qotto/app/measurement.hpp"
#include "qotto/app/output.hpp"
#include "qotto/errors.hpp"

using namespace qotto;
using namespace qotto::app;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error for " << text);
    return ErrorCode::ValidationError;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("qotto_test_app_" + tag);
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("kHz fields convert to rad/s and 1/s") {
    const RunConfig c = parse_config(R"({"command":"spectrum","omega_khz":82,"gamma_khz":370})");
    CHECK(c.command == Command::Spectrum);
    const QubitParams p = c.qubit_params();
    CHECK(p.omega == doctest::Approx(5.1522e5).epsilon(1e-4));
    CHECK(p.gamma_eff == doctest::Approx(3.7e5));
    CHECK(p.delta == 0.0);
}

TEST_CASE("defaults and cycle conversion") {
    const RunConfig c = parse_config(R"({"command":"cycle","preset":"exact-broken","t2_us":4})");
    CHECK(c.shots == 0);
    CHECK(c.n_cycles == 2);
    const OttoCycleSpec spec = c.cycle_spec();
    CHECK(spec.t2 == doctest::Approx(4e-6));
    CHECK(spec.t4 == doctest::Approx(20e-6));
    CHECK(spec.delta_max == doctest::Approx(kTwoPi * 10e3));
    CHECK(spec.strokes[1].omega == doctest::Approx(kTwoPi * 90e3));
    CHECK(c.t2_values_s().size() == 40);
}

TEST_CASE("stroke overrides replace preset strokes") {
    const RunConfig c = parse_config(
        R"({"command":"cycle","preset":"exact-exact","strokes":{"heating":{"omega_khz":50,"gamma_khz":400}}})");
    const OttoCycleSpec spec = c.cycle_spec();
    CHECK(spec.strokes[1].omega == doctest::Approx(kTwoPi * 50e3));
    CHECK(spec.strokes[1].gamma_eff == doctest::Approx(400e3));
    CHECK(spec.strokes[0].omega == doctest::Approx(kTwoPi * 23e3));
    CHECK(code_of(R"({"command":"cycle","strokes":{"warming":{"omega_khz":1,"gamma_khz":1}}})") ==
          ErrorCode::ValidationError);
}

TEST_CASE("config errors") {
    CHECK(code_of(R"({"omega_khz":82,"gamma_khz":370})") == ErrorCode::ValidationError);
    CHECK(code_of(R"({"command":"spectrum","omega_khz":82,"gamma_khz":370,"shots":-1})") ==
          ErrorCode::ValidationError);
    CHECK(code_of(R"({"command":"teleport"})") == ErrorCode::ValidationError);
    CHECK(code_of(R"({"command":"cycle","preset":"none"})") == ErrorCode::ValidationError);
    CHECK(code_of(R"({"command":"cycle","bogus":1})") == ErrorCode::ValidationError);
    CHECK(code_of(R"({"command":"cycle","t2_us":"long"})") == ErrorCode::ValidationError);
    CHECK(code_of(R"({"command":"sweep-ratio"})") == ErrorCode::ValidationError);
    CHECK(code_of(R"({"command":"spectrum",)") == ErrorCode::ParseError);
    CHECK(code_of("[1, 2]") == ErrorCode::ParseError);
    try {
        parse_config("{\"command\": nope}");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("at byte") != std::string::npos);
    }
}

TEST_CASE("command-line overrides win over the file") {
    ConfigOverrides o;
    o.shots = 100;
    o.seed = 9;
    o.preset = "broken-broken";
    o.ramp = "linear";
    const RunConfig c = parse_config(R"({"command":"cycle","shots":5})", o);
    CHECK(c.shots == 100);
    CHECK(c.seed == 9);
    CHECK(c.preset == Regime::BrokenBroken);
    CHECK(c.ramp == RampMode::LinearRamp);

    ConfigOverrides cmd;
    cmd.command = "steady";
    CHECK(parse_config(R"({"gamma_khz":370})", cmd).command == Command::Steady);
    CHECK_THROWS_AS(parse_config(R"({"command":"cycle"})", cmd), Error);
}

TEST_CASE("to_json round-trips the effective config") {
    const char* texts[] = {
        R"({"command":"spectrum","omega_khz":82,"gamma_khz":370,"delta_khz":3})",
        R"({"command":"cycle","preset":"exact-broken","shots":1000,"seed":18446744073709551615})",
        R"({"command":"sweep-ratio","ratio_values":[0.1,0.2],"t2_values_us":[1,2.5],"ramp":"linear"})",
        R"({"command":"three-level-compare","omega_p_over_gamma":0.05,"compare_ratios":[0.2,0.3]})",
    };
    for (const char* text : texts) {
        const RunConfig c = parse_config(text);
        const nlohmann::json once = to_json(c);
        const nlohmann::json twice = to_json(parse_config(once.dump()));
        CHECK(once == twice);
    }
    const RunConfig c = parse_config(texts[1]);
    CHECK(to_json(c)["seed"].get<std::uint64_t>() == 18446744073709551615ULL);
}

TEST_CASE("shot emulation") {
    const MeasurementSample zero = emulate_shots(0.0, 1000, 1);
    CHECK(zero.mean == 0.0);
    CHECK(zero.std == 0.0);
    const MeasurementSample one = emulate_shots(1.0, 1000, 1);
    CHECK(one.mean == 1.0);
    CHECK(one.std == 0.0);

    const MeasurementSample half = emulate_shots(0.5, 10000, 42);
    CHECK(half.std == doctest::Approx(0.005).epsilon(0.01));
    CHECK(half.std == doctest::Approx(std::sqrt(half.mean * (1.0 - half.mean) / 10000.0)));

    const MeasurementSample again = emulate_shots(0.5, 10000, 42);
    CHECK(again.mean == half.mean);
    CHECK(again.std == half.std);
    CHECK(emulate_shots(0.5, 10000, 43).mean != half.mean);

    for (double p : {0.02, 0.3, 0.77}) {
        const MeasurementSample big = emulate_shots(p, 1000000, 7);
        CHECK(std::abs(big.mean - p) <= 5.0 * big.std);
        CHECK(big.mean >= 0.0);
        CHECK(big.mean <= 1.0);
    }
    CHECK_THROWS_AS(emulate_shots(1.5, 10, 1), Error);
    CHECK_THROWS_AS(emulate_shots(0.5, 0, 1), Error);
}

TEST_CASE("number formatting and CSV emission") {
    CHECK(fmt(0.1) == "0.1");
    CHECK(fmt(1.0 / 3.0) == "0.333333333333");
    CHECK(fmt(5.0) == "5");
    CHECK(fmt(12LL) == "12");

    TempDir dir("csv");
    fs::create_directories(dir.path);
    Table t{kSweepT2Header, {}};
    try {
        emit_csv(t, dir.path / "empty.csv");
        FAIL("expected IoError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
    }
    t.add({"1", "2", "3", "4", "5"});
    emit_csv(t, dir.path / "one.csv");
    CHECK(slurp(dir.path / "one.csv") == std::string(kSweepT2Header) + "\n1,2,3,4,5\n");
    CHECK_THROWS_AS(emit_csv(t, dir.path / "missing" / "x.csv"), Error);
}

TEST_CASE("run writes the schematized files") {
    TempDir dir("run");
    SUBCASE("cycle") {
        const RunReport r = run(parse_config(R"({"command":"cycle","preset":"exact-broken","shots":100})"), dir.path);
        const std::string traj = slurp(dir.path / "trajectory.csv");
        CHECK(traj.rfind(std::string(kTrajectoryHeader) + "\n", 0) == 0);
        CHECK(traj.back() == '\n');
        CHECK(fs::exists(dir.path / "measurements.csv"));
        CHECK(r.files.back() == dir.path / "summary.json");
        const auto s = nlohmann::json::parse(slurp(dir.path / "summary.json"));
        CHECK(s["artifact_version"] == kArtifactVersion);
        CHECK(s["rng"] == kRngName);
        CHECK(s["config"] == to_json(parse_config(R"({"command":"cycle","preset":"exact-broken","shots":100})")));
        CHECK(s["efficiencies"]["eta_c"].get<double>() > 0.8);
    }
    SUBCASE("sweep-t2") {
        run(parse_config(R"({"command":"sweep-t2","preset":"broken-broken","t2_values_us":[1,4]})"), dir.path);
        const std::string csv = slurp(dir.path / "sweep.csv");
        CHECK(csv.rfind(std::string(kSweepT2Header) + "\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    }
    SUBCASE("spectrum and steady") {
        run(parse_config(R"({"command":"spectrum","omega_khz":1,"gamma_khz":4})"), dir.path);
        const std::string spectrum = slurp(dir.path / "spectrum.csv");
        CHECK(std::count(spectrum.begin(), spectrum.end(), '\n') == 5);
        run(parse_config(R"({"command":"steady","omega_khz":82,"gamma_khz":370,"shots":10000})"), dir.path);
        const auto s = nlohmann::json::parse(slurp(dir.path / "summary.json"));
        CHECK(s["measurement"]["shots"] == 10000);
    }
}

TEST_CASE("identical config and seed give byte-identical CSV") {
    const char* texts[] = {
        R"({"command":"cycle","preset":"exact-exact","shots":500,"seed":3})",
        R"({"command":"sweep-ratio","preset":"broken-broken","ratio_values":[0.1,0.3],"t2_values_us":[2,6]})",
        R"({"command":"lep-locate"})",
    };
    for (const char* text : texts) {
        TempDir a("det_a");
        TempDir b("det_b");
        const RunReport ra = run(parse_config(text), a.path);
        const RunReport rb = run(parse_config(text), b.path);
        REQUIRE(ra.files.size() == rb.files.size());
        for (std::size_t k = 0; k < ra.files.size(); ++k) {
            if (ra.files[k].extension() == ".csv") CHECK(slurp(ra.files[k]) == slurp(rb.files[k]));
        }
    }
}

TEST_CASE("run reports an unwritable output directory as IoError") {
    TempDir dir("blocked");
    fs::create_directories(dir.path);
    std::ofstream(dir.path / "file") << "x";
    try {
        run(parse_config(R"({"command":"spectrum","omega_khz":1,"gamma_khz":4})"), dir.path / "file" / "out");
        FAIL("expected IoError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
    }
}
