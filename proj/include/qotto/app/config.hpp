// config.hpp: JSON run configuration for the qotto front end

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qotto/liouvillian.hpp"
#include "qotto/otto.hpp"

namespace qotto::app {

enum class Command { Spectrum, Steady, Cycle, SweepT2, SweepRatio, LepLocate, ThreeLevelCompare };

std::string to_string(Command command);
Command parse_command(const std::string& name);

// User-facing stroke override, in the units of the figure captions.
struct StrokeKhz {
    double omega_khz{0.0};  // Ω/2π in kHz
    double gamma_khz{0.0};  // γ_eff in kHz (no 2π)
};

// User-facing fields are in kHz and µs; the accessors convert to rad/s, 1/s
// and seconds.
struct RunConfig {
    Command command{Command::Spectrum};

    // spectrum / steady
    double delta_khz{0.0};  // Δ/2π
    double omega_khz{0.0};  // Ω/2π
    double gamma_khz{0.0};  // γ_eff

    // cycle / sweeps
    Regime preset{Regime::ExactExact};
    std::array<std::optional<StrokeKhz>, 4> strokes{};  // overrides, stroke order 1..4
    double delta_min_khz{0.0};
    double delta_max_khz{10.0};
    double t1_us{2.0};
    double t2_us{12.0};
    double t3_us{2.0};
    double t4_us{20.0};
    std::vector<double> t2_values_us;  // empty: 0.5, 1.0, ..., 20
    std::vector<double> ratio_values;  // sweep-ratio: heating Ω/γ_eff
    RampMode ramp{RampMode::Staircase};
    int n_cycles{2};
    double sample_dt_us{0.05};
    bool wait{true};

    // shot-noise emulation
    std::int64_t shots{0};
    std::uint64_t seed{0};

    // three-level model
    double gamma_g_khz{10000.0};
    double gamma_e_khz{0.0};
    double omega_p_over_gamma{0.1};

    // lep-locate / three-level-compare
    double ratio_min{0.15};
    double ratio_max{0.35};
    double rel_tol{1e-4};
    std::vector<double> compare_ratios;  // three-level-compare Ω/γ_eff grid; empty: default

    QubitParams qubit_params() const;
    OttoCycleSpec cycle_spec() const;
    std::vector<double> t2_values_s() const;
    ThreeLevelParams three_level_params() const;  // Ω left at 0
    LepScan lep_scan() const;
    std::vector<double> compare_grid() const;

    void validate() const;  // throws ValidationError
};

// Command-line values that take precedence over the file.
struct ConfigOverrides {
    std::optional<std::string> command;
    std::optional<std::int64_t> shots;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> preset;
    std::optional<std::string> ramp;
};

// Throws ParseError (with byte position) or ValidationError (field and constraint).
RunConfig parse_config(const std::string& text, const ConfigOverrides& overrides = {});

// Effective configuration; parse_config(to_json(c).dump()) reproduces it.
nlohmann::json to_json(const RunConfig& config);

} // namespace qotto::app
