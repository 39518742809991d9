// otto.hpp: Four-stroke Otto cycle, regime presets and parameter sweeps

#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qotto/dynamics.hpp"
#include "qotto/thermo.hpp"

namespace qotto {

enum class StrokeRole { AdiabaticCompression, IsochoricHeating, AdiabaticExpansion, IsochoricCooling };

struct StrokeParams {
    double omega{0.0};      // rad/s
    double gamma_eff{0.0};  // 1/s
    StrokeRole role{StrokeRole::AdiabaticCompression};
};

enum class RampMode { Staircase, LinearRamp };
enum class Regime { ExactExact, BrokenBroken, ExactBroken };

std::string to_string(Regime regime);
std::string to_string(RampMode mode);
Regime parse_regime(const std::string& name);    // "exact-exact", ...
RampMode parse_ramp_mode(const std::string& name);  // "staircase" | "linear"

struct WaitSettings {
    bool enabled{true};
    double tol{1e-8};
    double t_max{0.0};  // ≤ 0 selects 200/γ_eff of the cooling stroke
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kAomStep = kTwoPi * 2e3;

struct OttoCycleSpec {
    double delta_min{0.0};
    double delta_max{kTwoPi * 10e3};
    std::array<StrokeParams, 4> strokes{};  // in stroke order 1..4
    double t1{2e-6};
    double t2{12e-6};
    double t3{2e-6};
    double t4{20e-6};
    WaitSettings wait;
    RampMode ramp_mode{RampMode::Staircase};
    double aom_step{kAomStep};
    double sample_dt{50e-9};

    void validate() const;  // throws ValidationError
    // Control of stroke i (1..4) at detuning Δ.
    QubitParams control(int stroke, double delta) const;
    QubitParams heating() const { return control(2, delta_max); }
    QubitParams cooling() const { return control(4, delta_min); }
    double stroke_time_total() const { return t1 + t2 + t3 + t4; }
};

OttoCycleSpec preset(Regime regime);

// Segments for strokes 1–4 (no wait).
Schedule build_cycle_schedule(const OttoCycleSpec& spec);

struct CycleSlice {
    std::size_t first{0};  // sample shared with the previous cycle's end
    std::size_t last{0};
    double wait_duration{0.0};
};

struct CycleRun {
    Trajectory trajectory;
    std::vector<CycleSlice> cycles;
    std::vector<ThermoLedger> ledgers;

    Trajectory cycle_trajectory(std::size_t c) const;
};

// Starts from the cooling steady state at Δ_min unless rho0 is given.
CycleRun run_cycle(const OttoCycleSpec& spec, const std::optional<DensityMatrix>& rho0 = std::nullopt,
                   int n_cycles = 2);

struct CycleMetrics {
    ThermoLedger ledger;
    double W_net{0.0};
    double P_out{0.0};
    double eta_c{0.0};
    double eta_o{0.0};
    HeatingStrokeInfo heating;
    QuantumEfficiency quantum;
};

// Metrics of cycle `c` (default: the last one).
CycleMetrics evaluate_cycle(const OttoCycleSpec& spec, const CycleRun& run,
                            std::optional<std::size_t> c = std::nullopt);

struct SweepRow {
    double t2{0.0};
    double W{0.0};  // rad/s
    double P{0.0};  // rad/s per second
    double eta_c{0.0};
    double eta_q{0.0};
    double eta_q_identity{0.0};
};

std::vector<double> default_t2_grid();

// One converged cycle per t2. Points run concurrently; rows keep input order.
std::vector<SweepRow> sweep_t2(const OttoCycleSpec& spec, const std::vector<double>& t2_values,
                               int n_cycles = 2);

struct RatioRow {
    double ratio{0.0};
    double t2{0.0};
    double W{0.0};
};

// Heating Ω set to ratio·γ_eff(heating) for each ratio.
std::vector<RatioRow> sweep_ratio(const OttoCycleSpec& base, const std::vector<double>& ratios,
                                  const std::vector<double>& t2_values, int n_cycles = 2);

// --- trace features ---------------------------------------------------------

// P_e over stroke `stroke` of a single-cycle trajectory, starting with the
// sample that enters the stroke.
std::vector<double> stroke_population(const Trajectory& cycle, int stroke);

// Interior maximum exceeding both endpoints by more than tol.
bool has_hump(const std::vector<double>& series, double tol);
// Interior minimum below the final value by more than tol.
bool has_ramp(const std::vector<double>& series, double tol);
bool is_nondecreasing(const std::vector<double>& series, double tol);

// Index of the first interior local maximum, or -1.
int first_local_max(const std::vector<double>& series);

} // namespace qotto
