// thermo.hpp: First-law bookkeeping and thermodynamic figures of merit

#pragma once

#include <map>
#include <vector>

#include "qotto/density_matrix.hpp"
#include "qotto/dynamics.hpp"

namespace qotto {

// Energies use ħ = 1 (rad/s); temperatures use k_B = 1.

// Bare level splitting Δ|e⟩⟨e| used for energy bookkeeping.
linalg::ComplexMatrix bookkeeping_hamiltonian(const QubitParams& control);

struct StrokeTotals {
    double work_on{0.0};  // Σ dW, work done on the system
    double heat{0.0};     // Σ dQ
    double duration{0.0};
    std::size_t first_sample{0};  // first sample inside the stroke
    std::size_t last_sample{0};
};

struct ThermoLedger {
    // Interval k runs from sample k to sample k + 1.
    std::vector<double> dW;
    std::vector<double> dQ;
    std::vector<int> interval_stroke;
    std::map<int, StrokeTotals> strokes;

    double Q_in{0.0};   // Σ dQ > 0
    double Q_out{0.0};  // Σ dQ < 0, signed
    double W_net{0.0};  // work extracted, −Σ dW
    double cycle_duration{0.0};  // strokes 1–4 only; wait (label 0) excluded
};

// dW_k = tr(ρ_k (H_{k+1} − H_k)),  dQ_k = tr(H_{k+1} (ρ_{k+1} − ρ_k)).
// Exact for piecewise-constant controls. Throws MissingHamiltonian.
ThermoLedger first_law_accumulate(const Trajectory& traj);

// W_net / cycle_duration.
double output_power(const ThermoLedger& ledger);

// W_net / Q_in. Throws NoHeatAbsorbed if Q_in ≤ 0.
double eta_conventional(const ThermoLedger& ledger);

// 1 − Δ_min/Δ_max.
double eta_otto(double delta_min, double delta_max);

struct HeatingStrokeInfo {
    double p_start{0.0};   // P_e entering the heating stroke
    double p_end{0.0};     // P_e at the end of the heating stroke
    double p_steady{0.0};  // steady-state P_e of the heating parameters
    double delta_min{0.0};
    double delta_max{0.0};
};

// Reads the heating stroke (label `stroke`) of a single-cycle trajectory.
HeatingStrokeInfo heating_stroke_info(const Trajectory& cycle, const QubitParams& heating,
                                      double delta_min, int stroke = 2);

struct QuantumEfficiency {
    double eta_q{0.0};     // W_q / Q_in^q
    double identity{0.0};  // (1 + ΔP_e/(P_L − P_S)) η_o
    double work{0.0};      // W_q = (P_end − P_S)(Δ_max − Δ_min)
    double heat_in{0.0};   // Q_in^q = (P_L − P_S) Δ_max
};

// Throws DegenerateDenominator if |P_L − P_S| < 1e-12.
QuantumEfficiency eta_quantum(const HeatingStrokeInfo& info);

enum class TemperatureFlag { Finite, ZeroDetuning, ZeroPopulation, Infinite };

struct Temperature {
    double value{0.0};
    TemperatureFlag flag{TemperatureFlag::Finite};
};

// T = Δ / ln(P_g/P_e).
Temperature effective_temperature(const DensityMatrix& rho, double delta);

double l1_coherence(const DensityMatrix& rho);

// −Σ p ln p over eigenvalues, ignoring p ≤ 1e-14.
double von_neumann_entropy(const DensityMatrix& rho);

struct Observables {
    double p_e{0.0};
    double p_g{0.0};
    linalg::Complex rho_eg;
    Temperature t_eff;
    double c_l1{0.0};
    double entropy{0.0};
};

Observables observe(const DensityMatrix& rho, double delta);
std::vector<Observables> compute_observables(const Trajectory& traj);

} // namespace qotto
