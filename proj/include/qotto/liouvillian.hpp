// liouvillian.hpp: Two- and three-level Liouvillians, spectra, LEP and steady states

#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qotto/density_matrix.hpp"
#include "qotto/linalg.hpp"

namespace qotto {

// Control triple for the driven, decaying qubit. Angular frequencies in
// rad/s, decay in 1/s.
struct QubitParams {
    double delta{0.0};      // detuning Δ
    double omega{0.0};      // Rabi drive Ω
    double gamma_eff{0.0};  // effective decay e → g

    void validate() const;  // throws ValidationError on negative Ω or γ_eff
    bool operator==(const QubitParams&) const = default;
};

// Three-level model |g⟩, |e⟩, |p⟩ in the interaction picture.
struct ThreeLevelParams {
    double delta{0.0};    // detuning of |e⟩
    double omega{0.0};    // g ↔ e drive
    double omega_p{0.0};  // e ↔ p coupling
    double gamma_g{0.0};  // p → g decay
    double gamma_e{0.0};  // p → e decay

    double gamma() const { return gamma_g + gamma_e; }
    void validate() const;
};

enum class Phase { Exact, Broken, AtLEP };

std::string to_string(Phase phase);

struct PhaseClass {
    Phase phase{Phase::Exact};
    double ratio{0.0};   // Ω/γ_eff (infinite when γ_eff = 0)
    linalg::Complex xi;  // √(γ_eff² − 16Ω²), principal branch
};

inline constexpr double kDefaultLepTolerance = 1e-9;

// H = Δ|e⟩⟨e| + (Ω/2)(|e⟩⟨g| + |g⟩⟨e|) in the basis (|g⟩, |e⟩).
linalg::ComplexMatrix build_hamiltonian(const QubitParams& p);

// 4×4 generator acting on (ρ_ee, ρ_eg, ρ_ge, ρ_gg).
linalg::ComplexMatrix build_liouvillian(const QubitParams& p);

// Generic Lindblad superoperator for row-major vec(ρ):
//   −i(H⊗1 − 1⊗Hᵀ) + Σ_k [L_k⊗L_k* − ½(L_k†L_k⊗1) − ½(1⊗(L_k†L_k)ᵀ)]
linalg::ComplexMatrix lindblad_superoperator(const linalg::ComplexMatrix& hamiltonian,
                                             const std::vector<linalg::ComplexMatrix>& jumps);

// 9×9 generator for the three-level model, row-major vec in basis (g, e, p).
linalg::ComplexMatrix build_liouvillian_three_level(const ThreeLevelParams& t);

// Closed-form Δ = 0 spectrum of the 4×4 generator, {0, −γ/2, (−3γ−ξ)/4, (−3γ+ξ)/4},
// from its characteristic polynomial λ(2λ + γ)(2λ² + 3γλ + γ² + 2Ω²)/4.
// Throws DeltaNotZero.
std::array<linalg::Complex, 4> analytic_eigenvalues(const QubitParams& p);

linalg::Complex xi(const QubitParams& p);

// Throws DegenerateParams when Ω = γ_eff = 0.
PhaseClass classify_phase(const QubitParams& p, double tol_lep = kDefaultLepTolerance);

// Unique steady state from the numerical kernel of the Liouvillian.
// Throws NonUniqueSteadyState if the kernel is not one-dimensional,
// ZeroGamma if γ_eff = 0.
DensityMatrix steady_state(const QubitParams& p);

// Standard resonance-fluorescence steady state, valid for any Δ:
//   ρ_ee = (Ω²/4) / (Δ² + γ²/4 + Ω²/2),  ρ_eg = i(Ω/2)(ρ_ee − ρ_gg)/(γ/2 + iΔ).
DensityMatrix analytic_steady_state(const QubitParams& p);

// γ_eff = γ_g Ω_p² / γ², with γ = γ_g + γ_e. Throws ZeroGamma.
double effective_decay_rate(const ThreeLevelParams& t);

// --- exceptional-point location --------------------------------------------

// Builds the generator at a given Ω/γ_eff ratio. gamma_eff is the rate the
// ratio is expressed against.
struct SpectrumSource {
    std::string name;
    double gamma_eff{1.0};
    std::function<linalg::ComplexMatrix(double ratio)> build;
};

SpectrumSource two_level_source(double gamma_eff = 1.0);
// Ω is set to ratio·γ_eff with γ_eff from effective_decay_rate(base).
SpectrumSource three_level_source(const ThreeLevelParams& base);

// The two eigenvalues nearest −3γ_eff/4 after dropping the zero mode and the
// real eigenvalue nearest −γ_eff/2. Returned in eig() order.
std::pair<linalg::Complex, linalg::Complex> slow_pair(const std::vector<linalg::Complex>& eigenvalues,
                                                      double gamma_eff);

// Re[(λa − λb)²]: positive in the broken phase, negative in the exact phase.
double splitting_discriminant(const std::pair<linalg::Complex, linalg::Complex>& pair);

struct LepScan {
    double ratio_lo{0.15};
    double ratio_hi{0.35};
    double rel_tol{1e-4};
};

struct LepResult {
    double ratio{0.0};
    int iterations{0};
};

// Bisection on the sign of the slow-pair discriminant. Throws NoBracket.
LepResult lep_locate(const LepScan& scan, const SpectrumSource& source);

} // namespace qotto
