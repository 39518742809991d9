#include "qotto/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qotto/errors.hpp"

namespace qotto {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

namespace {
constexpr Complex I{0.0, 1.0};
}

void QubitParams::validate() const {
    if (!std::isfinite(delta) || !std::isfinite(omega) || !std::isfinite(gamma_eff)) {
        throw Error(ErrorCode::ValidationError, "qubit parameters must be finite");
    }
    if (omega < 0.0) throw Error(ErrorCode::ValidationError, "omega must be >= 0");
    if (gamma_eff < 0.0) throw Error(ErrorCode::ValidationError, "gamma_eff must be >= 0");
}

void ThreeLevelParams::validate() const {
    for (double v : {omega, omega_p, gamma_g, gamma_e}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::ValidationError, "three-level rates must be finite and >= 0");
        }
    }
    if (!std::isfinite(delta)) throw Error(ErrorCode::ValidationError, "delta must be finite");
}

std::string to_string(Phase phase) {
    switch (phase) {
    case Phase::Exact: return "exact";
    case Phase::Broken: return "broken";
    case Phase::AtLEP: return "lep";
    }
    return "unknown";
}

ComplexMatrix build_hamiltonian(const QubitParams& p) {
    p.validate();
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h(kExcited, kExcited) = p.delta;
    h(kExcited, kGround) = 0.5 * p.omega;
    h(kGround, kExcited) = 0.5 * p.omega;
    return h;
}

ComplexMatrix build_liouvillian(const QubitParams& p) {
    p.validate();
    const double g = p.gamma_eff;
    const Complex half_drive = 0.5 * I * p.omega;
    ComplexMatrix l(4, 4);
    // rows/cols: ρ_ee, ρ_eg, ρ_ge, ρ_gg
    l << -g, half_drive, -half_drive, 0.0,
         half_drive, -(0.5 * g + I * p.delta), 0.0, -half_drive,
         -half_drive, 0.0, -(0.5 * g - I * p.delta), half_drive,
         g, -half_drive, half_drive, 0.0;
    return l;
}

ComplexMatrix lindblad_superoperator(const ComplexMatrix& hamiltonian,
                                     const std::vector<ComplexMatrix>& jumps) {
    const Eigen::Index d = hamiltonian.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    auto kron = [d](const ComplexMatrix& a, const ComplexMatrix& b) {
        ComplexMatrix out(d * d, d * d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) out.block(i * d, j * d, d, d) = a(i, j) * b;
        return out;
    };
    ComplexMatrix l = -I * (kron(hamiltonian, id) - kron(id, hamiltonian.transpose()));
    for (const ComplexMatrix& jump : jumps) {
        const ComplexMatrix jdj = jump.adjoint() * jump;
        l += kron(jump, jump.conjugate()) - 0.5 * kron(jdj, id) - 0.5 * kron(id, jdj.transpose());
    }
    return l;
}

ComplexMatrix build_liouvillian_three_level(const ThreeLevelParams& t) {
    t.validate();
    ComplexMatrix h = ComplexMatrix::Zero(3, 3);
    h(kExcited, kExcited) = t.delta;
    h(kExcited, kGround) = h(kGround, kExcited) = 0.5 * t.omega;
    h(kExcited, kAuxiliary) = h(kAuxiliary, kExcited) = 0.5 * t.omega_p;

    ComplexMatrix to_ground = ComplexMatrix::Zero(3, 3);
    to_ground(kGround, kAuxiliary) = std::sqrt(t.gamma_g);
    ComplexMatrix to_excited = ComplexMatrix::Zero(3, 3);
    to_excited(kExcited, kAuxiliary) = std::sqrt(t.gamma_e);
    return lindblad_superoperator(h, {to_ground, to_excited});
}

Complex xi(const QubitParams& p) {
    return std::sqrt(Complex(p.gamma_eff * p.gamma_eff - 16.0 * p.omega * p.omega, 0.0));
}

std::array<Complex, 4> analytic_eigenvalues(const QubitParams& p) {
    p.validate();
    if (p.delta != 0.0) {
        throw Error(ErrorCode::DeltaNotZero, "closed-form spectrum requires delta = 0");
    }
    const double g = p.gamma_eff;
    const Complex x = xi(p);
    return {Complex(0.0), Complex(-0.5 * g), (-3.0 * g - x) / 4.0, (-3.0 * g + x) / 4.0};
}

PhaseClass classify_phase(const QubitParams& p, double tol_lep) {
    p.validate();
    if (p.omega == 0.0 && p.gamma_eff == 0.0) {
        throw Error(ErrorCode::DegenerateParams, "omega and gamma_eff are both zero");
    }
    PhaseClass out;
    out.ratio = p.gamma_eff > 0.0 ? p.omega / p.gamma_eff : std::numeric_limits<double>::infinity();
    out.xi = xi(p);
    const double four_omega = 4.0 * p.omega;
    if (std::abs(p.gamma_eff - four_omega) <= tol_lep * std::max(p.gamma_eff, four_omega)) {
        out.phase = Phase::AtLEP;
    } else if (p.gamma_eff < four_omega) {
        out.phase = Phase::Exact;
    } else {
        out.phase = Phase::Broken;
    }
    return out;
}

DensityMatrix steady_state(const QubitParams& p) {
    p.validate();
    if (!(p.gamma_eff > 0.0)) throw Error(ErrorCode::ZeroGamma, "steady state needs gamma_eff > 0");
    const ComplexMatrix l = build_liouvillian(p);
    const std::vector<ComplexVector> kernel = linalg::nullspace(l);
    if (kernel.size() != 1) {
        throw Error(ErrorCode::NonUniqueSteadyState,
                    "kernel dimension " + std::to_string(kernel.size()));
    }
    ComplexMatrix rho = from_liouville_vector(kernel.front());
    rho /= rho.trace();
    // Remove the rounding-level anti-Hermitian residue left by the SVD.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(std::move(rho));
}

DensityMatrix analytic_steady_state(const QubitParams& p) {
    p.validate();
    if (!(p.gamma_eff > 0.0)) throw Error(ErrorCode::ZeroGamma, "steady state needs gamma_eff > 0");
    const double quarter_drive2 = 0.25 * p.omega * p.omega;
    const double pe = quarter_drive2 /
                      (p.delta * p.delta + 0.25 * p.gamma_eff * p.gamma_eff + 2.0 * quarter_drive2);
    const Complex eg = I * (0.5 * p.omega) * (pe - (1.0 - pe)) / (0.5 * p.gamma_eff + I * p.delta);
    ComplexMatrix rho(2, 2);
    rho(kExcited, kExcited) = pe;
    rho(kGround, kGround) = 1.0 - pe;
    rho(kExcited, kGround) = eg;
    rho(kGround, kExcited) = std::conj(eg);
    return DensityMatrix(std::move(rho));
}

double effective_decay_rate(const ThreeLevelParams& t) {
    t.validate();
    const double gamma = t.gamma();
    if (!(gamma > 0.0)) throw Error(ErrorCode::ZeroGamma, "gamma_g + gamma_e must be > 0");
    return t.gamma_g * t.omega_p * t.omega_p / (gamma * gamma);
}

SpectrumSource two_level_source(double gamma_eff) {
    SpectrumSource src;
    src.name = "two-level";
    src.gamma_eff = gamma_eff;
    src.build = [gamma_eff](double ratio) {
        return build_liouvillian(QubitParams{0.0, ratio * gamma_eff, gamma_eff});
    };
    return src;
}

SpectrumSource three_level_source(const ThreeLevelParams& base) {
    SpectrumSource src;
    src.name = "three-level";
    src.gamma_eff = effective_decay_rate(base);
    src.build = [base, g = src.gamma_eff](double ratio) {
        ThreeLevelParams t = base;
        t.omega = ratio * g;
        return build_liouvillian_three_level(t);
    };
    return src;
}

std::pair<Complex, Complex> slow_pair(const std::vector<Complex>& eigenvalues, double gamma_eff) {
    const double zero_tol = 1e-9 * gamma_eff;
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
        if (std::abs(eigenvalues[k]) > zero_tol) candidates.push_back(k);
    }
    // Drop the real coherence-decay mode nearest −γ_eff/2.
    const Complex half(-0.5 * gamma_eff, 0.0);
    auto coherence = candidates.end();
    for (auto it = candidates.begin(); it != candidates.end(); ++it) {
        if (std::abs(eigenvalues[*it].imag()) > zero_tol) continue;
        if (coherence == candidates.end() ||
            std::abs(eigenvalues[*it] - half) < std::abs(eigenvalues[*coherence] - half)) {
            coherence = it;
        }
    }
    if (coherence != candidates.end()) candidates.erase(coherence);
    if (candidates.size() < 2) {
        throw Error(ErrorCode::NoBracket, "spectrum has fewer than two slow eigenvalues");
    }
    const Complex centre(-0.75 * gamma_eff, 0.0);
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(eigenvalues[a] - centre) < std::abs(eigenvalues[b] - centre);
    });
    std::size_t a = candidates[0];
    std::size_t b = candidates[1];
    if (b < a) std::swap(a, b);
    return {eigenvalues[a], eigenvalues[b]};
}

double splitting_discriminant(const std::pair<Complex, Complex>& pair) {
    const Complex d = pair.first - pair.second;
    return (d * d).real();
}

LepResult lep_locate(const LepScan& scan, const SpectrumSource& source) {
    if (!(scan.ratio_lo > 0.0) || !(scan.ratio_hi > scan.ratio_lo) || !(scan.rel_tol > 0.0)) {
        throw Error(ErrorCode::ValidationError, "scan needs 0 < ratio_lo < ratio_hi and rel_tol > 0");
    }
    auto discriminant = [&](double ratio) {
        const linalg::SpectralResult spec = linalg::eig(source.build(ratio));
        return splitting_discriminant(slow_pair(spec.eigenvalues, source.gamma_eff));
    };
    double lo = scan.ratio_lo;
    double hi = scan.ratio_hi;
    double f_lo = discriminant(lo);
    const double f_hi = discriminant(hi);
    if (f_lo == 0.0) return {lo, 0};
    if (f_hi == 0.0) return {hi, 0};
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw Error(ErrorCode::NoBracket, "slow-pair discriminant has no sign change in [" +
                                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    LepResult out;
    while (hi - lo > scan.rel_tol * 0.5 * (hi + lo)) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = discriminant(mid);
        ++out.iterations;
        if (f_mid == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    out.ratio = 0.5 * (lo + hi);
    return out;
}

} // namespace qotto
