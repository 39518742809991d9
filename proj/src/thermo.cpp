#include "qotto/thermo.hpp"

#include <cmath>
#include <limits>

#include "qotto/errors.hpp"

namespace qotto {

using linalg::ComplexMatrix;

ComplexMatrix bookkeeping_hamiltonian(const QubitParams& control) {
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h(kExcited, kExcited) = control.delta;
    return h;
}

ThermoLedger first_law_accumulate(const Trajectory& traj) {
    if (traj.size() < 2) {
        throw Error(ErrorCode::MissingHamiltonian, "ledger needs at least two samples");
    }
    if (traj.controls.size() != traj.size() || traj.states.size() != traj.size() ||
        traj.strokes.size() != traj.size()) {
        throw Error(ErrorCode::MissingHamiltonian, "every sample needs a recorded control");
    }

    ThermoLedger ledger;
    const std::size_t n = traj.size() - 1;
    ledger.dW.reserve(n);
    ledger.dQ.reserve(n);
    ledger.interval_stroke.reserve(n);

    double work_on = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const ComplexMatrix h0 = bookkeeping_hamiltonian(traj.controls[k]);
        const ComplexMatrix h1 = bookkeeping_hamiltonian(traj.controls[k + 1]);
        const ComplexMatrix& r0 = traj.states[k].matrix();
        const ComplexMatrix& r1 = traj.states[k + 1].matrix();
        const double dw = (r0 * (h1 - h0)).trace().real();
        const double dq = (h1 * (r1 - r0)).trace().real();
        const int stroke = traj.strokes[k + 1];

        ledger.dW.push_back(dw);
        ledger.dQ.push_back(dq);
        ledger.interval_stroke.push_back(stroke);
        work_on += dw;
        if (dq > 0.0) ledger.Q_in += dq;
        if (dq < 0.0) ledger.Q_out += dq;

        const double dt = traj.times[k + 1] - traj.times[k];
        auto [it, inserted] = ledger.strokes.try_emplace(stroke);
        StrokeTotals& totals = it->second;
        if (inserted) totals.first_sample = k + 1;
        totals.last_sample = k + 1;
        totals.work_on += dw;
        totals.heat += dq;
        totals.duration += dt;
        if (stroke != 0) ledger.cycle_duration += dt;
    }
    ledger.W_net = -work_on;
    return ledger;
}

double output_power(const ThermoLedger& ledger) {
    if (!(ledger.cycle_duration > 0.0)) {
        throw Error(ErrorCode::ValidationError, "cycle duration must be > 0");
    }
    return ledger.W_net / ledger.cycle_duration;
}

double eta_conventional(const ThermoLedger& ledger) {
    if (!(ledger.Q_in > 0.0)) throw Error(ErrorCode::NoHeatAbsorbed, "Q_in <= 0");
    return ledger.W_net / ledger.Q_in;
}

double eta_otto(double delta_min, double delta_max) {
    if (!(delta_max > 0.0)) throw Error(ErrorCode::ValidationError, "delta_max must be > 0");
    return 1.0 - delta_min / delta_max;
}

HeatingStrokeInfo heating_stroke_info(const Trajectory& cycle, const QubitParams& heating,
                                      double delta_min, int stroke) {
    std::size_t first = cycle.size();
    std::size_t last = 0;
    for (std::size_t k = 1; k < cycle.size(); ++k) {
        if (cycle.strokes[k] != stroke) continue;
        first = std::min(first, k);
        last = k;
    }
    if (first == cycle.size()) {
        throw Error(ErrorCode::ValidationError, "trajectory has no heating stroke");
    }
    HeatingStrokeInfo info;
    info.p_start = cycle.states[first - 1].excited_population();
    info.p_end = cycle.states[last].excited_population();
    info.p_steady = analytic_steady_state(heating).excited_population();
    info.delta_min = delta_min;
    info.delta_max = heating.delta;
    return info;
}

QuantumEfficiency eta_quantum(const HeatingStrokeInfo& info) {
    const double gap = info.p_steady - info.p_start;
    if (std::abs(gap) < 1e-12) {
        throw Error(ErrorCode::DegenerateDenominator, "|P_L - P_S| < 1e-12");
    }
    const double eta_o = eta_otto(info.delta_min, info.delta_max);
    QuantumEfficiency out;
    out.work = (info.p_end - info.p_start) * (info.delta_max - info.delta_min);
    out.heat_in = gap * info.delta_max;
    out.eta_q = out.work / out.heat_in;
    out.identity = (1.0 + (info.p_end - info.p_steady) / gap) * eta_o;
    return out;
}

Temperature effective_temperature(const DensityMatrix& rho, double delta) {
    if (delta == 0.0) return {0.0, TemperatureFlag::ZeroDetuning};
    const double pe = rho.excited_population();
    const double pg = rho.ground_population();
    if (pe <= 0.0 || pg <= 0.0) return {0.0, TemperatureFlag::ZeroPopulation};
    const double log_ratio = std::log(pg / pe);
    if (log_ratio == 0.0) {
        return {std::numeric_limits<double>::infinity(), TemperatureFlag::Infinite};
    }
    return {delta / log_ratio, TemperatureFlag::Finite};
}

double l1_coherence(const DensityMatrix& rho) {
    const ComplexMatrix& m = rho.matrix();
    double total = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j) total += std::abs(m(i, j));
    return total;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const ComplexMatrix h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const double p = solver.eigenvalues()(k);
        if (p > 1e-14) s -= p * std::log(p);
    }
    return s;
}

Observables observe(const DensityMatrix& rho, double delta) {
    Observables o;
    o.p_e = rho.excited_population();
    o.p_g = rho.ground_population();
    o.rho_eg = rho.coherence_eg();
    o.t_eff = effective_temperature(rho, delta);
    o.c_l1 = l1_coherence(rho);
    o.entropy = von_neumann_entropy(rho);
    return o;
}

std::vector<Observables> compute_observables(const Trajectory& traj) {
    std::vector<Observables> out;
    out.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out.push_back(observe(traj.states[k], traj.controls[k].delta));
    }
    return out;
}

} // namespace qotto
