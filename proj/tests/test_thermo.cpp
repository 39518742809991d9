#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "qotto/errors.hpp"
#include "qotto/thermo.hpp"

using namespace qotto;
using linalg::Complex;
using linalg::ComplexMatrix;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

DensityMatrix diag_state(double pe) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(kExcited, kExcited) = pe;
    m(kGround, kGround) = 1.0 - pe;
    return DensityMatrix(m);
}

Segment constant(double duration, QubitParams p, int stroke) {
    Segment s;
    s.duration = duration;
    s.params = p;
    s.stroke = stroke;
    return s;
}

} // namespace

TEST_CASE("constant H with relaxing state: no work, heat equals the energy change") {
    const QubitParams p{kTwoPi * 10e3, kTwoPi * 30e3, 2e5};
    Schedule schedule;
    schedule.segments = {constant(20e-6, p, 2)};
    schedule.sample_dt = 0.1e-6;
    const Trajectory traj = propagate_schedule(DensityMatrix::excited(), schedule, p);
    const ThermoLedger ledger = first_law_accumulate(traj);
    CHECK(ledger.W_net == 0.0);
    const double du = p.delta * (traj.states.back().excited_population() - 1.0);
    CHECK(ledger.Q_in + ledger.Q_out == doctest::Approx(du).epsilon(1e-12));
    CHECK(ledger.strokes.at(2).heat == doctest::Approx(du).epsilon(1e-12));
}

TEST_CASE("constant state through a detuning ramp: W = P_e * delta_max, Q = 0") {
    const double pe = 0.3;
    const double delta_max = kTwoPi * 10e3;
    Trajectory traj;
    const int n = 50;
    for (int k = 0; k <= n; ++k) {
        traj.push(k * 1e-8, diag_state(pe), {delta_max * k / n, 0.0, 1.0}, 1);
    }
    const ThermoLedger ledger = first_law_accumulate(traj);
    CHECK(ledger.strokes.at(1).work_on == doctest::Approx(pe * delta_max).epsilon(1e-12));
    CHECK(ledger.W_net == doctest::Approx(-pe * delta_max).epsilon(1e-12));
    CHECK(ledger.Q_in == 0.0);
    CHECK(ledger.Q_out == 0.0);
}

TEST_CASE("per-step first law and increment definitions") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Trajectory traj;
    for (int k = 0; k < 40; ++k) {
        traj.push(k * 1e-7, diag_state(u(rng)), {1e4 * u(rng), 0.0, 1.0}, 1 + k % 4);
    }
    const ThermoLedger ledger = first_law_accumulate(traj);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        const double u0 = traj.controls[k].delta * traj.states[k].excited_population();
        const double u1 = traj.controls[k + 1].delta * traj.states[k + 1].excited_population();
        CHECK(ledger.dW[k] + ledger.dQ[k] == doctest::Approx(u1 - u0).epsilon(1e-10).scale(1e4));
        const double dw = traj.states[k].excited_population() *
                          (traj.controls[k + 1].delta - traj.controls[k].delta);
        CHECK(ledger.dW[k] == doctest::Approx(dw).scale(1e4));
        total += ledger.dQ[k];
    }
    CHECK(ledger.Q_in + ledger.Q_out == doctest::Approx(total));
    CHECK(ledger.Q_out <= 0.0);
    CHECK(ledger.Q_in >= 0.0);
}

TEST_CASE("ledger needs controls") {
    Trajectory one;
    one.push(0.0, diag_state(0.1), {0.0, 0.0, 1.0}, 1);
    try {
        first_law_accumulate(one);
        FAIL("expected MissingHamiltonian");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingHamiltonian);
    }
    Trajectory broken = one;
    broken.times.push_back(1.0);
    broken.states.push_back(diag_state(0.2));
    broken.strokes.push_back(1);
    try {
        first_law_accumulate(broken);
        FAIL("expected MissingHamiltonian");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingHamiltonian);
    }
}

TEST_CASE("power and conventional efficiency") {
    ThermoLedger ledger;
    ledger.cycle_duration = 2e-6;
    CHECK(output_power(ledger) == 0.0);
    ledger.W_net = 4.0;
    const double p = output_power(ledger);
    ledger.cycle_duration *= 2.0;
    CHECK(output_power(ledger) == doctest::Approx(p / 2.0));

    ledger.Q_in = 4.0;
    ledger.Q_out = 0.0;
    CHECK(eta_conventional(ledger) == 1.0);
    ledger.W_net = 3.0;
    ledger.Q_out = -1.0;
    CHECK(eta_conventional(ledger) == doctest::Approx(1.0 + ledger.Q_out / ledger.Q_in));
    ledger.Q_in = 0.0;
    try {
        eta_conventional(ledger);
        FAIL("expected NoHeatAbsorbed");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoHeatAbsorbed);
    }
    CHECK(eta_otto(0.0, 5.0) == 1.0);
    CHECK(eta_otto(2.0, 8.0) == 0.75);
}

TEST_CASE("wait-phase time is excluded from the cycle duration") {
    Trajectory traj;
    traj.push(0.0, diag_state(0.1), {0.0, 0.0, 1.0}, 0);
    traj.push(1.0, diag_state(0.1), {0.0, 0.0, 1.0}, 1);
    traj.push(3.0, diag_state(0.1), {0.0, 0.0, 1.0}, 4);
    traj.push(10.0, diag_state(0.1), {0.0, 0.0, 1.0}, 0);
    CHECK(first_law_accumulate(traj).cycle_duration == doctest::Approx(3.0));
}

TEST_CASE("quantum efficiency and its identity") {
    HeatingStrokeInfo info{0.05, 0.30, 0.30, 0.0, 10.0};
    QuantumEfficiency q = eta_quantum(info);
    CHECK(q.eta_q == doctest::Approx(eta_otto(0.0, 10.0)));
    CHECK(q.identity == doctest::Approx(q.eta_q).epsilon(1e-12));

    info.p_end = 0.35;
    q = eta_quantum(info);
    CHECK(q.eta_q > eta_otto(info.delta_min, info.delta_max));
    CHECK(std::abs(q.eta_q - q.identity) <= 1e-12);

    info = {0.1, 0.2, 0.3, 2.0, 10.0};
    q = eta_quantum(info);
    CHECK(q.eta_q == doctest::Approx((0.2 - 0.1) * 8.0 / ((0.3 - 0.1) * 10.0)));
    CHECK(std::abs(q.eta_q - q.identity) <= 1e-12);

    info.p_steady = info.p_start;
    try {
        eta_quantum(info);
        FAIL("expected DegenerateDenominator");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateDenominator);
    }
}

TEST_CASE("effective temperature") {
    CHECK(effective_temperature(diag_state(0.2), 0.0).value == 0.0);
    CHECK(effective_temperature(diag_state(0.2), 0.0).flag == TemperatureFlag::ZeroDetuning);
    const Temperature inf = effective_temperature(diag_state(0.5), 1.0);
    CHECK(inf.flag == TemperatureFlag::Infinite);
    CHECK(std::isinf(inf.value));
    CHECK(effective_temperature(diag_state(0.25), 1.0).value == doctest::Approx(1.0 / std::log(3.0)));
    CHECK(effective_temperature(diag_state(0.25), 1.0).value == doctest::Approx(0.9102).epsilon(1e-4));
    const Temperature zero = effective_temperature(diag_state(0.0), 1.0);
    CHECK(zero.value == 0.0);
    CHECK(zero.flag == TemperatureFlag::ZeroPopulation);
    CHECK(effective_temperature(diag_state(0.7), 1.0).value < 0.0);
    CHECK(effective_temperature(diag_state(0.3), 1.0).value > 0.0);
}

TEST_CASE("l1 coherence") {
    CHECK(l1_coherence(diag_state(0.3)) == 0.0);
    linalg::ComplexVector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK(l1_coherence(DensityMatrix::pure(plus)) == doctest::Approx(1.0));
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const double theta = std::numbers::pi * u(rng);
        const double mix = u(rng);
        linalg::ComplexVector psi(2);
        psi << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), kTwoPi * u(rng));
        const ComplexMatrix m = mix * psi * psi.adjoint() + (1.0 - mix) * 0.5 * ComplexMatrix::Identity(2, 2);
        const double c = l1_coherence(DensityMatrix(m));
        CHECK(c >= 0.0);
        CHECK(c <= 1.0 + 1e-12);
    }
}

TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(DensityMatrix::ground()) == doctest::Approx(0.0));
    CHECK(von_neumann_entropy(diag_state(0.5)) == doctest::Approx(std::log(2.0)));
    CHECK(von_neumann_entropy(diag_state(0.1)) == doctest::Approx(0.3251).epsilon(1e-4));
    linalg::ComplexVector plus(2);
    plus << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0));
    CHECK(std::abs(von_neumann_entropy(DensityMatrix::pure(plus))) < 1e-12);
}

TEST_CASE("observables along a trajectory") {
    const QubitParams p{kTwoPi * 10e3, kTwoPi * 82e3, 370e3};
    Schedule schedule;
    schedule.segments = {constant(5e-6, p, 2)};
    schedule.sample_dt = 0.1e-6;
    const Trajectory traj = propagate_schedule(DensityMatrix::ground(), schedule, p);
    const auto obs = compute_observables(traj);
    REQUIRE(obs.size() == traj.size());
    for (std::size_t k = 0; k < obs.size(); ++k) {
        CHECK(obs[k].p_e + obs[k].p_g == doctest::Approx(1.0));
        CHECK(obs[k].c_l1 == doctest::Approx(2.0 * std::abs(traj.states[k].coherence_eg())));
        CHECK(obs[k].entropy >= -1e-12);
        if (obs[k].t_eff.flag == TemperatureFlag::Finite) {
            CHECK((obs[k].t_eff.value < 0.0) == (obs[k].p_e > obs[k].p_g));
        }
    }
}
