#include "qotto/app/commands.hpp"

#include <cmath>

#include "qotto/app/measurement.hpp"
#include "qotto/app/output.hpp"
#include "qotto/errors.hpp"
#include "qotto/liouvillian.hpp"
#include "qotto/otto.hpp"
#include "qotto/thermo.hpp"

namespace qotto::app {

using nlohmann::json;
namespace fs = std::filesystem;

double work_to_report(double work_rad_s) { return work_rad_s / (kTwoPi * 1e3); }

double power_to_report(double power_rad_s2) { return work_to_report(power_rad_s2) * 1e-6; }

namespace {

json complex_json(linalg::Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json base_summary(const RunConfig& config) {
    return {{"artifact_version", kArtifactVersion},
            {"command", to_string(config.command)},
            {"config", to_json(config)},
            {"rng", kRngName},
            {"units", {{"energy", "rad/s (hbar = 1)"},
                       {"work_reported", "2pi*kHz"},
                       {"power_reported", "2pi*kHz per microsecond"},
                       {"temperature", "rad/s (k_B = 1)"}}}};
}

json ledger_json(const ThermoLedger& ledger) {
    json strokes = json::object();
    for (const auto& [label, totals] : ledger.strokes) {
        strokes[std::to_string(label)] = {{"work_on", totals.work_on},
                                          {"heat", totals.heat},
                                          {"duration_s", totals.duration}};
    }
    return {{"W_net", ledger.W_net},
            {"W_net_reported", work_to_report(ledger.W_net)},
            {"Q_in", ledger.Q_in},
            {"Q_out", ledger.Q_out},
            {"Q_out_magnitude", std::abs(ledger.Q_out)},
            {"cycle_duration_s", ledger.cycle_duration},
            {"strokes", strokes}};
}

json phase_json(const QubitParams& p) {
    const PhaseClass pc = classify_phase(p);
    return {{"phase", to_string(pc.phase)}, {"omega_over_gamma_eff", pc.ratio}, {"xi", complex_json(pc.xi)}};
}

void write_csv(RunReport& report, const Table& table, const fs::path& path) {
    emit_csv(table, path);
    report.files.push_back(path);
}

void run_spectrum(const RunConfig& config, const fs::path& dir, RunReport& report) {
    const QubitParams p = config.qubit_params();
    const linalg::SpectralResult spec = linalg::eig(build_liouvillian(p));
    Table table{"index,re_lambda,im_lambda", {}};
    json values = json::array();
    for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
        table.add({fmt(static_cast<long long>(k)), fmt(spec.eigenvalues[k].real()),
                   fmt(spec.eigenvalues[k].imag())});
        values.push_back(complex_json(spec.eigenvalues[k]));
    }
    write_csv(report, table, dir / "spectrum.csv");
    report.summary["eigenvalues"] = values;
    report.summary["classification"] = phase_json(p);
    if (p.delta == 0.0) {
        json analytic = json::array();
        for (linalg::Complex z : analytic_eigenvalues(p)) analytic.push_back(complex_json(z));
        report.summary["analytic_eigenvalues"] = analytic;
    }
}

void run_steady(const RunConfig& config, const fs::path& dir, RunReport& report) {
    const QubitParams p = config.qubit_params();
    const DensityMatrix rho = steady_state(p);
    const DensityMatrix closed = analytic_steady_state(p);
    Table table{"P_e,P_g,re_rho_eg,im_rho_eg,P_e_closed_form", {}};
    table.add({fmt(rho.excited_population()), fmt(rho.ground_population()),
               fmt(rho.coherence_eg().real()), fmt(rho.coherence_eg().imag()),
               fmt(closed.excited_population())});
    write_csv(report, table, dir / "steady.csv");
    const Observables o = observe(rho, p.delta);
    report.summary["steady_state"] = {{"P_e", o.p_e},
                                      {"P_g", o.p_g},
                                      {"rho_eg", complex_json(o.rho_eg)},
                                      {"P_e_closed_form", closed.excited_population()},
                                      {"T_eff", o.t_eff.value},
                                      {"C_l1", o.c_l1},
                                      {"S", o.entropy}};
    if (config.shots > 0) {
        const MeasurementSample m = emulate_shots(o.p_e, config.shots, config.seed);
        report.summary["measurement"] = {{"shots", config.shots}, {"mean", m.mean}, {"std", m.std}};
    }
}

void run_cycle_command(const RunConfig& config, const fs::path& dir, RunReport& report) {
    const OttoCycleSpec spec = config.cycle_spec();
    const CycleRun run = run_cycle(spec, std::nullopt, config.n_cycles);
    const Trajectory& traj = run.trajectory;
    const std::vector<Observables> obs = compute_observables(traj);

    Table table{kTrajectoryHeader, {}};
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const QubitParams& c = traj.controls[k];
        const Observables& o = obs[k];
        table.add({fmt(traj.times[k]), fmt(o.p_e), fmt(o.p_g), fmt(o.rho_eg.real()),
                   fmt(o.rho_eg.imag()), fmt(c.delta), fmt(c.omega), fmt(c.gamma_eff),
                   fmt(o.t_eff.value), fmt(o.c_l1), fmt(o.entropy),
                   fmt(static_cast<long long>(traj.strokes[k]))});
    }
    write_csv(report, table, dir / "trajectory.csv");

    if (config.shots > 0) {
        ShotEmulator emulator(config.seed);
        Table noisy{kMeasurementHeader, {}};
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const MeasurementSample m = emulator.sample(obs[k].p_e, config.shots);
            noisy.add({fmt(traj.times[k]), fmt(obs[k].p_e), fmt(m.mean), fmt(m.std)});
        }
        write_csv(report, noisy, dir / "measurements.csv");
    }

    json cycles = json::array();
    for (std::size_t c = 0; c < run.cycles.size(); ++c) {
        json entry = ledger_json(run.ledgers[c]);
        entry["wait_duration_s"] = run.cycles[c].wait_duration;
        cycles.push_back(entry);
    }
    const CycleMetrics m = evaluate_cycle(spec, run);
    report.summary["cycles"] = cycles;
    report.summary["efficiencies"] = {{"eta_o", m.eta_o},
                                      {"eta_c", m.eta_c},
                                      {"eta_q", m.quantum.eta_q},
                                      {"eta_q_identity", m.quantum.identity},
                                      {"P_out", m.P_out},
                                      {"P_out_reported", power_to_report(m.P_out)}};
    report.summary["heating_stroke"] = {{"P_start", m.heating.p_start},
                                        {"P_end", m.heating.p_end},
                                        {"P_steady", m.heating.p_steady}};
    report.summary["phases"] = {{"heating", phase_json(spec.heating())},
                                {"cooling", phase_json(spec.cooling())}};
}

void run_sweep_t2(const RunConfig& config, const fs::path& dir, RunReport& report) {
    const std::vector<SweepRow> rows = sweep_t2(config.cycle_spec(), config.t2_values_s(), config.n_cycles);
    Table table{kSweepT2Header, {}};
    json identity = json::array();
    for (const SweepRow& r : rows) {
        table.add({fmt(r.t2), fmt(work_to_report(r.W)), fmt(power_to_report(r.P)), fmt(r.eta_c),
                   fmt(r.eta_q)});
        identity.push_back(r.eta_q_identity);
    }
    write_csv(report, table, dir / "sweep.csv");
    report.summary["points"] = rows.size();
    report.summary["eta_q_identity"] = identity;
}

void run_sweep_ratio(const RunConfig& config, const fs::path& dir, RunReport& report) {
    const std::vector<RatioRow> rows =
        sweep_ratio(config.cycle_spec(), config.ratio_values, config.t2_values_s(), config.n_cycles);
    Table table{kSweepRatioHeader, {}};
    for (const RatioRow& r : rows) table.add({fmt(r.ratio), fmt(r.t2), fmt(work_to_report(r.W))});
    write_csv(report, table, dir / "sweep.csv");
    report.summary["points"] = rows.size();
}

void run_lep_locate(const RunConfig& config, const fs::path& dir, RunReport& report) {
    const ThreeLevelParams base = config.three_level_params();
    const LepResult two = lep_locate(config.lep_scan(), two_level_source(effective_decay_rate(base)));
    const LepResult three = lep_locate(config.lep_scan(), three_level_source(base));
    Table table{"model,omega_over_gamma_eff,gamma_eff_over_4omega,iterations", {}};
    table.add({"two-level", fmt(two.ratio), fmt(0.25 / two.ratio),
               fmt(static_cast<long long>(two.iterations))});
    table.add({"three-level", fmt(three.ratio), fmt(0.25 / three.ratio),
               fmt(static_cast<long long>(three.iterations))});
    write_csv(report, table, dir / "lep.csv");
    report.summary["gamma_eff"] = effective_decay_rate(base);
    report.summary["lep"] = {{"two_level", two.ratio}, {"three_level", three.ratio}};
}

void run_three_level_compare(const RunConfig& config, const fs::path& dir, RunReport& report) {
    const ThreeLevelParams base = config.three_level_params();
    const SpectrumSource two = two_level_source(effective_decay_rate(base));
    const SpectrumSource three = three_level_source(base);
    Table table{kThreeLevelHeader, {}};
    for (double ratio : config.compare_grid()) {
        const auto p2 = slow_pair(linalg::eig(two.build(ratio)).eigenvalues, two.gamma_eff);
        const auto p3 = slow_pair(linalg::eig(three.build(ratio)).eigenvalues, three.gamma_eff);
        table.add({fmt(0.25 / ratio), fmt(p2.first.real() / two.gamma_eff),
                   fmt(p2.second.real() / two.gamma_eff), fmt(p3.first.real() / three.gamma_eff),
                   fmt(p3.second.real() / three.gamma_eff)});
    }
    write_csv(report, table, dir / "sweep.csv");
    report.summary["gamma_eff"] = three.gamma_eff;
    report.summary["eigenvalue_unit"] = "gamma_eff";
}

} // namespace

RunReport run(const RunConfig& config, const fs::path& out_dir) {
    config.validate();
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        throw Error(ErrorCode::IoError, "cannot create output directory '" + out_dir.string() + "'");
    }

    RunReport report;
    report.summary = base_summary(config);
    switch (config.command) {
    case Command::Spectrum: run_spectrum(config, out_dir, report); break;
    case Command::Steady: run_steady(config, out_dir, report); break;
    case Command::Cycle: run_cycle_command(config, out_dir, report); break;
    case Command::SweepT2: run_sweep_t2(config, out_dir, report); break;
    case Command::SweepRatio: run_sweep_ratio(config, out_dir, report); break;
    case Command::LepLocate: run_lep_locate(config, out_dir, report); break;
    case Command::ThreeLevelCompare: run_three_level_compare(config, out_dir, report); break;
    }
    const fs::path summary_path = out_dir / "summary.json";
    emit_summary_json(report.summary, summary_path);
    report.files.push_back(summary_path);
    return report;
}

} // namespace qotto::app
