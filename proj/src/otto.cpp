#include "qotto/otto.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "qotto/errors.hpp"

namespace qotto {

namespace {

StrokeParams khz(double omega_over_2pi_khz, double gamma_khz, StrokeRole role) {
    return {kTwoPi * omega_over_2pi_khz * 1e3, gamma_khz * 1e3, role};
}

std::array<StrokeParams, 4> stroke_set(std::array<double, 2> s1, std::array<double, 2> heat,
                                       std::array<double, 2> s3, std::array<double, 2> cool) {
    return {khz(s1[0], s1[1], StrokeRole::AdiabaticCompression),
            khz(heat[0], heat[1], StrokeRole::IsochoricHeating),
            khz(s3[0], s3[1], StrokeRole::AdiabaticExpansion),
            khz(cool[0], cool[1], StrokeRole::IsochoricCooling)};
}

Segment ramp_segment(const OttoCycleSpec& spec, int stroke, double from, double to, double duration) {
    Segment seg;
    seg.params = spec.control(stroke, from);
    seg.stroke = stroke;
    if (spec.ramp_mode == RampMode::Staircase) {
        const int n = staircase_steps(from, to, spec.aom_step);
        Staircase stairs = aom_discretize(from, to, spec.aom_step, duration / n);
        seg.duration = stairs.total_duration();
        seg.profile = std::move(stairs);
    } else {
        seg.duration = duration;
        seg.profile = LinearRamp{from, to};
    }
    return seg;
}

Segment hold_segment(const OttoCycleSpec& spec, int stroke, double delta, double duration) {
    Segment seg;
    seg.params = spec.control(stroke, delta);
    seg.stroke = stroke;
    seg.duration = duration;
    seg.profile = Constant{};
    return seg;
}

} // namespace

std::string to_string(Regime regime) {
    switch (regime) {
    case Regime::ExactExact: return "exact-exact";
    case Regime::BrokenBroken: return "broken-broken";
    case Regime::ExactBroken: return "exact-broken";
    }
    return "unknown";
}

std::string to_string(RampMode mode) {
    return mode == RampMode::Staircase ? "staircase" : "linear";
}

Regime parse_regime(const std::string& name) {
    for (Regime r : {Regime::ExactExact, Regime::BrokenBroken, Regime::ExactBroken}) {
        if (name == to_string(r)) return r;
    }
    throw Error(ErrorCode::ValidationError, "unknown preset '" + name + "'");
}

RampMode parse_ramp_mode(const std::string& name) {
    if (name == "staircase") return RampMode::Staircase;
    if (name == "linear") return RampMode::LinearRamp;
    throw Error(ErrorCode::ValidationError, "unknown ramp mode '" + name + "'");
}

void OttoCycleSpec::validate() const {
    if (!(delta_min >= 0.0) || !(delta_max > delta_min)) {
        throw Error(ErrorCode::ValidationError, "need delta_max > delta_min >= 0");
    }
    for (double t : {t1, t2, t3, t4, sample_dt, aom_step}) {
        if (!(t > 0.0) || !std::isfinite(t)) {
            throw Error(ErrorCode::ValidationError, "durations, sample_dt and aom_step must be > 0");
        }
    }
    for (const StrokeParams& s : strokes) {
        if (!(s.omega >= 0.0) || !(s.gamma_eff >= 0.0)) {
            throw Error(ErrorCode::ValidationError, "stroke omega and gamma_eff must be >= 0");
        }
    }
    if (!(strokes[3].gamma_eff > 0.0)) {
        throw Error(ErrorCode::ValidationError, "cooling stroke needs gamma_eff > 0");
    }
}

QubitParams OttoCycleSpec::control(int stroke, double delta) const {
    if (stroke < 1 || stroke > 4) throw Error(ErrorCode::ValidationError, "stroke must be 1..4");
    const StrokeParams& s = strokes[static_cast<std::size_t>(stroke - 1)];
    return {delta, s.omega, s.gamma_eff};
}

OttoCycleSpec preset(Regime regime) {
    OttoCycleSpec spec;
    switch (regime) {
    case Regime::ExactExact:
        spec.strokes = stroke_set({23, 300}, {82, 370}, {24, 120}, {24, 299});
        break;
    case Regime::BrokenBroken:
        spec.strokes = stroke_set({25, 2500}, {64, 2500}, {25, 970}, {25, 2500});
        break;
    case Regime::ExactBroken:
        spec.strokes = stroke_set({25, 860}, {90, 500}, {25, 140}, {25, 860});
        break;
    }
    return spec;
}

Schedule build_cycle_schedule(const OttoCycleSpec& spec) {
    spec.validate();
    Schedule schedule;
    schedule.sample_dt = spec.sample_dt;
    schedule.segments.push_back(ramp_segment(spec, 1, spec.delta_min, spec.delta_max, spec.t1));
    schedule.segments.push_back(hold_segment(spec, 2, spec.delta_max, spec.t2));
    schedule.segments.push_back(ramp_segment(spec, 3, spec.delta_max, spec.delta_min, spec.t3));
    schedule.segments.push_back(hold_segment(spec, 4, spec.delta_min, spec.t4));
    return schedule;
}

Trajectory CycleRun::cycle_trajectory(std::size_t c) const {
    const CycleSlice& s = cycles.at(c);
    return trajectory.slice(s.first, s.last);
}

CycleRun run_cycle(const OttoCycleSpec& spec, const std::optional<DensityMatrix>& rho0, int n_cycles) {
    if (n_cycles < 1) throw Error(ErrorCode::ValidationError, "n_cycles must be >= 1");
    const Schedule schedule = build_cycle_schedule(spec);
    const QubitParams cooling = spec.cooling();

    CycleRun run;
    const DensityMatrix start = rho0 ? *rho0 : steady_state(cooling);
    if (start.dim() != 2) throw Error(ErrorCode::InvalidState, "cycle needs a qubit state");
    run.trajectory.push(0.0, start, cooling, 0);

    for (int c = 0; c < n_cycles; ++c) {
        CycleSlice slice;
        slice.first = run.trajectory.size() - 1;
        const double t_start = run.trajectory.times.back();
        run.trajectory.append(propagate_schedule(run.trajectory.states.back(), schedule,
                                                 run.trajectory.controls.back(), t_start));
        if (spec.wait.enabled) {
            const double t_end = run.trajectory.times.back();
            RelaxResult relaxed = relax_to_steady(run.trajectory.states.back(), cooling,
                                                  spec.wait.tol, spec.wait.t_max, t_end, 0);
            slice.wait_duration = relaxed.elapsed;
            run.trajectory.append(relaxed.samples);
        }
        slice.last = run.trajectory.size() - 1;
        run.cycles.push_back(slice);
        run.ledgers.push_back(first_law_accumulate(run.trajectory.slice(slice.first, slice.last)));
    }
    return run;
}

CycleMetrics evaluate_cycle(const OttoCycleSpec& spec, const CycleRun& run, std::optional<std::size_t> c) {
    const std::size_t index = c.value_or(run.cycles.size() - 1);
    CycleMetrics m;
    m.ledger = run.ledgers.at(index);
    m.W_net = m.ledger.W_net;
    m.P_out = output_power(m.ledger);
    m.eta_c = eta_conventional(m.ledger);
    m.eta_o = eta_otto(spec.delta_min, spec.delta_max);
    m.heating = heating_stroke_info(run.cycle_trajectory(index), spec.heating(), spec.delta_min);
    m.quantum = eta_quantum(m.heating);
    return m;
}

std::vector<double> default_t2_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 40; ++k) grid.push_back(0.5e-6 * k);
    return grid;
}

std::vector<SweepRow> sweep_t2(const OttoCycleSpec& spec, const std::vector<double>& t2_values,
                               int n_cycles) {
    if (t2_values.empty()) throw Error(ErrorCode::ValidationError, "t2 grid is empty");
    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(t2_values.size());
    for (double t2 : t2_values) {
        if (!(t2 > 0.0)) throw Error(ErrorCode::ValidationError, "t2 values must be > 0");
        OttoCycleSpec point = spec;
        point.t2 = t2;
        jobs.push_back(std::async(std::launch::async, [point, n_cycles] {
            const CycleMetrics m = evaluate_cycle(point, run_cycle(point, std::nullopt, n_cycles));
            return SweepRow{point.t2, m.W_net, m.P_out, m.eta_c, m.quantum.eta_q, m.quantum.identity};
        }));
    }
    std::vector<SweepRow> rows;
    rows.reserve(jobs.size());
    for (auto& job : jobs) rows.push_back(job.get());
    return rows;
}

std::vector<RatioRow> sweep_ratio(const OttoCycleSpec& base, const std::vector<double>& ratios,
                                  const std::vector<double>& t2_values, int n_cycles) {
    if (ratios.empty() || t2_values.empty()) {
        throw Error(ErrorCode::ValidationError, "ratio and t2 grids must be non-empty");
    }
    std::vector<std::future<RatioRow>> jobs;
    for (double ratio : ratios) {
        if (!(ratio > 0.0)) throw Error(ErrorCode::ValidationError, "ratios must be > 0");
        for (double t2 : t2_values) {
            if (!(t2 > 0.0)) throw Error(ErrorCode::ValidationError, "t2 values must be > 0");
            OttoCycleSpec point = base;
            point.strokes[1].omega = ratio * point.strokes[1].gamma_eff;
            point.t2 = t2;
            jobs.push_back(std::async(std::launch::async, [point, ratio, n_cycles] {
                const CycleRun run = run_cycle(point, std::nullopt, n_cycles);
                return RatioRow{ratio, point.t2, run.ledgers.back().W_net};
            }));
        }
    }
    std::vector<RatioRow> rows;
    rows.reserve(jobs.size());
    for (auto& job : jobs) rows.push_back(job.get());
    return rows;
}

std::vector<double> stroke_population(const Trajectory& cycle, int stroke) {
    std::vector<double> series;
    for (std::size_t k = 1; k < cycle.size(); ++k) {
        if (cycle.strokes[k] != stroke) continue;
        if (series.empty()) series.push_back(cycle.states[k - 1].excited_population());
        series.push_back(cycle.states[k].excited_population());
    }
    return series;
}

bool has_hump(const std::vector<double>& series, double tol) {
    if (series.size() < 3) return false;
    const double peak = *std::max_element(series.begin() + 1, series.end() - 1);
    return peak > std::max(series.front(), series.back()) + tol;
}

bool has_ramp(const std::vector<double>& series, double tol) {
    if (series.size() < 3) return false;
    const double dip = *std::min_element(series.begin() + 1, series.end() - 1);
    return dip < series.back() - tol;
}

bool is_nondecreasing(const std::vector<double>& series, double tol) {
    for (std::size_t k = 1; k < series.size(); ++k) {
        if (series[k] < series[k - 1] - tol) return false;
    }
    return true;
}

int first_local_max(const std::vector<double>& series) {
    for (std::size_t k = 1; k + 1 < series.size(); ++k) {
        if (series[k] > series[k - 1] && series[k] >= series[k + 1]) return static_cast<int>(k);
    }
    return -1;
}

} // namespace qotto
