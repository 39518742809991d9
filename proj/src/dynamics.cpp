#include "qotto/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qotto/errors.hpp"

namespace qotto {

using linalg::ComplexMatrix;
using linalg::ComplexVector;

namespace {

constexpr double kDurationTol = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

} // namespace

double Staircase::total_duration() const {
    double total = 0.0;
    for (const Plateau& p : steps) total += p.dwell;
    return total;
}

void Segment::validate() const {
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw Error(ErrorCode::InvalidSegment, "segment duration must be > 0");
    }
    try {
        params.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::InvalidSegment, e.what());
    }
    std::visit(Overloaded{
                   [](const Constant&) {},
                   [](const LinearRamp& r) {
                       if (!std::isfinite(r.from) || !std::isfinite(r.to)) {
                           throw Error(ErrorCode::InvalidSegment, "ramp endpoints must be finite");
                       }
                   },
                   [this](const Staircase& s) {
                       if (s.steps.empty()) {
                           throw Error(ErrorCode::InvalidSegment, "staircase has no plateaus");
                       }
                       for (const Plateau& p : s.steps) {
                           if (!(p.dwell > 0.0) || !std::isfinite(p.value)) {
                               throw Error(ErrorCode::InvalidSegment, "bad staircase plateau");
                           }
                       }
                       if (std::abs(s.total_duration() - duration) > kDurationTol) {
                           throw Error(ErrorCode::InvalidSegment,
                                       "staircase dwells do not sum to the segment duration");
                       }
                   },
               },
               profile);
}

void Schedule::validate() const {
    if (segments.empty()) throw Error(ErrorCode::InvalidSegment, "schedule has no segments");
    if (!(sample_dt > 0.0)) throw Error(ErrorCode::InvalidSegment, "sample_dt must be > 0");
    if (ramp_min_steps < 1 || !(ramp_max_substep > 0.0)) {
        throw Error(ErrorCode::InvalidSegment, "bad ramp discretization settings");
    }
    double shortest = segments.front().duration;
    for (const Segment& s : segments) {
        s.validate();
        shortest = std::min(shortest, s.duration);
    }
    if (sample_dt > shortest * (1.0 + 1e-12)) {
        throw Error(ErrorCode::InvalidSegment, "sample_dt exceeds the shortest segment");
    }
}

std::vector<Piece> segment_pieces(const Segment& seg, int ramp_min_steps, double ramp_max_substep) {
    std::vector<Piece> pieces;
    std::visit(Overloaded{
                   [&](const Constant&) { pieces.push_back({seg.params, seg.duration}); },
                   [&](const LinearRamp& r) {
                       const int by_length =
                           static_cast<int>(std::ceil(seg.duration / ramp_max_substep - 1e-9));
                       const int n = std::max(ramp_min_steps, by_length);
                       const double dt = seg.duration / n;
                       for (int k = 0; k < n; ++k) {
                           QubitParams p = seg.params;
                           p.delta = r.from + (r.to - r.from) * (k + 0.5) / n;
                           pieces.push_back({p, dt});
                       }
                   },
                   [&](const Staircase& s) {
                       for (const Plateau& step : s.steps) {
                           QubitParams p = seg.params;
                           p.delta = step.value;
                           pieces.push_back({p, step.dwell});
                       }
                   },
               },
               seg.profile);
    return pieces;
}

void Trajectory::push(double t, DensityMatrix rho, const QubitParams& control, int stroke) {
    times.push_back(t);
    states.push_back(std::move(rho));
    controls.push_back(control);
    strokes.push_back(stroke);
}

void Trajectory::append(const Trajectory& tail) {
    std::size_t start = 0;
    if (!empty() && !tail.empty() && tail.times.front() <= times.back()) start = 1;
    for (std::size_t k = start; k < tail.size(); ++k) {
        push(tail.times[k], tail.states[k], tail.controls[k], tail.strokes[k]);
    }
}

Trajectory Trajectory::slice(std::size_t first, std::size_t last) const {
    if (first > last || last >= size()) {
        throw Error(ErrorCode::ValidationError, "trajectory slice out of range");
    }
    Trajectory out;
    for (std::size_t k = first; k <= last; ++k)
        out.push(times[k], states[k], controls[k], strokes[k]);
    return out;
}

ComplexMatrix propagator(const QubitParams& params, double dt) {
    return linalg::expm(build_liouvillian(params) * dt);
}

ComplexMatrix apply_propagator(const ComplexMatrix& prop, const ComplexMatrix& rho) {
    const ComplexVector next = prop * to_liouville_vector(rho);
    return from_liouville_vector(next);
}

Trajectory propagate_segment(const DensityMatrix& rho0, const Segment& seg, double sample_dt,
                             double t0, int ramp_min_steps, double ramp_max_substep) {
    if (rho0.dim() != 2) throw Error(ErrorCode::InvalidState, "qubit propagation needs a 2x2 state");
    seg.validate();
    if (!(sample_dt > 0.0)) throw Error(ErrorCode::InvalidSegment, "sample_dt must be > 0");

    Trajectory out;
    ComplexMatrix rho = rho0.matrix();
    double piece_start = t0;
    for (const Piece& piece : segment_pieces(seg, ramp_min_steps, ramp_max_substep)) {
        const int n = std::max(1, static_cast<int>(std::ceil(piece.duration / sample_dt - 1e-9)));
        const double dt = piece.duration / n;
        const ComplexMatrix prop = propagator(piece.params, dt);
        for (int k = 1; k <= n; ++k) {
            rho = apply_propagator(prop, rho);
            const double t = k == n ? piece_start + piece.duration : piece_start + k * dt;
            out.push(t, DensityMatrix(rho), piece.params, seg.stroke);
        }
        piece_start += piece.duration;
    }
    return out;
}

Trajectory propagate_schedule(const DensityMatrix& rho0, const Schedule& schedule,
                              const QubitParams& incoming, double t0) {
    schedule.validate();
    Trajectory traj;
    traj.push(t0, rho0, incoming, schedule.segments.front().stroke);
    double t = t0;
    for (const Segment& seg : schedule.segments) {
        traj.append(propagate_segment(traj.states.back(), seg, schedule.sample_dt, t,
                                      schedule.ramp_min_steps, schedule.ramp_max_substep));
        t += seg.duration;
    }
    return traj;
}

int staircase_steps(double from, double to, double step) {
    if (!(step > 0.0)) throw Error(ErrorCode::InvalidSegment, "staircase step must be > 0");
    const double span = std::abs(to - from) / step;
    return std::max(1, static_cast<int>(std::ceil(span - 1e-9)));
}

Staircase aom_discretize(double from, double to, double step, double dwell) {
    if (!(dwell > 0.0)) throw Error(ErrorCode::InvalidSegment, "staircase dwell must be > 0");
    const int n = staircase_steps(from, to, step);
    const double direction = to >= from ? 1.0 : -1.0;
    Staircase out;
    for (int k = 1; k <= n; ++k) {
        double value = from + direction * step * k;
        if (k == n || direction * (value - to) > 0.0) value = to;
        out.steps.push_back({value, dwell});
    }
    return out;
}

RelaxResult relax_to_steady(const DensityMatrix& rho0, const QubitParams& params, double tol,
                            double t_max, double t0, int stroke) {
    params.validate();
    if (!(params.gamma_eff > 0.0)) {
        throw Error(ErrorCode::ZeroGamma, "relaxation needs gamma_eff > 0");
    }
    if (!(tol > 0.0)) throw Error(ErrorCode::ValidationError, "relax tolerance must be > 0");
    const double chunk = 1.0 / params.gamma_eff;
    if (t_max <= 0.0) t_max = 200.0 * chunk;

    const ComplexMatrix prop = propagator(params, chunk);
    ComplexMatrix rho = rho0.matrix();
    RelaxResult out{rho0, 0.0, {}};
    int chunks = 0;
    while (true) {
        const ComplexMatrix next = apply_propagator(prop, rho);
        ++chunks;
        out.elapsed = chunks * chunk;
        out.samples.push(t0 + out.elapsed, DensityMatrix(next), params, stroke);
        const double change = linalg::fro(next - rho);
        rho = next;
        if (change <= tol) break;
        if (out.elapsed >= t_max) {
            throw Error(ErrorCode::Timeout, "no convergence to " + std::to_string(tol) +
                                                " within " + std::to_string(t_max) + " s");
        }
    }
    out.state = out.samples.states.back();
    return out;
}

} // namespace qotto
