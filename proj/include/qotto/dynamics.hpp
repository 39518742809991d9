// dynamics.hpp: Exact piecewise propagation of the qubit density matrix

#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "qotto/density_matrix.hpp"
#include "qotto/liouvillian.hpp"

namespace qotto {

// Δ held at params.delta for the whole segment.
struct Constant {};

// Δ ramps linearly from `from` to `to`; propagated as a fine staircase.
struct LinearRamp {
    double from{0.0};
    double to{0.0};
};

struct Plateau {
    double value{0.0};  // Δ in rad/s
    double dwell{0.0};  // seconds
};

struct Staircase {
    std::vector<Plateau> steps;
    double total_duration() const;
};

using DeltaProfile = std::variant<Constant, LinearRamp, Staircase>;

struct Segment {
    double duration{0.0};
    QubitParams params;  // Ω and γ_eff for the segment; Δ only used by Constant
    DeltaProfile profile{Constant{}};
    int stroke{0};       // label carried into the trajectory

    void validate() const;  // throws InvalidSegment
};

struct Schedule {
    std::vector<Segment> segments;
    double sample_dt{50e-9};
    // LinearRamp discretization: at least ramp_min_steps pieces, each no
    // longer than ramp_max_substep.
    int ramp_min_steps{100};
    double ramp_max_substep{50e-9};

    void validate() const;
};

// A constant-control piece of a segment.
struct Piece {
    QubitParams params;
    double duration{0.0};
};

std::vector<Piece> segment_pieces(const Segment& seg, int ramp_min_steps = 100,
                                  double ramp_max_substep = 50e-9);

// Sample k carries the control in force on the interval ending at it. The
// first sample of a schedule carries the incoming control.
struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<QubitParams> controls;
    std::vector<int> strokes;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    void push(double t, DensityMatrix rho, const QubitParams& control, int stroke);
    // Appends `tail`, dropping its first sample if it duplicates our last time.
    void append(const Trajectory& tail);
    // Samples [first, last], inclusive.
    Trajectory slice(std::size_t first, std::size_t last) const;
};

// Samples strictly after t0 up to t0 + seg.duration; the starting sample is
// the caller's. Each constant piece is split into ceil(d / sample_dt) equal
// exact steps, so piece boundaries are always sampled.
Trajectory propagate_segment(const DensityMatrix& rho0, const Segment& seg, double sample_dt,
                             double t0 = 0.0, int ramp_min_steps = 100,
                             double ramp_max_substep = 50e-9);

// Full schedule starting at t0 with `incoming` as the control attached to the
// initial sample.
Trajectory propagate_schedule(const DensityMatrix& rho0, const Schedule& schedule,
                              const QubitParams& incoming, double t0 = 0.0);

// Plateaus from `from` toward `to` in ±step increments, the last one clipped
// to `to`. from == to gives a single plateau at the target.
Staircase aom_discretize(double from, double to, double step, double dwell);

// Number of plateaus aom_discretize would produce.
int staircase_steps(double from, double to, double step);

struct RelaxResult {
    DensityMatrix state;
    double elapsed{0.0};
    Trajectory samples;  // one sample per chunk boundary, times from t0
};

// Chunks of 1/γ_eff until ‖ρ(t+chunk) − ρ(t)‖_F ≤ tol. t_max ≤ 0 selects
// 200/γ_eff. Throws ZeroGamma or Timeout.
RelaxResult relax_to_steady(const DensityMatrix& rho0, const QubitParams& params, double tol = 1e-8,
                            double t_max = 0.0, double t0 = 0.0, int stroke = 0);

// One exact step for a qubit: vec(ρ) ← expm(𝓛 dt) vec(ρ).
linalg::ComplexMatrix propagator(const QubitParams& params, double dt);
linalg::ComplexMatrix apply_propagator(const linalg::ComplexMatrix& prop,
                                       const linalg::ComplexMatrix& rho);

} // namespace qotto
