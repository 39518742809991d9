// measurement.hpp: Projective-measurement shot noise

#pragma once

#include <cstdint>
#include <random>

namespace qotto::app {

inline constexpr const char* kRngName = "mt19937_64";

struct MeasurementSample {
    double mean{0.0};  // k/N
    double std{0.0};   // √(p̂(1 − p̂)/N)
};

class ShotEmulator {
public:
    explicit ShotEmulator(std::uint64_t seed) : rng_(seed) {}

    // N Bernoulli(p) draws; u < p counts as |e⟩.
    MeasurementSample sample(double p_true, std::int64_t shots);

private:
    double uniform();  // [0, 1) from the top 53 bits

    std::mt19937_64 rng_;
};

MeasurementSample emulate_shots(double p_true, std::int64_t shots, std::uint64_t seed);

} // namespace qotto::app
