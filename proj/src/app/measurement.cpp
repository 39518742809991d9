#include "qotto/app/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "qotto/errors.hpp"

namespace qotto::app {

double ShotEmulator::uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

MeasurementSample ShotEmulator::sample(double p_true, std::int64_t shots) {
    if (shots < 1) throw Error(ErrorCode::ValidationError, "shots must be >= 1");
    if (!(p_true >= -1e-9 && p_true <= 1.0 + 1e-9)) {
        throw Error(ErrorCode::ValidationError, "probability outside [0, 1]");
    }
    const double p = std::clamp(p_true, 0.0, 1.0);
    std::int64_t hits = 0;
    for (std::int64_t k = 0; k < shots; ++k) {
        if (uniform() < p) ++hits;
    }
    const double n = static_cast<double>(shots);
    const double mean = static_cast<double>(hits) / n;
    return {mean, std::sqrt(mean * (1.0 - mean) / n)};
}

MeasurementSample emulate_shots(double p_true, std::int64_t shots, std::uint64_t seed) {
    ShotEmulator emulator(seed);
    return emulator.sample(p_true, shots);
}

} // namespace qotto::app
