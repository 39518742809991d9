// errors.hpp: Error codes and the exception type thrown across the library

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qotto {

enum class ErrorCode {
    // linear algebra
    NonSquare,
    DimensionTooLarge,
    NoConvergence,
    NonFinite,
    // spectra / steady states
    DeltaNotZero,
    DegenerateParams,
    NonUniqueSteadyState,
    ZeroGamma,
    NoBracket,
    // propagation
    InvalidState,
    InvalidSegment,
    Timeout,
    // thermodynamics
    MissingHamiltonian,
    NoHeatAbsorbed,
    DegenerateDenominator,
    // front end
    ParseError,
    ValidationError,
    IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DeltaNotZero: return "DeltaNotZero";
    case ErrorCode::DegenerateParams: return "DegenerateParams";
    case ErrorCode::NonUniqueSteadyState: return "NonUniqueSteadyState";
    case ErrorCode::ZeroGamma: return "ZeroGamma";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidSegment: return "InvalidSegment";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::MissingHamiltonian: return "MissingHamiltonian";
    case ErrorCode::NoHeatAbsorbed: return "NoHeatAbsorbed";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace qotto
