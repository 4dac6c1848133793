#pragma once

#include <stdexcept>
#include <string>

namespace depcov {

enum class ErrorCode {
    non_positive_mass,
    mass_not_unit,
    non_finite_coordinate,
    length_too_small,
    length_mismatch,
    degenerate_marginal,
    unknown_generator,
    invalid_parameter,
    file_not_found,
    parse_error,
    internal_error,
};

inline const char* code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::non_positive_mass: return "NonPositiveMass";
        case ErrorCode::mass_not_unit: return "MassNotUnit";
        case ErrorCode::non_finite_coordinate: return "NonFiniteCoordinate";
        case ErrorCode::length_too_small: return "LengthTooSmall";
        case ErrorCode::length_mismatch: return "LengthMismatch";
        case ErrorCode::degenerate_marginal: return "DegenerateMarginal";
        case ErrorCode::unknown_generator: return "UnknownGenerator";
        case ErrorCode::invalid_parameter: return "InvalidParameter";
        case ErrorCode::file_not_found: return "FileNotFound";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::internal_error: return "InternalError";
    }
    return "UnknownError";
}

// Library-wide exception. The CLI renders these as one line "Code: message"
// on stderr with a nonzero exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string one_line() const { return std::string(code_name(code_)) + ": " + what(); }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace depcov
