#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hausdorff {

enum class ErrorKind {
    MissingExponentMetadata,
    QuadratureFailure,
    NonIntegrableAtInfinity,
    DivergentIntegral,
    ParameterOutOfRange,
    InvalidMeasure,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MissingExponentMetadata: return "MissingExponentMetadata";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NonIntegrableAtInfinity: return "NonIntegrableAtInfinity";
    case ErrorKind::DivergentIntegral: return "DivergentIntegral";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::InvalidMeasure: return "InvalidMeasure";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace hausdorff
