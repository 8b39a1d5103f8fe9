#pragma once

#include <stdexcept>
#include <string>

namespace shellmodes {

enum class ErrorCode {
    OutOfInterval,
    InvalidThickness,
    InvalidGeometry,
    NonSmooth,
    NotApplicable,
    PoissonLocking,
    DegenerateJacobian,
    QuadratureUnderflow,
    LayerCollision,
    FactorizationFailure,
    NoConvergence,
    KmaxExceeded,
    IncompleteCurve,
    InsufficientSpan,
    UnsupportedClass,
    NegativeG,
    ConfigError,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::OutOfInterval: return "OutOfInterval";
        case ErrorCode::InvalidThickness: return "InvalidThickness";
        case ErrorCode::InvalidGeometry: return "InvalidGeometry";
        case ErrorCode::NonSmooth: return "NonSmooth";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::PoissonLocking: return "PoissonLocking";
        case ErrorCode::DegenerateJacobian: return "DegenerateJacobian";
        case ErrorCode::QuadratureUnderflow: return "QuadratureUnderflow";
        case ErrorCode::LayerCollision: return "LayerCollision";
        case ErrorCode::FactorizationFailure: return "FactorizationFailure";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::KmaxExceeded: return "KmaxExceeded";
        case ErrorCode::IncompleteCurve: return "IncompleteCurve";
        case ErrorCode::InsufficientSpan: return "InsufficientSpan";
        case ErrorCode::UnsupportedClass: return "UnsupportedClass";
        case ErrorCode::NegativeG: return "NegativeG";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Single exception type for the library; callers dispatch on code().
class ShellError : public std::runtime_error {
public:
    ShellError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace shellmodes
