#ifndef MSLAB_ERRORS_HPP
#define MSLAB_ERRORS_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace mslab {

enum class ErrorCode {
    ParseError,
    AsymmetricMatrix,
    NonzeroDiagonal,
    TriangleViolation,
    NegativeDistance,
    ZeroOffDiagonal,
    NotSquare,
    InvalidParameter,
    EmptySubset,
    SizeCapExceeded,
    InvalidCorrespondence,
    LengthMismatch,
    EmptyTuple,
    UnsupportedCase,
    NotDeltaConnected,
    DiameterExceedsT,
    InsufficientSamples,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::InvalidCorrespondence: return "InvalidCorrespondence";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyTuple: return "EmptyTuple";
    case ErrorCode::UnsupportedCase: return "UnsupportedCase";
    case ErrorCode::NotDeltaConnected: return "NotDeltaConnected";
    case ErrorCode::DiameterExceedsT: return "DiameterExceedsT";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    }
    return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
/// TriangleViolation additionally records the offending (i, j, k): d(i,j) > d(i,k) + d(k,j).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Error(ErrorCode code, const std::string& what, std::array<int, 3> triple)
        : Error(code, what) {
        triple_ = triple;
    }

    ErrorCode code() const noexcept { return code_; }
    const std::optional<std::array<int, 3>>& triple() const noexcept { return triple_; }

private:
    ErrorCode code_;
    std::optional<std::array<int, 3>> triple_;
};

} // namespace mslab

#endif // MSLAB_ERRORS_HPP
