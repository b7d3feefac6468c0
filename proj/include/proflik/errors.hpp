#pragma once

#include <stdexcept>
#include <string>

namespace proflik {

enum class ErrorCode {
    InvalidInput,
    TooFewObservations,
    DegenerateSample,
    SingularScatter,
    NotPositiveDefinite,
    NonpositiveVariance,
    RankDeficientDesign,
    NonConvergence,
    DomainEscape,
    ToleranceNotMet,
    DivergentIntegral,
    EffectiveSampleSizeTooLow,
    NoSamplerAvailable,
    NonFiniteHessian,
    GridMismatch,
    GridTooNarrow,
    InvalidInit,
    TooFewDraws,
    ScanFailure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::TooFewObservations: return "TooFewObservations";
        case ErrorCode::DegenerateSample: return "DegenerateSample";
        case ErrorCode::SingularScatter: return "SingularScatter";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::NonpositiveVariance: return "NonpositiveVariance";
        case ErrorCode::RankDeficientDesign: return "RankDeficientDesign";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::DomainEscape: return "DomainEscape";
        case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
        case ErrorCode::DivergentIntegral: return "DivergentIntegral";
        case ErrorCode::EffectiveSampleSizeTooLow: return "EffectiveSampleSizeTooLow";
        case ErrorCode::NoSamplerAvailable: return "NoSamplerAvailable";
        case ErrorCode::NonFiniteHessian: return "NonFiniteHessian";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::GridTooNarrow: return "GridTooNarrow";
        case ErrorCode::InvalidInit: return "InvalidInit";
        case ErrorCode::TooFewDraws: return "TooFewDraws";
        case ErrorCode::ScanFailure: return "ScanFailure";
    }
    return "UnknownError";
}

}  // namespace proflik
