#include "cgsp/types.hpp"

#include <cmath>

namespace cgsp {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonHermitianInput: return "NonHermitianInput";
        case ErrorCode::NonUnitaryInput: return "NonUnitaryInput";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ComplexWeight: return "ComplexWeight";
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::EmptyGraph: return "EmptyGraph";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InvalidMapDomain: return "InvalidMapDomain";
        case ErrorCode::EmptyBandSet: return "EmptyBandSet";
        case ErrorCode::BandTooSmall: return "BandTooSmall";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::ZeroReference: return "ZeroReference";
        case ErrorCode::MalformedCsv: return "MalformedCsv";
        case ErrorCode::EmptySignal: return "EmptySignal";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::FitDiverged: return "FitDiverged";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

void ensure_finite(const ComplexMatrix& a, const std::string& context) {
    if (!a.allFinite()) throw_error(ErrorCode::NonFinite, context);
}

void ensure_finite(const ComplexVector& a, const std::string& context) {
    if (!a.allFinite()) throw_error(ErrorCode::NonFinite, context);
}

void ensure_finite(const RealVector& a, const std::string& context) {
    if (!a.allFinite()) throw_error(ErrorCode::NonFinite, context);
}

}  // namespace cgsp
