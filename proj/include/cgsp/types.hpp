#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cgsp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// One feature point z in C^D; a feature set is one point per graph vertex.
using FeatureVector = Eigen::VectorXcd;
using FeatureSet = std::vector<FeatureVector>;

using IndexSet = std::vector<int>;

enum class ErrorCode {
    NonHermitianInput,
    NonUnitaryInput,
    NotPositiveDefinite,
    ConvergenceFailure,
    OutOfDomain,
    DimensionMismatch,
    ComplexWeight,
    NegativeWeight,
    EmptyGraph,
    IndexOutOfRange,
    InvalidMapDomain,
    EmptyBandSet,
    BandTooSmall,
    SingularSystem,
    ZeroReference,
    MalformedCsv,
    EmptySignal,
    InsufficientData,
    FitDiverged,
    NonFinite,
    InvalidSpec,
    ConfigInvalid,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

// Throws NonFinite if any entry of a result handed back to callers is NaN/Inf.
void ensure_finite(const ComplexMatrix& a, const std::string& context);
void ensure_finite(const ComplexVector& a, const std::string& context);
void ensure_finite(const RealVector& a, const std::string& context);

}  // namespace cgsp
