#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace stratdamp {

using Real = double;
using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr Complex kI{0.0, 1.0};

// Side of the real axis approached by the spectral parameter: Plus means
// the coefficient denominators read (v - v(y0) + i eps).
enum class Side { Plus, Minus };

inline double sign_of(Side s) { return s == Side::Plus ? 1.0 : -1.0; }
inline Side opposite(Side s) { return s == Side::Plus ? Side::Minus : Side::Plus; }
inline const char* to_string(Side s) { return s == Side::Plus ? "+" : "-"; }

enum class ErrorCode {
    NonMonotone,
    SupportViolation,
    RootCountMismatch,
    SeriesDivergence,
    DegenerateGamma,
    BranchCut,
    StiffIntegration,
    DegeneratePair,
    WronskianCollapse,
    RegimeBoundary,
    SingularSystem,
    ResidualTooLarge,
    IllConditionedFit,
    NoConvergence,
    QuadratureBudgetExceeded,
    CFLViolation,
    PoissonFailure,
    IntegrationFailure,
    BoundaryTooClose,
    UnresolvedWinding,
    BoundaryPoint,
    NonPositiveValues,
    WindowTooShort,
    InvalidArgument,
    ConfigParse,
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

}  // namespace stratdamp
