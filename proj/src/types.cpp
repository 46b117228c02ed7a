#include "stratdamp/types.hpp"

namespace stratdamp {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonMonotone: return "NonMonotone";
        case ErrorCode::SupportViolation: return "SupportViolation";
        case ErrorCode::RootCountMismatch: return "RootCountMismatch";
        case ErrorCode::SeriesDivergence: return "SeriesDivergence";
        case ErrorCode::DegenerateGamma: return "DegenerateGamma";
        case ErrorCode::BranchCut: return "BranchCut";
        case ErrorCode::StiffIntegration: return "StiffIntegration";
        case ErrorCode::DegeneratePair: return "DegeneratePair";
        case ErrorCode::WronskianCollapse: return "WronskianCollapse";
        case ErrorCode::RegimeBoundary: return "RegimeBoundary";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
        case ErrorCode::IllConditionedFit: return "IllConditionedFit";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
        case ErrorCode::CFLViolation: return "CFLViolation";
        case ErrorCode::PoissonFailure: return "PoissonFailure";
        case ErrorCode::IntegrationFailure: return "IntegrationFailure";
        case ErrorCode::BoundaryTooClose: return "BoundaryTooClose";
        case ErrorCode::UnresolvedWinding: return "UnresolvedWinding";
        case ErrorCode::BoundaryPoint: return "BoundaryPoint";
        case ErrorCode::NonPositiveValues: return "NonPositiveValues";
        case ErrorCode::WindowTooShort: return "WindowTooShort";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ConfigParse: return "ConfigParse";
    }
    return "Unknown";
}

}  // namespace stratdamp
