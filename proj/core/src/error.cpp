#include "hypertheta/error.hpp"

namespace hypertheta {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateCurve: return "DegenerateCurve";
        case ErrorCode::EvenCount: return "EvenCount";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::AtBranchPoint: return "AtBranchPoint";
        case ErrorCode::NotOnCurve: return "NotOnCurve";
        case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
        case ErrorCode::LegendreCheckFailed: return "LegendreCheckFailed";
        case ErrorCode::TauNotSiegel: return "TauNotSiegel";
        case ErrorCode::PathThroughBranchPoint: return "PathThroughBranchPoint";
        case ErrorCode::HalfPeriodMismatch: return "HalfPeriodMismatch";
        case ErrorCode::RepeatedSupport: return "RepeatedSupport";
        case ErrorCode::MultiplicityOutOfRange: return "MultiplicityOutOfRange";
        case ErrorCode::WrongMultiplicity: return "WrongMultiplicity";
        case ErrorCode::BadKSize: return "BadKSize";
        case ErrorCode::KNotInJ: return "KNotInJ";
        case ErrorCode::SmallDenominator: return "SmallDenominator";
        case ErrorCode::SpecialDivisor: return "SpecialDivisor";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace hypertheta
