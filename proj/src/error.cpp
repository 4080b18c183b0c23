#include "nilgeo/error.hpp"

namespace nilgeo {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidRank: return "InvalidRank";
        case ErrorCode::NotARoot: return "NotARoot";
        case ErrorCode::OrbitBudgetExceeded: return "OrbitBudgetExceeded";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::DimensionCapExceeded: return "DimensionCapExceeded";
        case ErrorCode::DegenerateEigenvalue: return "DegenerateEigenvalue";
        case ErrorCode::KernelNotTrivial: return "KernelNotTrivial";
        case ErrorCode::NotRationalVector: return "NotRationalVector";
        case ErrorCode::ZeroMap: return "ZeroMap";
        case ErrorCode::NotResonant: return "NotResonant";
        case ErrorCode::NotInNZ: return "NotInNZ";
        case ErrorCode::BadDirection: return "BadDirection";
        case ErrorCode::BudgetExhausted: return "BudgetExhausted";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

}  // namespace nilgeo
