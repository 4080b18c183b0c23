#pragma once

#include <stdexcept>
#include <string>

namespace nilgeo {

enum class ErrorCode {
    InvalidRank,
    NotARoot,
    OrbitBudgetExceeded,
    PreconditionViolated,
    DimensionCapExceeded,
    DegenerateEigenvalue,
    KernelNotTrivial,
    NotRationalVector,
    ZeroMap,
    NotResonant,
    NotInNZ,
    BadDirection,
    BudgetExhausted,
    InvalidInput,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace nilgeo
