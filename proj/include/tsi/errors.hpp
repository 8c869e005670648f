#pragma once

#include <stdexcept>
#include <string>

namespace tsi {

enum class Err {
    BadInput,
    EmptyPiece,
    WindowTooLarge,
    NotAdmissible,
    Unsupported,
    NotHereditary,
    DegenerateTheta,
    EmptyVector,
    BadAdmissibility,
    UnknownCharacter,
    LeafOutsideSupport,
    ToleranceUnreachable,
    Infeasible,
    PreconditionFailed,
    LengthMismatch,
    CannotInterleave,
    NOutOfRange,
    Explosion,
    BoundsTooTight,
    EnumerationLimit,
    BudgetExhausted,
};

const char* err_name(Err code);

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

} // namespace tsi
