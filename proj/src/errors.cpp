#include "tsi/errors.hpp"

namespace tsi {

const char* err_name(Err code) {
    switch (code) {
    case Err::BadInput: return "BadInput";
    case Err::EmptyPiece: return "EmptyPiece";
    case Err::WindowTooLarge: return "WindowTooLarge";
    case Err::NotAdmissible: return "NotAdmissible";
    case Err::Unsupported: return "Unsupported";
    case Err::NotHereditary: return "NotHereditary";
    case Err::DegenerateTheta: return "DegenerateTheta";
    case Err::EmptyVector: return "EmptyVector";
    case Err::BadAdmissibility: return "BadAdmissibility";
    case Err::UnknownCharacter: return "UnknownCharacter";
    case Err::LeafOutsideSupport: return "LeafOutsideSupport";
    case Err::ToleranceUnreachable: return "ToleranceUnreachable";
    case Err::Infeasible: return "Infeasible";
    case Err::PreconditionFailed: return "PreconditionFailed";
    case Err::LengthMismatch: return "LengthMismatch";
    case Err::CannotInterleave: return "CannotInterleave";
    case Err::NOutOfRange: return "NOutOfRange";
    case Err::Explosion: return "Explosion";
    case Err::BoundsTooTight: return "BoundsTooTight";
    case Err::EnumerationLimit: return "EnumerationLimit";
    case Err::BudgetExhausted: return "BudgetExhausted";
    }
    return "UnknownError";
}

} // namespace tsi
