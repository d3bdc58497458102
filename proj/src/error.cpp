#include "pfprint/error.hpp"

namespace pfprint {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::MissingAssignment: return "MissingAssignment";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotAProduct: return "NotAProduct";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ReservedSymbol: return "ReservedSymbol";
    case ErrorCode::NotAVariable: return "NotAVariable";
    case ErrorCode::MissingBinding: return "MissingBinding";
    case ErrorCode::ForwardReference: return "ForwardReference";
    case ErrorCode::BadQed: return "BadQed";
    case ErrorCode::MPShapeMismatch: return "MPShapeMismatch";
    case ErrorCode::GoalMismatch: return "GoalMismatch";
    case ErrorCode::UnallocatedSymbol: return "UnallocatedSymbol";
    case ErrorCode::UntrackedVariable: return "UntrackedVariable";
    case ErrorCode::InadmissibleAssignment: return "InadmissibleAssignment";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace pfprint
