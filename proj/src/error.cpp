#include "tdmc/error.hpp"

namespace tdmc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorKind::BadGroupSpec: return "BadGroupSpec";
    case ErrorKind::SizeBound: return "SizeBound";
    case ErrorKind::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::WrongAmbient: return "WrongAmbient";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::NotTrivializing: return "NotTrivializing";
    case ErrorKind::FormulaNotClosed: return "FormulaNotClosed";
    case ErrorKind::Inadmissible: return "Inadmissible";
    case ErrorKind::ModulusMismatch: return "ModulusMismatch";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Error";
}

}  // namespace tdmc
