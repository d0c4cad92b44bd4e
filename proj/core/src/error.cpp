#include "oinfty/error.hpp"

namespace oinfty {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::NotFinite: return "group is not finite";
    case ErrorKind::SizeLimit: return "size limit exceeded";
    case ErrorKind::BudgetExceeded: return "search budget exceeded";
    case ErrorKind::UnsupportedRepresentation: return "unsupported representation";
    case ErrorKind::ConditionNotViolated: return "condition is not violated";
    case ErrorKind::InternalInvariantBroken: return "internal invariant broken";
  }
  return "unknown error";
}

}  // namespace oinfty
