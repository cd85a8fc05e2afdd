#include "prn/error.hpp"

namespace prn {

const char* category_name(errc code) {
  switch (code) {
    case errc::duplicate_variable: return "DuplicateVariable";
    case errc::disconnected: return "Disconnected";
    case errc::unknown_name: return "UnknownName";
    case errc::dangling_edge_index: return "DanglingEdgeIndex";
    case errc::unobserved_value_used: return "UnobservedValueUsed";
    case errc::invalid_edge: return "InvalidEdge";
    case errc::zero_weight: return "ZeroWeight";
    case errc::unknown_variable_or_tag: return "UnknownVariableOrTag";
    case errc::unknown_variable: return "UnknownVariable";
    case errc::unknown_value: return "UnknownValue";
    case errc::all_unobserved: return "AllUnobserved";
    case errc::zero_condition_mass: return "ZeroConditionMass";
    case errc::non_integral_recursion: return "NonIntegralRecursion";
    case errc::enumeration_cap_exceeded: return "EnumerationCapExceeded";
    case errc::not_factorized: return "NotFactorized";
    case errc::empty_joint: return "EmptyJoint";
    case errc::contradictory_evidence: return "ContradictoryEvidence";
    case errc::negative_value: return "NegativeValue";
    case errc::column_not_normalized: return "ColumnNotNormalized";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::parse_error: return "ParseError";
    case errc::invariant_violation: return "InvariantViolation";
    case errc::usage_error: return "UsageError";
  }
  return "Error";
}

int exit_code(errc code) {
  switch (code) {
    case errc::usage_error:
      return 1;
    case errc::not_factorized:
    case errc::empty_joint:
    case errc::contradictory_evidence:
    case errc::zero_condition_mass:
    case errc::all_unobserved:
      return 3;
    default:
      return 2;
  }
}

}  // namespace prn
