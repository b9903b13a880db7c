#include "zsf/error.hpp"

namespace zsf {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::not_prime: return "NotPrime";
    case Errc::non_invertible: return "NonInvertible";
    case Errc::no_dependency: return "NoDependency";
    case Errc::zero_vector: return "ZeroVector";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::too_few_vectors: return "TooFewVectors";
    case Errc::bad_k: return "BadK";
    case Errc::trivial_input: return "TrivialInput";
    case Errc::not_zero_sum_bounded: return "NotZeroSumBounded";
    case Errc::too_few_groups: return "TooFewGroups";
    case Errc::sample_failure: return "SampleFailure";
    case Errc::insufficient_input: return "InsufficientInput";
    case Errc::solve_failed: return "SolveFailed";
    case Errc::bad_partition: return "BadPartition";
    case Errc::k_too_large: return "KTooLarge";
    case Errc::case_dispatch_failure: return "CaseDispatchFailure";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::no_y: return "NoY";
    case Errc::no_long_ap: return "NoLongAP";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IOError";
  }
  return "Unknown";
}

void fail(Errc code, const std::string& what) {
  throw Error(code, std::string(errc_name(code)) + ": " + what);
}

}  // namespace zsf
