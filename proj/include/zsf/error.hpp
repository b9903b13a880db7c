#pragma once

#include <stdexcept>
#include <string>

namespace zsf {

enum class Errc {
  not_prime,
  non_invertible,
  no_dependency,
  zero_vector,
  dimension_mismatch,
  too_few_vectors,
  bad_k,
  trivial_input,
  not_zero_sum_bounded,
  too_few_groups,
  sample_failure,
  insufficient_input,
  solve_failed,
  bad_partition,
  k_too_large,
  case_dispatch_failure,
  precondition_violated,
  no_y,
  no_long_ap,
  budget_exceeded,
  parse_error,
  io_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Precondition failures, sample failures and algebraic failures all land here;
// callers dispatch on code().
[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace zsf
