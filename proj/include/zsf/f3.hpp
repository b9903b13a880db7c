#pragma once

#include "zsf/core.hpp"

namespace zsf {

enum class F3Strategy { weak, quadratic, main };

const char* to_string(F3Strategy s);

// q = 3. A nontrivial (+-1)-zero-sum with support <= floor(2(l+1)/3) + t, where
// l = rank(F) and t = ceil(log_3(l+1)); needs m >= l + t.
CoeffMap f3_sparse_dependence(const VecFamily& F);

// q = 3. A nonempty subset of F summing to zero (all coefficients 1).
CoeffMap f3_solve(const VecFamily& F, F3Strategy s);

// Vectors needed by f3_solve in dimension n.
Int f3_threshold(std::size_t n, F3Strategy s);

// Exact value of the main recursion at n (before the ceiling). At each level
// it takes the cheaper of the sparse-dependence step and the plain
// dependency step.
Rational f3_main_recursion(std::size_t n);
// The same recursion using only the sparse-dependence step.
Rational f3_sparse_recursion(std::size_t n);
// ((n+1)(n+2)+1)/3 + n*ceil(log_3(n+1)), an upper bound on both.
Rational f3_closed_form(std::size_t n);

}  // namespace zsf
