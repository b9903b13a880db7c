#pragma once

#include <cstdint>
#include <optional>

#include "zsf/core.hpp"

namespace zsf {

// 2e6 unless ZSF_BUDGET is set.
std::uint64_t oracle_budget();

// Lexicographically first nontrivial solution, coefficient vectors ordered in
// mixed radix over each allowed set sorted by residue (index 0 most
// significant). BudgetExceeded if the candidate count is over the budget.
std::optional<CoeffMap> brute_solve(const Problem& P, std::optional<std::uint64_t> budget = std::nullopt);

struct TotalityReport {
  std::uint64_t families = 0;
  std::uint64_t solvable = 0;
  std::optional<VecFamily> counterexample;  // first unsolvable family
  bool total() const { return families == solvable; }
};

// Runs brute_solve on every family of m vectors in F_q^n.
TotalityReport totality_check(const Modulus& M, std::size_t n, std::size_t m, const Constraint& c,
                              std::optional<std::uint64_t> budget = std::nullopt);

// q-1 copies of each unit vector: no nonempty {0,1}-zero-sum.
VecFamily tight_family(const Modulus& M, std::size_t n);

}  // namespace zsf
