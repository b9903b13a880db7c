#include "zsf/oracle.hpp"

#include <cstdlib>

namespace zsf {

std::uint64_t oracle_budget() {
  if (const char* s = std::getenv("ZSF_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return v;
  }
  return 2000000;
}

std::optional<CoeffMap> brute_solve(const Problem& P, std::optional<std::uint64_t> budget) {
  const Modulus& M = P.modulus();
  const VecFamily& F = P.family;
  std::uint64_t cap = budget.value_or(oracle_budget());
  std::size_t m = F.size(), n = F.dim();

  std::vector<std::vector<Int>> vals(m);
  Int total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == 0 || P.constraints.size() > 1) {
      CoeffSet A = P.constraint(i).allowed(M);
      if (A.size() > Int(cap)) fail(Errc::budget_exceeded, "allowed set larger than the budget");
      vals[i] = A.elements();
    } else {
      vals[i] = vals[0];
    }
    if (vals[i].empty()) return std::nullopt;
    total *= vals[i].size();
    if (total > Int(cap))
      fail(Errc::budget_exceeded, "more than " + std::to_string(cap) + " candidates");
  }
  if (m == 0) return std::nullopt;

  FieldVec target = P.target ? *P.target : FieldVec(n);
  std::vector<std::size_t> digit(m, 0);
  FieldVec sum(n);
  for (std::size_t i = 0; i < m; ++i) axpy(M, sum, vals[i][0], F[i]);
  for (;;) {
    if (sum == target) {
      CoeffMap x;
      for (std::size_t i = 0; i < m; ++i) x.set(M, i, vals[i][digit[i]]);
      if (!x.empty()) return x;
    }
    // odometer step, last index fastest
    std::size_t i = m;
    while (i > 0) {
      --i;
      const Int& old = vals[i][digit[i]];
      if (++digit[i] < vals[i].size()) {
        axpy(M, sum, M.sub(vals[i][digit[i]], old), F[i]);
        break;
      }
      digit[i] = 0;
      axpy(M, sum, M.sub(vals[i][0], old), F[i]);
      if (i == 0) return std::nullopt;
    }
  }
}

TotalityReport totality_check(const Modulus& M, std::size_t n, std::size_t m, const Constraint& c,
                              std::optional<std::uint64_t> budget) {
  std::uint64_t cap = budget.value_or(oracle_budget());
  if (!M.fits_u64()) fail(Errc::budget_exceeded, "modulus too large to enumerate");
  std::uint64_t q = M.q64();
  std::size_t cells = n * m;
  Int count = 1;
  for (std::size_t i = 0; i < cells; ++i) {
    count *= q;
    if (count > Int(cap)) fail(Errc::budget_exceeded, "more than " + std::to_string(cap) + " families");
  }
  TotalityReport rep;
  std::vector<std::uint64_t> e(cells, 0);
  for (;;) {
    VecFamily F(M, n);
    for (std::size_t i = 0; i < m; ++i) {
      FieldVec v(n);
      for (std::size_t j = 0; j < n; ++j) v[j] = Int(e[i * n + j]);
      F.push(std::move(v));
    }
    ++rep.families;
    if (brute_solve(Problem(F, c), cap))
      ++rep.solvable;
    else if (!rep.counterexample)
      rep.counterexample = F;
    std::size_t t = cells;
    while (t > 0 && ++e[t - 1] == q) e[--t] = 0;
    if (t == 0) break;
  }
  return rep;
}

VecFamily tight_family(const Modulus& M, std::size_t n) {
  if (!M.fits_u64()) fail(Errc::precondition_violated, "tight family needs a small modulus");
  VecFamily F(M, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::uint64_t c = 0; c + 1 < M.q64(); ++c) {
      FieldVec v(n);
      v[j] = 1;
      F.push(std::move(v));
    }
  return F;
}

}  // namespace zsf
