#pragma once

#include <random>

#include "zsf/io.hpp"

namespace zsf::test {

inline VecFamily family(std::uint64_t seed, std::uint64_t q, std::size_t n, std::size_t m) {
  return generate(seed, Modulus(q), n, m);
}

// Uniform over the nonzero vectors, so no zero-vector shortcut can fire.
inline VecFamily nonzero_family(std::uint64_t seed, std::uint64_t q, std::size_t n, std::size_t m) {
  Modulus M(q);
  std::mt19937_64 rng(seed);
  VecFamily F(M, n);
  while (F.size() < m) {
    FieldVec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = uniform_residue(rng, M.q());
    if (!v.is_zero()) F.push(std::move(v));
  }
  return F;
}

inline VecFamily family_of(std::uint64_t q, const std::vector<std::vector<int>>& rows) {
  Modulus M(q);
  VecFamily F(M, rows.empty() ? 0 : rows[0].size());
  for (const auto& r : rows) {
    FieldVec v(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) v[j] = M.reduce(Int(r[j]));
    F.push(std::move(v));
  }
  return F;
}

inline bool solves(const VecFamily& F, const Constraint& c, const CoeffMap& x) {
  return verify(Problem(F, c), x).ok();
}

// Every coefficient in A, sums to zero, not all zero.
inline bool solves_in(const VecFamily& F, const CoeffSet& A, const CoeffMap& x) {
  if (x.empty() || !F.combine(x).is_zero()) return false;
  for (const auto& [i, v] : x)
    if (!A.contains(v)) return false;
  return true;
}

inline Int linf(const Modulus& M, const CoeffMap& x) { return x.max_abs(M); }

}  // namespace zsf::test
