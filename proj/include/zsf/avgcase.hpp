#pragma once

#include <optional>

#include "zsf/arith.hpp"
#include "zsf/core.hpp"

namespace zsf {

// Positions of a subset of `values` summing to `target` in F_q, by dynamic
// programming with parent pointers. Prefers leaving items out.
std::optional<std::vector<std::size_t>> subset_with_sum(const Modulus& M, const std::vector<Int>& values,
                                                        const Int& target);

// Smallest d with 2^d >= q / eps.
unsigned log2_ceil_ratio(const Int& q, const Rational& eps);

// Disjoint zero-sums with coefficients in {1, 2}, merged into a {0,1}-zero-sum
// with the help of a (+-1) solver run on the sums of the 2-parts.
CoeffMap combine_012_to_01(const VecFamily& F, const std::vector<CoeffMap>& groups, const Solver& pm1);

// B = aA + b. Runs `inner` (A-zero-sums, 0 in A) on d batches of
// inner.input_size vectors after splitting off v* = -(b/a) * sum v_i, then
// picks batches whose pivot weights sum to 1. Every vector of F gets a
// coefficient. SampleFailure when no such subset exists.
CoeffMap affine_transfer(const VecFamily& F, const Solver& inner, const CoeffSet& A, const Int& a,
                         const Int& b, unsigned d);
Int affine_transfer_threshold(std::size_t inner_size, unsigned d);

// {0,1,2}-zero-sum: affine_transfer with A = {0, +-1}, a = b = 1.
CoeffMap solve_012(const VecFamily& F, const Solver& pm1, unsigned d);

// Group count for a target of mbar successes at per-batch success 0.99.
Int group_count(const Int& mbar, const Rational& eps);

struct SubsetOptions {
  // When false, runs on whatever input is given and consumes batches until
  // enough groups succeed or the input runs out (SolveFailed then).
  bool enforce_threshold = true;
};

// {0,1}-zero-sum on uniform inputs from any (+-1) engine.
CoeffMap subset_sum_with(const VecFamily& F, const Solver& pm1, const Rational& eps,
                         SubsetOptions opt = {});
Int subset_sum_threshold(const Int& q, std::size_t pm1_size, const Rational& eps);

// The power of 2 in (q/4, floor(q/2)].
unsigned subset_k(const Int& q);

// q >= 5, sis_power2 with k = subset_k(q) as the engine.
CoeffMap subset_sum_random(const VecFamily& F, const Rational& eps, unsigned r = 1,
                           SubsetOptions opt = {});
Int subset_sum_random_threshold(const Int& q, std::size_t n, const Rational& eps, unsigned r = 1);

// A-zero-sum on uniform inputs for A containing a long AP. If `ap` is absent
// and 4^c <= q + 2 (c = |F_q \ A|), an AP is found with lev_long_ap.
CoeffMap cis_simple(const VecFamily& F, const CoeffSet& A, unsigned r, const Rational& eps,
                    std::optional<APWitness> ap = std::nullopt);

struct CisSimplePlan {
  APWitness ap;
  unsigned k = 2;  // power of 2 with 1 + 2 floor(q/2k) <= ap.length
  unsigned d = 0;
  Int threshold;
};
CisSimplePlan cis_simple_plan(const Modulus& M, std::size_t n, const CoeffSet& A, unsigned r,
                              const Rational& eps, std::optional<APWitness> ap = std::nullopt);

}  // namespace zsf
