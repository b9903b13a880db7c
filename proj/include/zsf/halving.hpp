#pragma once

#include <map>

#include "zsf/core.hpp"

namespace zsf {

// Coefficients as signed integers (balanced lifts), index -> value, no zeros.
using SignedMap = std::map<std::size_t, Int>;

SignedMap lift_map(const Modulus& M, const CoeffMap& x);
CoeffMap reduce_map(const Modulus& M, const SignedMap& x);

// A (+-h -> +-floor(h/2))-reducible vector built from a zero-sum alpha.
// Construction and expand() look only at coefficients, never at vectors.
class Reducible {
 public:
  // alpha: nontrivial zero-sum with |alpha_i| <= h; h >= 2.
  Reducible(const SignedMap& alpha, const Int& h);

  const Int& h() const { return h_; }
  const Int& h_prime() const { return hp_; }
  // u = sum u_coeffs_i v_i with u_coeffs in {-1, +1}.
  const SignedMap& u_coeffs() const { return u_; }
  // alpha after the optional rescaling by floor(h/a).
  const SignedMap& scaled_alpha() const { return alpha_; }
  std::vector<std::size_t> source() const;

  // For |c| <= h: coefficients in [-h', h'] with sum expand(c)_i v_i = c u.
  SignedMap expand(const Int& c) const;
  FieldVec u(const VecFamily& F) const;

 private:
  Int h_, hp_;
  SignedMap alpha_, u_;
};

Reducible reducible_from_zero_sum(const Modulus& M, const CoeffMap& alpha, const Int& h);

// Runs `inner` (nontrivial (+-h)-zero-sums from inner.input_size vectors) on
// m = inner.input_size batches, then on the batch vectors u. Output bound
// floor(h/2). Needs |F| >= m^2.
CoeffMap iterate_halving(const VecFamily& F, const Solver& inner, const Int& h);

// Nonzero beta in F_q^r minimising the nonzeros of sum beta_j y_j, found by
// exact conditional expectations; nnz <= (1-1/q)/(1-1/q^r) * (#coords).
std::vector<Int> sparse_combination(const Modulus& M, const std::vector<std::vector<Int>>& y,
                                    std::size_t coords);

Rational sparse_ratio(const Int& q, unsigned r);

// Nontrivial zero-sum with support <= floor((1-1/q)/(1-1/q^r) * rank) + r.
// Needs |F| >= rank + r.
CoeffMap sparse_full_zero_sum(const VecFamily& F, unsigned r);

// q >= 5. Nontrivial (+-floor(q/4))-zero-sum.
CoeffMap sis_quarter(const VecFamily& F, unsigned r = 1);
Rational sis_quarter_bound(const Int& q, std::size_t n, unsigned r = 1);

// Which (+-floor(q/2)) routine seeds the halving tower.
enum class HalvingBase {
  quarter,     // sis_quarter, threshold^(k/2)
  dependency,  // find_dependency on n+1 vectors, (n+1)^k
};

// k a power of 2 with 2 <= k <= floor(q/2) (k = 1 allowed with the
// dependency base). Nontrivial (+-floor(q/(2k)))-zero-sum.
CoeffMap sis_power2(const VecFamily& F, unsigned k, unsigned r = 1,
                    HalvingBase base = HalvingBase::quarter);
Int sis_power2_threshold(const Int& q, std::size_t n, unsigned k, unsigned r = 1,
                         HalvingBase base = HalvingBase::quarter);
Solver sis_power2_solver(const Modulus& M, std::size_t n, unsigned k, unsigned r = 1,
                         HalvingBase base = HalvingBase::quarter);

}  // namespace zsf
