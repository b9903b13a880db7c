#pragma once

#include <array>
#include <optional>

#include "zsf/core.hpp"

namespace zsf {

// {start + j*step : 0 <= j < length}
struct APWitness {
  Int start;
  Int step;
  std::size_t length = 0;

  std::vector<Int> terms(const Modulus& M) const;
  bool inside(const Modulus& M, const CoeffSet& A) const;
};

// These searches enumerate F_q; q must be below 2^31.

// |F_q \ A| = c with 4^c <= q + 2. AP of length >= (q+1)/2 inside A.
APWitness lev_long_ap(const Modulus& M, const CoeffSet& A);

struct AntipodalHole {
  Int x;               // nonzero
  Int z;               // in A, with z - x and z + x outside A
  std::optional<Int> y;  // y not in {0, +-x}, z - y and z + y in A
};

// 2 <= c < q. With want_y, also needs c < (q+1)/2 (NoY otherwise).
AntipodalHole antipodal_hole(const Modulus& M, const CoeffSet& A, bool want_y = true);

// bits[i + 4] = c_i for i in -4..4; c_0 = 0 and c_i + c_-i = 1.
// Returns (j, k, l) with j < k < l, j + l = 2k and c_j = c_k = c_l = 0.
std::array<int, 3> window_3ap(const std::array<int, 9>& bits);

// q >= 11, |F_q \ A| = (q+1)/2. A 3-term AP inside A.
APWitness middle_3ap(const Modulus& M, const CoeffSet& A);

}  // namespace zsf
