#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "zsf/error.hpp"

namespace zsf {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Miller-Rabin. Deterministic below 2^64, 40 fixed-seed rounds above.
bool is_prime(const Int& n);

// A prime modulus q >= 3. Residues are canonical Ints in [0, q).
class Modulus {
 public:
  explicit Modulus(const Int& q);
  explicit Modulus(std::uint64_t q) : Modulus(Int(q)) {}

  const Int& q() const { return q_; }
  // floor(q/2), the largest balanced magnitude.
  const Int& half() const { return half_; }
  bool fits_u64() const { return small_; }
  std::uint64_t q64() const { return q64_; }

  Int reduce(const Int& x) const;
  Int add(const Int& a, const Int& b) const;
  Int sub(const Int& a, const Int& b) const;
  Int neg(const Int& a) const;
  Int mul(const Int& a, const Int& b) const;
  Int pow(const Int& a, Int e) const;
  // Throws NonInvertible on 0.
  Int inv(const Int& a) const;
  Int div(const Int& a, const Int& b) const { return mul(a, inv(b)); }

  // Representative in [-floor(q/2), floor(q/2)].
  Int lift(const Int& r) const;
  bool is_canonical(const Int& r) const { return r >= 0 && r < q_; }

  bool operator==(const Modulus& o) const { return q_ == o.q_; }

 private:
  Int q_;
  Int half_;
  bool small_ = false;
  std::uint64_t q64_ = 0;
};

inline Int balanced_lift(const Int& x, const Modulus& M) { return M.lift(x); }
inline Int inverse(const Int& x, const Modulus& M) { return M.inv(x); }
inline bool check_prime(const Int& q) { return is_prime(q); }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }
std::string to_string(const Int& x);
Int parse_int(const std::string& s);

// ceil and floor of exact rationals.
Int ceil_q(const Rational& r);
Int floor_q(const Rational& r);

// Smallest t with base^t >= x (x >= 1).
unsigned ceil_log(const Int& base, const Int& x);

}  // namespace zsf
