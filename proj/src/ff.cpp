#include "zsf/ff.hpp"

#include <random>

namespace zsf {

namespace {

bool mr_round(const Int& n, const Int& d, unsigned s, const Int& a) {
  Int x = boost::multiprecision::powm(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  static const unsigned small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a proof for every n < 3.3e24.
  if (n < (Int(1) << 64)) {
    for (unsigned a : small)
      if (!mr_round(n, d, s, Int(a))) return false;
    return true;
  }
  std::mt19937_64 rng(0x5eedf00dULL);
  unsigned chunks = static_cast<unsigned>(boost::multiprecision::msb(n) / 64 + 1);
  const Int span = n - 3;
  for (int round = 0; round < 40; ++round) {
    Int w = 0;
    for (unsigned c = 0; c < chunks; ++c) w = (w << 64) | Int(rng());
    if (!mr_round(n, d, s, 2 + w % span)) return false;
  }
  return true;
}

Modulus::Modulus(const Int& q) : q_(q) {
  if (q < 3 || (q & 1) == 0 || !is_prime(q))
    fail(Errc::not_prime, "modulus " + to_string(q) + " is not an odd prime");
  half_ = q_ >> 1;
  small_ = q_ < (Int(1) << 63);
  if (small_) q64_ = static_cast<std::uint64_t>(q_);
}

Int Modulus::reduce(const Int& x) const {
  Int r = x % q_;
  if (r < 0) r += q_;
  return r;
}

Int Modulus::add(const Int& a, const Int& b) const {
  Int r = a + b;
  if (r >= q_) r -= q_;
  return r;
}

Int Modulus::sub(const Int& a, const Int& b) const {
  Int r = a - b;
  if (r < 0) r += q_;
  return r;
}

Int Modulus::neg(const Int& a) const { return a == 0 ? Int(0) : Int(q_ - a); }

Int Modulus::mul(const Int& a, const Int& b) const { return (a * b) % q_; }

Int Modulus::pow(const Int& a, Int e) const {
  if (e < 0) return pow(inv(a), -e);
  return boost::multiprecision::powm(a, e, q_);
}

Int Modulus::inv(const Int& a) const {
  Int r = reduce(a);
  if (r == 0) fail(Errc::non_invertible, "zero has no inverse");
  return boost::multiprecision::powm(r, q_ - 2, q_);
}

Int Modulus::lift(const Int& r) const { return r > half_ ? Int(r - q_) : r; }

std::string to_string(const Int& x) { return x.str(); }

Int parse_int(const std::string& s) {
  if (s.empty()) fail(Errc::parse_error, "empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) fail(Errc::parse_error, "bad integer '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') fail(Errc::parse_error, "bad integer '" + s + "'");
  return Int(s);
}

Int floor_q(const Rational& r) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  Int f = num / den;
  if (num % den != 0 && num < 0) f -= 1;
  return f;
}

Int ceil_q(const Rational& r) { return -floor_q(-r); }

unsigned ceil_log(const Int& base, const Int& x) {
  unsigned t = 0;
  Int p = 1;
  while (p < x) {
    p *= base;
    ++t;
  }
  return t;
}

}  // namespace zsf
