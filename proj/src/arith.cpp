#include "zsf/arith.hpp"

#include <algorithm>
#include <map>

namespace zsf {

std::vector<Int> APWitness::terms(const Modulus& M) const {
  std::vector<Int> t;
  for (std::size_t j = 0; j < length; ++j) t.push_back(M.reduce(start + Int(j) * step));
  return t;
}

bool APWitness::inside(const Modulus& M, const CoeffSet& A) const {
  if (M.reduce(step) == 0) return false;
  for (const auto& x : terms(M))
    if (!A.contains(x)) return false;
  return true;
}

namespace {

using i64 = long long;

struct Small {
  i64 q;
  std::vector<char> in;  // membership in A

  Small(const Modulus& M, const CoeffSet& A) {
    if (M.q() >= (Int(1) << 31)) fail(Errc::precondition_violated, "set search needs q < 2^31");
    q = static_cast<i64>(M.q());
    in.assign(static_cast<std::size_t>(q), 0);
    for (const auto& [lo, hi] : A.runs())
      for (i64 x = static_cast<i64>(lo); x <= static_cast<i64>(hi); ++x) in[x] = 1;
  }
  i64 mod(i64 x) const { return ((x % q) + q) % q; }
  i64 mul(i64 a, i64 b) const { return mod(a * b); }
  i64 inv(i64 a) const {
    i64 r = 1, b = mod(a), e = q - 2;
    while (e) {
      if (e & 1) r = r * b % q;
      b = b * b % q;
      e >>= 1;
    }
    return r;
  }
  bool has(i64 x) const { return in[mod(x)]; }
  std::vector<i64> missing() const {
    std::vector<i64> out;
    for (i64 x = 0; x < q; ++x)
      if (!in[x]) out.push_back(x);
    return out;
  }
};

APWitness checked(const Modulus& M, const CoeffSet& A, APWitness w, const char* who) {
  w.start = M.reduce(w.start);
  w.step = M.reduce(w.step);
  if (!w.inside(M, A)) fail(Errc::solve_failed, std::string(who) + " produced an AP outside the set");
  return w;
}

}  // namespace

APWitness lev_long_ap(const Modulus& M, const CoeffSet& A) {
  Small S(M, A);
  const i64 q = S.q;
  if (q < 5) fail(Errc::precondition_violated, "lev_long_ap needs q >= 5");
  std::vector<i64> bad = S.missing();
  std::size_t c = bad.size();
  // 4^c <= q + 2
  if (c >= 16 || (i64(1) << (2 * c)) > q + 2)
    fail(Errc::precondition_violated, "lev_long_ap needs 4^c <= q + 2, c = " + std::to_string(c));
  if (c == 0) return checked(M, A, {0, 1, static_cast<std::size_t>((q + 1) / 2)}, "lev_long_ap");

  // Translate so that 0 lies in the set.
  i64 tau = 0;
  while (!S.has(tau)) ++tau;
  for (auto& b : bad) b = S.mod(b - tau);

  // F_q \ {0} as four runs starting at 1.
  std::array<i64, 4> lo{}, len{};
  i64 base = (q - 1) / 4, rem = (q - 1) % 4, at = 1;
  for (int i = 0; i < 4; ++i) {
    len[i] = base + (i < rem ? 1 : 0);
    lo[i] = at;
    at += len[i];
  }
  std::vector<int> cell(static_cast<std::size_t>(q), -1);
  for (int i = 0; i < 4; ++i)
    for (i64 x = lo[i]; x < lo[i] + len[i]; ++x) cell[x] = i;
  i64 w = *std::max_element(len.begin(), len.end()) - 1;

  std::map<std::vector<int>, i64> seen;
  for (i64 s = 1; s < q; ++s) {
    std::vector<int> pat;
    for (i64 b : bad) pat.push_back(cell[S.mul(s, b)]);
    if (std::all_of(pat.begin(), pat.end(), [&](int v) { return v == pat[0]; })) {
      // s * bad sits in one run; its complement is a cyclic interval.
      int b = pat[0];
      i64 si = S.inv(s);
      APWitness ap{Int(S.mul(si, lo[b] + len[b]) + tau), Int(si), static_cast<std::size_t>(q - len[b])};
      return checked(M, A, ap, "lev_long_ap");
    }
    auto [it, fresh] = seen.emplace(pat, s);
    if (!fresh) {
      // (s - s') * bad lies in [-w, w] \ {0}.
      i64 d = S.inv(s - it->second);
      APWitness ap{Int(S.mul(d, w + 1) + tau), Int(d), static_cast<std::size_t>(q - 2 * w - 1)};
      return checked(M, A, ap, "lev_long_ap");
    }
  }
  fail(Errc::solve_failed, "lev_long_ap: no dilation found");
}

AntipodalHole antipodal_hole(const Modulus& M, const CoeffSet& A, bool want_y) {
  Small S(M, A);
  const i64 q = S.q;
  std::vector<i64> bad = S.missing();
  i64 c = static_cast<i64>(bad.size());
  if (c < 2 || c >= q) fail(Errc::precondition_violated, "antipodal_hole needs 2 <= c < q");
  if (want_y && 2 * c >= q + 1) fail(Errc::no_y, "a hole partner y needs c < (q+1)/2");
  i64 half_inv = S.inv(2);
  for (std::size_t i = 0; i < bad.size(); ++i) {
    for (std::size_t j = i + 1; j < bad.size(); ++j) {
      i64 z = S.mul(bad[i] + bad[j], half_inv);
      if (!S.has(z)) continue;
      i64 x = S.mod(z - bad[i]);
      AntipodalHole h{Int(x), Int(z), std::nullopt};
      if (!want_y) return h;
      for (i64 y = 1; y < q; ++y) {
        if (y == x || y == S.mod(-x)) continue;
        if (S.has(z - y) && S.has(z + y)) {
          h.y = Int(y);
          return h;
        }
      }
      fail(Errc::no_y, "no hole partner found");
    }
  }
  fail(Errc::solve_failed, "antipodal_hole: no midpoint inside the set");
}

std::array<int, 3> window_3ap(const std::array<int, 9>& bits) {
  auto c = [&](int i) { return bits[static_cast<std::size_t>(i + 4)]; };
  bool ok = c(0) == 0;
  for (int i = 1; i <= 4; ++i) ok = ok && c(i) + c(-i) == 1;
  if (!ok) fail(Errc::precondition_violated, "window bits must satisfy c_0 = 0, c_i + c_-i = 1");
  for (int j = -4; j <= 4; ++j)
    for (int k = j + 1; k <= 4; ++k) {
      int l = 2 * k - j;
      if (l > 4) break;
      if (c(j) == 0 && c(k) == 0 && c(l) == 0) return {j, k, l};
    }
  fail(Errc::solve_failed, "window_3ap: no triple");
}

APWitness middle_3ap(const Modulus& M, const CoeffSet& A) {
  Small S(M, A);
  const i64 q = S.q;
  if (q < 11) fail(Errc::precondition_violated, "middle_3ap needs q >= 11");
  i64 c = q - static_cast<i64>(std::count(S.in.begin(), S.in.end(), 1));
  if (2 * c != q + 1) fail(Errc::precondition_violated, "middle_3ap needs |F_q \\ A| = (q+1)/2");
  AntipodalHole h = antipodal_hole(M, A, false);
  i64 x = static_cast<i64>(h.x), z = static_cast<i64>(h.z);
  i64 m = q / 2;
  i64 t = S.mul(m, S.inv(x));
  i64 ti = S.inv(t);
  // a' = t (a - z)  <=>  a = a' / t + z
  auto in_scaled = [&](i64 a) { return S.has(S.mul(ti, a) + z); };
  auto back = [&](i64 j, i64 k) {
    APWitness ap{Int(S.mod(S.mul(ti, j) + z)), Int(S.mul(ti, k - j)), 3};
    return checked(M, A, ap, "middle_3ap");
  };
  for (i64 y = 1; y < m; ++y)
    if (in_scaled(y) && in_scaled(-y)) return back(-y, 0);
  std::array<int, 9> bits{};
  for (int i = -4; i <= 4; ++i) bits[static_cast<std::size_t>(i + 4)] = in_scaled(i) ? 0 : 1;
  auto [j, k, l] = window_3ap(bits);
  (void)l;
  return back(j, k);
}

}  // namespace zsf
