#include "zsf/halving.hpp"

#include <algorithm>
#include <set>

namespace zsf {

SignedMap lift_map(const Modulus& M, const CoeffMap& x) {
  SignedMap out;
  for (const auto& [i, v] : x) out[i] = M.lift(v);
  return out;
}

CoeffMap reduce_map(const Modulus& M, const SignedMap& x) {
  CoeffMap out;
  for (const auto& [i, v] : x) out.set(M, i, v);
  return out;
}

// ---- Reducible ----

Reducible::Reducible(const SignedMap& alpha, const Int& h) : h_(h), hp_(h / 2) {
  if (h < 2) fail(Errc::precondition_violated, "halving needs h >= 2");
  Int a = 0;
  for (const auto& [i, v] : alpha) {
    if (abs_int(v) > h) fail(Errc::not_zero_sum_bounded, "coefficient " + to_string(v) + " exceeds h = " + to_string(h));
    if (v != 0) alpha_[i] = v;
    a = std::max(a, abs_int(v));
  }
  if (alpha_.empty()) fail(Errc::trivial_input, "zero-sum is all zero");
  if (a <= hp_) {
    Int t = h / a;
    for (auto& [i, v] : alpha_) v *= t;
  }
  for (const auto& [i, v] : alpha_) {
    if (v > hp_) u_[i] = 1;
    if (v < -hp_) u_[i] = -1;
  }
}

std::vector<std::size_t> Reducible::source() const {
  std::vector<std::size_t> s;
  for (const auto& [i, v] : alpha_) s.push_back(i);
  return s;
}

SignedMap Reducible::expand(const Int& c) const {
  if (abs_int(c) > h_) fail(Errc::precondition_violated, "expand(c) needs |c| <= h");
  SignedMap out;
  if (c < 0) {
    for (auto& [i, v] : expand(-c)) out[i] = -v;
    return out;
  }
  if (c == 0) return out;
  if (c <= hp_) {
    for (const auto& [i, s] : u_) out[i] = c * s;
    return out;
  }
  // c u = c u - sum alpha_i v_i
  for (const auto& [i, a] : alpha_) {
    auto it = u_.find(i);
    Int v = (it == u_.end() ? Int(0) : Int(c * it->second)) - a;
    if (v != 0) out[i] = v;
  }
  return out;
}

FieldVec Reducible::u(const VecFamily& F) const {
  FieldVec s(F.dim());
  const Modulus& M = F.modulus();
  for (const auto& [i, sign] : u_) axpy(M, s, M.reduce(sign), F[i]);
  return s;
}

Reducible reducible_from_zero_sum(const Modulus& M, const CoeffMap& alpha, const Int& h) {
  return Reducible(lift_map(M, alpha), h);
}

// ---- iteration ----

namespace {

void check_bounded(const Modulus& M, const CoeffMap& x, const Int& h) {
  if (x.empty()) fail(Errc::trivial_input, "inner solver returned the zero map");
  if (x.max_abs(M) > h) fail(Errc::not_zero_sum_bounded, "inner solver exceeded its bound");
}

SignedMap shift(const SignedMap& x, std::size_t off) {
  SignedMap out;
  for (const auto& [i, v] : x) out[i + off] = v;
  return out;
}

}  // namespace

CoeffMap iterate_halving(const VecFamily& F, const Solver& inner, const Int& h) {
  const Modulus& M = F.modulus();
  std::size_t m = inner.input_size;
  require_vectors(F.size(), Int(m) * m, "iterate_halving");
  std::vector<Reducible> red;
  VecFamily U(M, F.dim());
  for (std::size_t i = 0; i < m; ++i) {
    VecFamily batch = F.slice(i * m, m);
    CoeffMap alpha = inner.run(batch);
    check_bounded(M, alpha, h);
    red.emplace_back(lift_map(M, alpha), h);
    FieldVec u = red.back().u(batch);
    if (u.is_zero()) return reduce_map(M, shift(red.back().u_coeffs(), i * m));
    U.push(std::move(u));
  }
  CoeffMap beta = inner.run(U);
  check_bounded(M, beta, h);
  SignedMap out;
  for (const auto& [i, b] : beta) {
    SignedMap part = shift(red[i].expand(M.lift(b)), i * m);
    out.insert(part.begin(), part.end());
  }
  return reduce_map(M, out);
}

// ---- derandomised sparse combination ----

Rational sparse_ratio(const Int& q, unsigned r) {
  Int qr = boost::multiprecision::pow(q, r);
  // (1 - 1/q) / (1 - 1/q^r) = (q - 1) q^(r-1) / (q^r - 1)
  return Rational(Int((q - 1) * (qr / q)), Int(qr - 1));
}

std::vector<Int> sparse_combination(const Modulus& M, const std::vector<std::vector<Int>>& y,
                                    std::size_t coords) {
  const std::size_t r = y.size();
  if (r == 0) fail(Errc::precondition_violated, "sparse_combination needs r >= 1");
  const Int& q = M.q();
  // last[c]: last position j with y_j[c] != 0, or -1.
  std::vector<long> last(coords, -1);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t c = 0; c < coords; ++c)
      if (y[j][c] != 0) last[c] = static_cast<long>(j);

  std::vector<Int> beta(r, Int(0));
  std::vector<Int> P(coords, Int(0));
  bool nonzero = false;
  const Rational open_fixed = Rational(q - 1, q);

  for (std::size_t j = 0; j < r; ++j) {
    std::size_t s = r - j - 1;  // free positions after this one
    Rational open_free = 0;
    if (s > 0) {
      Int qs = boost::multiprecision::pow(q, static_cast<unsigned>(s));
      open_free = Rational(qs - qs / q, qs - 1);
    }
    std::set<Int> zeroing;
    for (std::size_t c = 0; c < coords; ++c)
      if (last[c] == static_cast<long>(j)) zeroing.insert(M.div(M.neg(P[c]), y[j][c]));
    std::vector<Int> cand;
    if (q <= Int(coords + 2)) {
      for (Int x = 0; x < q; ++x) cand.push_back(x);
    } else {
      cand.push_back(0);
      cand.insert(cand.end(), zeroing.begin(), zeroing.end());
      Int g = 1;
      while (zeroing.count(g)) ++g;
      cand.push_back(g);
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    }
    bool must_be_nonzero = !nonzero && s == 0;
    std::optional<Rational> best;
    Int best_x;
    for (const Int& x : cand) {
      if (x == 0 && must_be_nonzero) continue;
      bool nz = nonzero || x != 0;
      Rational e = 0;
      std::size_t fixed_nonzero = 0, open = 0;
      for (std::size_t c = 0; c < coords; ++c) {
        if (last[c] <= static_cast<long>(j)) {
          if (M.add(P[c], M.mul(x, y[j][c])) != 0) ++fixed_nonzero;
        } else {
          ++open;
        }
      }
      e = Rational(fixed_nonzero) + Rational(open) * (nz ? open_fixed : open_free);
      if (!best || e < *best) {
        best = e;
        best_x = x;
      }
    }
    beta[j] = best_x;
    for (std::size_t c = 0; c < coords; ++c) P[c] = M.add(P[c], M.mul(best_x, y[j][c]));
    nonzero = nonzero || best_x != 0;
  }
  return beta;
}

CoeffMap sparse_full_zero_sum(const VecFamily& F, unsigned r) {
  const Modulus& M = F.modulus();
  if (r < 1) fail(Errc::precondition_violated, "sparse_full_zero_sum needs r >= 1");
  if (auto z = F.find_zero()) {
    CoeffMap x;
    x.set(M, *z, Int(1));
    return x;
  }
  Decomposition d = decompose(F, r);
  std::size_t l = d.rank();
  if (d.extra.size() < r) require_vectors(F.size(), Int(l + r), "sparse_full_zero_sum");
  std::vector<Int> beta = sparse_combination(M, d.extra_coords, l);
  std::vector<Int> yb(l, Int(0));
  for (unsigned j = 0; j < r; ++j)
    for (std::size_t i = 0; i < l; ++i) yb[i] = M.add(yb[i], M.mul(beta[j], d.extra_coords[j][i]));
  CoeffMap out;
  for (unsigned j = 0; j < r; ++j) out.set(M, d.extra[j], beta[j]);
  for (std::size_t i = 0; i < l; ++i) out.set(M, d.basis[i], M.neg(yb[i]));
  Int bound = floor_q(sparse_ratio(M.q(), r) * l) + r;
  if (Int(out.support()) > bound) fail(Errc::solve_failed, "sparse support bound violated");
  return out;
}

// ---- SIS solvers ----

Rational sis_quarter_bound(const Int& q, std::size_t n, unsigned r) {
  return sparse_ratio(q, r) * Rational(Int(n) * (n + 1), 2) + Rational(Int(r) * (n + 1));
}

namespace {

void require_q5(const Modulus& M, const char* who) {
  if (M.q() < 5) fail(Errc::precondition_violated, std::string(who) + " needs q >= 5");
}

CoeffMap unit(const Modulus& M, std::size_t i) {
  CoeffMap x;
  x.set(M, i, Int(1));
  return x;
}

CoeffMap quarter_rec(const VecFamily& F, unsigned r) {
  const Modulus& M = F.modulus();
  if (auto z = F.find_zero()) return unit(M, *z);
  std::size_t l = F.dim();
  std::size_t head = std::min(F.size(), l + r);
  CoeffMap alpha = sparse_full_zero_sum(F.slice(0, head), r);
  Reducible red(lift_map(M, alpha), M.half());
  FieldVec u = red.u(F);
  if (u.is_zero()) return reduce_map(M, red.u_coeffs());

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < F.size(); ++i)
    if (!alpha.contains(i)) rest.push_back(i);
  SpanSplit sp = span_split(u, F.select(rest));
  CoeffMap gamma = quarter_rec(sp.reduced(M), r);
  Int c = 0;
  for (const auto& [i, g] : gamma) c += g * sp.c[i];
  CoeffMap out = gamma.remap(rest);
  for (const auto& [i, v] : red.expand(-M.lift(M.reduce(c)))) out.set(M, i, v);
  return out;
}

bool is_pow2(unsigned k) { return k && !(k & (k - 1)); }

void check_k(const Modulus& M, unsigned k, HalvingBase base) {
  unsigned lo = base == HalvingBase::quarter ? 2 : 1;
  if (!is_pow2(k) || k < lo || Int(k) > M.half())
    fail(Errc::bad_k, "k = " + std::to_string(k) + " must be a power of 2 in [" +
                          std::to_string(lo) + ", floor(q/2)]");
}

CoeffMap power2_rec(const VecFamily& F, unsigned k, unsigned r, HalvingBase base) {
  const Modulus& M = F.modulus();
  std::size_t n = F.dim();
  if (base == HalvingBase::quarter && k == 2) {
    std::size_t t = static_cast<std::size_t>(ceil_q(sis_quarter_bound(M.q(), n, r)));
    return quarter_rec(F.slice(0, t), r);
  }
  if (base == HalvingBase::dependency && k == 1) return find_dependency(F.slice(0, n + 1));
  Solver inner{static_cast<std::size_t>(sis_power2_threshold(M.q(), n, k / 2, r, base)),
               [k, r, base](const VecFamily& G) { return power2_rec(G, k / 2, r, base); }};
  return iterate_halving(F, inner, M.q() / k);
}

}  // namespace

CoeffMap sis_quarter(const VecFamily& F, unsigned r) {
  const Modulus& M = F.modulus();
  require_q5(M, "sis_quarter");
  if (r < 1) fail(Errc::precondition_violated, "r >= 1");
  require_vectors(F.size(), ceil_q(sis_quarter_bound(M.q(), F.dim(), r)), "sis_quarter");
  return quarter_rec(F, r);
}

Int sis_power2_threshold(const Int& q, std::size_t n, unsigned k, unsigned r, HalvingBase base) {
  if (base == HalvingBase::dependency) return boost::multiprecision::pow(Int(n + 1), k);
  if (k <= 2) return ceil_q(sis_quarter_bound(q, n, r));
  Int t = sis_power2_threshold(q, n, k / 2, r, base);
  return t * t;
}

CoeffMap sis_power2(const VecFamily& F, unsigned k, unsigned r, HalvingBase base) {
  const Modulus& M = F.modulus();
  if (base == HalvingBase::quarter) require_q5(M, "sis_power2");
  check_k(M, k, base);
  require_vectors(F.size(), sis_power2_threshold(M.q(), F.dim(), k, r, base), "sis_power2");
  if (auto z = F.find_zero()) return unit(M, *z);
  return power2_rec(F, k, r, base);
}

Solver sis_power2_solver(const Modulus& M, std::size_t n, unsigned k, unsigned r, HalvingBase base) {
  Int t = sis_power2_threshold(M.q(), n, k, r, base);
  return Solver{static_cast<std::size_t>(t),
                [k, r, base](const VecFamily& G) { return sis_power2(G, k, r, base); }};
}

}  // namespace zsf
