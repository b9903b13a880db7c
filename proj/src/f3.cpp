#include "zsf/f3.hpp"

#include <algorithm>
#include <numeric>

namespace zsf {

const char* to_string(F3Strategy s) {
  switch (s) {
    case F3Strategy::weak: return "weak";
    case F3Strategy::quadratic: return "quadratic";
    case F3Strategy::main: return "main";
  }
  return "";
}

namespace {

void require_q3(const VecFamily& F) {
  if (F.modulus().q() != 3) fail(Errc::precondition_violated, "F_3 routine called with q != 3");
}

CoeffMap singleton(std::size_t i) {
  CoeffMap x;
  x.set(Modulus(3), i, Int(1));
  return x;
}

unsigned log3_ceil(std::size_t l) { return ceil_log(Int(3), Int(l + 1)); }

Rational sparse_step(std::size_t l, const Rational& prev) {
  Rational a = prev + Rational(2 * (l + 1), 3);
  Rational b(l);
  return std::max(a, b) + log3_ceil(l);
}

Rational dependency_step(std::size_t l, const Rational& prev) { return prev + Rational(l + 1); }

bool use_sparse(std::size_t l) {
  Rational prev = f3_main_recursion(l - 1);
  return sparse_step(l, prev) <= dependency_step(l, prev);
}

// One level of the recursion: a (+-1)-zero-sum among F and the local indices
// it consumes.
struct Step {
  CoeffMap alpha;
  std::vector<std::size_t> consumed;
};

using Stepper = Step (*)(const VecFamily&);

Step sparse_stepper(const VecFamily& F) {
  Step s;
  s.alpha = f3_sparse_dependence(F);
  s.consumed = s.alpha.indices();
  return s;
}

Step dependency_first(const VecFamily& F, bool consume_all) {
  std::size_t k = std::min(F.size(), F.dim() + 1);
  Step s;
  s.alpha = find_dependency(F.slice(0, k));
  if (consume_all) {
    s.consumed.resize(k);
    std::iota(s.consumed.begin(), s.consumed.end(), 0);
  } else {
    s.consumed = s.alpha.indices();
  }
  return s;
}

Step quadratic_stepper(const VecFamily& F) { return dependency_first(F, true); }

Step main_stepper(const VecFamily& F) {
  if (use_sparse(F.dim())) return sparse_stepper(F);
  return dependency_first(F, false);
}

// Splits a zero-sum sum_P v - sum_N v = 0 into the two subsets.
void split_signs(const CoeffMap& alpha, std::vector<std::size_t>& P, std::vector<std::size_t>& N) {
  for (const auto& [i, v] : alpha) (v == 1 ? P : N).push_back(i);
}

CoeffMap subset(const std::vector<std::size_t>& idx) {
  CoeffMap x;
  for (std::size_t i : idx) x.set(Modulus(3), i, Int(1));
  return x;
}

CoeffMap recurse(const VecFamily& F, Stepper step) {
  const Modulus& M = F.modulus();
  if (auto z = F.find_zero()) return singleton(*z);
  if (F.dim() == 0) return singleton(0);

  Step st = step(F);
  std::vector<std::size_t> P, N;
  split_signs(st.alpha, P, N);
  FieldVec u(F.dim());
  for (std::size_t i : P) axpy(M, u, Int(1), F[i]);
  if (u.is_zero()) return subset(P.empty() ? N : P);

  std::vector<bool> used(F.size(), false);
  for (std::size_t i : st.consumed) used[i] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < F.size(); ++i)
    if (!used[i]) rest.push_back(i);
  if (rest.empty()) fail(Errc::solve_failed, "recursion ran out of vectors");

  SpanSplit sp = span_split(u, F.select(rest));
  CoeffMap inner = recurse(sp.reduced(M), step);
  // sum_I v_i = c u; cancel it with a subset summing to -c u.
  Int c = 0;
  for (const auto& [i, v] : inner) c += sp.c[i];
  c = M.neg(M.reduce(c));
  CoeffMap out = inner.remap(rest);
  if (c != 0) {
    // P sums to u; P and N together sum to 2u = -u.
    for (std::size_t i : P) out.set(M, i, Int(1));
    if (c == 2)
      for (std::size_t i : N) out.set(M, i, Int(1));
  }
  return out;
}

CoeffMap solve_weak(const VecFamily& F) {
  const Modulus& M = F.modulus();
  std::size_t b = F.dim() + 1;
  VecFamily U(M, F.dim());
  std::vector<std::vector<std::size_t>> Ps, Ns;
  for (std::size_t j = 0; j < b; ++j) {
    CoeffMap alpha = find_dependency(F.slice(j * b, b));
    std::vector<std::size_t> P, N;
    split_signs(alpha, P, N);
    for (auto& i : P) i += j * b;
    for (auto& i : N) i += j * b;
    FieldVec u(F.dim());
    for (std::size_t i : P) axpy(M, u, Int(1), F[i]);
    if (u.is_zero()) return subset(P.empty() ? N : P);
    U.push(std::move(u));
    Ps.push_back(std::move(P));
    Ns.push_back(std::move(N));
  }
  CoeffMap gamma = find_dependency(U);
  CoeffMap out;
  for (const auto& [j, g] : gamma) {
    // g = 1 takes u_j = sum P_j; g = -1 needs -u_j = sum (P_j and N_j).
    for (std::size_t i : Ps[j]) out.set(M, i, Int(1));
    if (g == 2)
      for (std::size_t i : Ns[j]) out.set(M, i, Int(1));
  }
  return out;
}

}  // namespace

CoeffMap f3_sparse_dependence(const VecFamily& F) {
  require_q3(F);
  const Modulus& M = F.modulus();
  if (F.size() == 0) require_vectors(0, Int(1), "f3_sparse_dependence");
  if (auto z = F.find_zero()) return singleton(*z);

  Decomposition d = decompose(F, log3_ceil(F.dim()));
  std::size_t l = d.rank();
  unsigned t = log3_ceil(l);
  if (d.extra.size() < t) require_vectors(F.size(), Int(l + t), "f3_sparse_dependence");

  // Lexicographic walk over alpha in F_3^t \ {0}.
  std::vector<unsigned> alpha(t, 0);
  auto next = [&]() {
    for (std::size_t j = t; j-- > 0;) {
      if (++alpha[j] < 3) return true;
      alpha[j] = 0;
    }
    return false;
  };
  while (next()) {
    std::vector<Int> y(l, Int(0));
    for (unsigned j = 0; j < t; ++j)
      for (std::size_t i = 0; i < l; ++i)
        y[i] = M.add(y[i], M.mul(Int(alpha[j]), d.extra_coords[j][i]));
    std::size_t nnz = std::count_if(y.begin(), y.end(), [](const Int& x) { return x != 0; });
    if (3 * nnz > 2 * (l + 1)) continue;
    CoeffMap out;
    for (unsigned j = 0; j < t; ++j) out.set(M, d.extra[j], Int(alpha[j]));
    for (std::size_t i = 0; i < l; ++i) out.set(M, d.basis[i], M.neg(y[i]));
    return out;
  }
  fail(Errc::solve_failed, "no sparse combination found");
}

CoeffMap f3_solve(const VecFamily& F, F3Strategy s) {
  require_q3(F);
  require_vectors(F.size(), f3_threshold(F.dim(), s), std::string("f3_solve/") + to_string(s));
  if (auto z = F.find_zero()) return singleton(*z);
  switch (s) {
    case F3Strategy::weak: return solve_weak(F);
    case F3Strategy::quadratic: return recurse(F, quadratic_stepper);
    case F3Strategy::main: return recurse(F, main_stepper);
  }
  return {};
}

Rational f3_main_recursion(std::size_t n) {
  Rational m = 1;
  for (std::size_t l = 1; l <= n; ++l) m = std::min(sparse_step(l, m), dependency_step(l, m));
  return m;
}

Rational f3_sparse_recursion(std::size_t n) {
  Rational m = 1;
  for (std::size_t l = 1; l <= n; ++l) m = sparse_step(l, m);
  return m;
}

Rational f3_closed_form(std::size_t n) {
  return Rational((n + 1) * (n + 2) + 1, 3) + Rational(n) * log3_ceil(n);
}

Int f3_threshold(std::size_t n, F3Strategy s) {
  switch (s) {
    case F3Strategy::weak: return Int(n + 1) * (n + 1);
    case F3Strategy::quadratic: return Int(n + 1) * (n + 2) / 2;
    case F3Strategy::main: return ceil_q(f3_main_recursion(n));
  }
  return 0;
}

}  // namespace zsf
