#include "zsf/avgcase.hpp"

#include <cmath>
#include <map>

#include "zsf/halving.hpp"

namespace zsf {

std::optional<std::vector<std::size_t>> subset_with_sum(const Modulus& M, const std::vector<Int>& values,
                                                        const Int& target) {
  // layer[j]: sums reachable with the first j values -> took value j-1?
  std::vector<std::map<Int, bool>> layer(values.size() + 1);
  layer[0][Int(0)] = false;
  for (std::size_t j = 0; j < values.size(); ++j) {
    layer[j + 1] = {};
    for (const auto& [s, took] : layer[j]) layer[j + 1].emplace(s, false);
    for (const auto& [s, took] : layer[j]) layer[j + 1].emplace(M.add(s, values[j]), true);
  }
  Int t = M.reduce(target);
  if (!layer.back().count(t)) return std::nullopt;
  std::vector<std::size_t> picked;
  for (std::size_t j = values.size(); j > 0; --j) {
    if (layer[j].at(t)) {
      picked.push_back(j - 1);
      t = M.sub(t, values[j - 1]);
    }
  }
  std::reverse(picked.begin(), picked.end());
  return picked;
}

unsigned log2_ceil_ratio(const Int& q, const Rational& eps) {
  if (eps <= 0 || eps >= 1) fail(Errc::precondition_violated, "eps must lie in (0, 1)");
  unsigned d = 0;
  Rational p = 1;
  while (p * eps < q) {
    p *= 2;
    ++d;
  }
  return d;
}

CoeffMap combine_012_to_01(const VecFamily& F, const std::vector<CoeffMap>& groups, const Solver& pm1) {
  const Modulus& M = F.modulus();
  std::vector<bool> used(F.size(), false);
  for (const auto& g : groups) {
    if (g.empty()) fail(Errc::precondition_violated, "empty group");
    for (const auto& [i, v] : g) {
      if (i >= F.size() || used[i]) fail(Errc::precondition_violated, "groups must be disjoint");
      if (v != 1 && v != 2) fail(Errc::precondition_violated, "group coefficients must be 1 or 2");
      used[i] = true;
    }
  }
  auto indicator = [&](const CoeffMap& g, const Int& keep) {
    CoeffMap x;
    for (const auto& [i, v] : g)
      if (keep == 0 || v == keep) x.set(M, i, Int(1));
    return x;
  };
  for (const auto& g : groups) {
    bool ones = true, twos = true;
    for (const auto& [i, v] : g) (v == 1 ? twos : ones) = false;
    // All 2s: 2 sum v = 0 forces sum v = 0.
    if (ones || twos) return indicator(g, Int(0));
  }
  std::size_t m = pm1.input_size;
  if (groups.size() < m)
    fail(Errc::too_few_groups, "need " + std::to_string(m) + " groups, got " + std::to_string(groups.size()));
  // sum_{1-part} v + 2 sum_{2-part} v = 0, so u_i = -2 u'_i with u'_i the 2-part sum.
  VecFamily U(M, F.dim());
  for (std::size_t i = 0; i < m; ++i) {
    FieldVec u(F.dim());
    for (const auto& [j, v] : groups[i])
      if (v == 2) axpy(M, u, Int(1), F[j]);
    U.push(std::move(u));
  }
  CoeffMap gamma = pm1.run(U);
  if (gamma.empty() || gamma.max_abs(M) > 1) fail(Errc::solve_failed, "(+-1) engine broke its contract");
  // sum_S u'_i = sum_T u'_i. For i in T the whole group sums to u_i + u'_i = -u'_i,
  // so the 2-parts of S plus the full groups of T vanish.
  CoeffMap out;
  for (const auto& [i, g] : gamma) {
    CoeffMap part = indicator(groups[i], g == 1 ? Int(2) : Int(0));
    for (const auto& [j, v] : part) out.set(M, j, v);
  }
  return out;
}

CoeffMap affine_transfer(const VecFamily& F, const Solver& inner, const CoeffSet& A, const Int& a,
                         const Int& b, unsigned d) {
  const Modulus& M = F.modulus();
  Int aa = M.reduce(a), bb = M.reduce(b);
  if (aa == 0) fail(Errc::precondition_violated, "affine_transfer needs a != 0");
  if (!A.contains(Int(0))) fail(Errc::precondition_violated, "affine_transfer needs 0 in A");
  std::size_t m = inner.input_size;
  auto check_inner = [&](const CoeffMap& x) {
    if (x.empty()) fail(Errc::solve_failed, "inner solver returned the zero map");
    for (const auto& [i, v] : x)
      if (!A.contains(v)) fail(Errc::solve_failed, "inner solver left its coefficient set");
  };
  if (bb == 0) {
    require_vectors(F.size(), Int(m), "affine_transfer");
    CoeffMap x = inner.run(F.slice(0, m));
    check_inner(x);
    return x.scaled(M, aa);
  }
  require_vectors(F.size(), affine_transfer_threshold(m, d), "affine_transfer");
  Int shift = M.div(bb, aa);  // work with A + b/a, dilate at the end

  FieldVec vstar(F.dim());
  for (const auto& v : F.vectors()) axpy(M, vstar, Int(1), v);
  vstar = scale(M, M.neg(shift), vstar);
  CoeffMap out;
  auto finish = [&](const std::vector<Int>& alpha) {
    for (std::size_t i = 0; i < F.size(); ++i) {
      Int x = i < alpha.size() ? M.add(alpha[i], shift) : shift;
      out.set(M, i, M.mul(aa, x));
    }
    return out;
  };
  if (vstar.is_zero()) return finish({});

  SpanSplit sp = span_split(vstar, F.slice(0, static_cast<std::size_t>(d) * m));
  std::vector<CoeffMap> local;
  std::vector<Int> beta;
  for (unsigned j = 0; j < d; ++j) {
    VecFamily W(M, F.dim());
    for (std::size_t i = 0; i < m; ++i) W.push(sp.w[j * m + i]);
    CoeffMap x = inner.run(W);
    check_inner(x);
    Int s = 0;
    for (const auto& [i, v] : x) s += v * sp.c[j * m + i];
    beta.push_back(M.reduce(s));
    local.push_back(std::move(x));
  }
  auto T = subset_with_sum(M, beta, Int(1));
  if (!T) fail(Errc::sample_failure, "no batch subset with pivot weight 1");
  std::vector<Int> alpha(static_cast<std::size_t>(d) * m, Int(0));
  for (std::size_t j : *T)
    for (const auto& [i, v] : local[j]) alpha[j * m + i] = v;
  return finish(alpha);
}

Int affine_transfer_threshold(std::size_t inner_size, unsigned d) { return Int(inner_size) * d + 1; }

CoeffMap solve_012(const VecFamily& F, const Solver& pm1, unsigned d) {
  const Modulus& M = F.modulus();
  return affine_transfer(F, pm1, CoeffSet::symmetric(M, Int(1)), Int(1), Int(1), d);
}

Int group_count(const Int& mbar, const Rational& eps) {
  if (eps <= 0 || eps >= 1) fail(Errc::precondition_violated, "eps must lie in (0, 1)");
  long double m = static_cast<long double>(mbar);
  long double l = std::log(1.0L / static_cast<long double>(eps));
  long double g = m * (1 + l / m + std::sqrt(3 * l / m));
  return Int(static_cast<unsigned long long>(std::ceil(g - 1e-12L)));
}

Int subset_sum_threshold(const Int& q, std::size_t pm1_size, const Rational& eps) {
  unsigned d = ceil_log(Int(2), Int(100) * q);
  return group_count(Int(pm1_size), eps) * (Int(pm1_size) * d + 1);
}

CoeffMap subset_sum_with(const VecFamily& F, const Solver& pm1, const Rational& eps, SubsetOptions opt) {
  const Modulus& M = F.modulus();
  if (auto z = F.find_zero()) {
    CoeffMap x;
    x.set(M, *z, Int(1));
    return x;
  }
  std::size_t mbar = pm1.input_size;
  unsigned d = ceil_log(Int(2), Int(100) * M.q());
  std::size_t g = mbar * d + 1;
  Int need = subset_sum_threshold(M.q(), mbar, eps);
  if (opt.enforce_threshold && Int(F.size()) < need)
    fail(Errc::insufficient_input, "need " + to_string(need) + ", got " + std::to_string(F.size()));
  std::vector<CoeffMap> groups;
  for (std::size_t at = 0; at + g <= F.size() && groups.size() < mbar; at += g) {
    std::vector<std::size_t> ids(g);
    for (std::size_t i = 0; i < g; ++i) ids[i] = at + i;
    try {
      groups.push_back(solve_012(F.slice(at, g), pm1, d).remap(ids));
    } catch (const Error& e) {
      if (e.code() != Errc::sample_failure) throw;
    }
  }
  if (groups.size() < mbar)
    fail(Errc::solve_failed, "only " + std::to_string(groups.size()) + " of " + std::to_string(mbar) +
                                 " groups succeeded");
  return combine_012_to_01(F, groups, pm1);
}

unsigned subset_k(const Int& q) {
  unsigned k = 1;
  while (Int(2 * k) <= q / 2) k *= 2;
  return k;
}

CoeffMap subset_sum_random(const VecFamily& F, const Rational& eps, unsigned r, SubsetOptions opt) {
  const Modulus& M = F.modulus();
  if (M.q() < 5) fail(Errc::precondition_violated, "subset_sum_random needs q >= 5");
  return subset_sum_with(F, sis_power2_solver(M, F.dim(), subset_k(M.q()), r), eps, opt);
}

Int subset_sum_random_threshold(const Int& q, std::size_t n, const Rational& eps, unsigned r) {
  Int mbar = sis_power2_threshold(q, n, subset_k(q), r);
  return subset_sum_threshold(q, static_cast<std::size_t>(mbar), eps);
}

CisSimplePlan cis_simple_plan(const Modulus& M, std::size_t n, const CoeffSet& A, unsigned r,
                              const Rational& eps, std::optional<APWitness> ap) {
  if (M.q() < 5) fail(Errc::precondition_violated, "cis_simple needs q >= 5");
  CisSimplePlan p;
  if (ap) {
    if (!ap->inside(M, A)) fail(Errc::precondition_violated, "supplied AP is not inside A");
    p.ap = *ap;
  } else {
    Int c = M.q() - A.size();
    if (c >= 16 || (Int(1) << (2 * static_cast<unsigned>(c))) > M.q() + 2)
      fail(Errc::no_long_ap, "no AP given and |A| < q - log_4(q+2)");
    p.ap = lev_long_ap(M, A);
  }
  // Cheapest k: the smallest power of 2 whose interval fits in the AP.
  p.k = 0;
  for (unsigned k = 2; Int(k) <= M.half(); k *= 2)
    if (Int(2) * (M.q() / (2 * k)) + 1 <= Int(p.ap.length)) {
      p.k = k;
      break;
    }
  if (p.k == 0) fail(Errc::no_long_ap, "AP too short for any power-of-2 k");
  p.d = log2_ceil_ratio(M.q(), eps);
  p.threshold = affine_transfer_threshold(static_cast<std::size_t>(sis_power2_threshold(M.q(), n, p.k, r)), p.d);
  return p;
}

CoeffMap cis_simple(const VecFamily& F, const CoeffSet& A, unsigned r, const Rational& eps,
                    std::optional<APWitness> ap) {
  const Modulus& M = F.modulus();
  if (A.size() == M.q()) return find_dependency(F);
  CisSimplePlan p = cis_simple_plan(M, F.dim(), A, r, eps, ap);
  require_vectors(F.size(), p.threshold, "cis_simple");
  Int s = M.q() / (2 * p.k);
  // A contains center + step * {-s..s}.
  Int center = M.reduce(p.ap.start + s * p.ap.step);
  Solver inner = sis_power2_solver(M, F.dim(), p.k, r);
  return affine_transfer(F, inner, CoeffSet::symmetric(M, s), p.ap.step, center, p.d);
}

}  // namespace zsf
