#include "zsf/general.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "zsf/arith.hpp"
#include "zsf/f3.hpp"

namespace zsf {

namespace {

CoeffMap unit(const Modulus& M, std::size_t i, const Int& v = Int(1)) {
  CoeffMap x;
  x.set(M, i, v);
  return x;
}

int perm_sign(const std::vector<std::size_t>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

std::vector<std::vector<std::size_t>> permutations(std::size_t k) {
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), std::size_t(1));
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Int ipow(const Int& b, std::size_t e) {
  Int r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

std::size_t to_size(const Int& x, const char* who) {
  if (x > Int(std::numeric_limits<std::size_t>::max() / 4))
    fail(Errc::insufficient_input, std::string(who) + " needs " + to_string(x) + " vectors");
  return static_cast<std::size_t>(x);
}

}  // namespace

bool is_nontrivial_for(const Modulus& M, const CoeffMap& x, const CoeffSet& A) {
  std::set<Int> seen;
  for (const auto& [i, v] : x) seen.insert(v);
  for (const Int& a : A.elements())
    if (!seen.count(a) && !seen.count(M.neg(a))) return false;
  return true;
}

// ---- start routine ----

CoeffMap nontrivial_start(const VecFamily& F, const CoeffSet& A, unsigned r) {
  const Modulus& M = F.modulus();
  if (r < 1) fail(Errc::precondition_violated, "nontrivial_start needs r >= 1");
  if (A.empty()) fail(Errc::precondition_violated, "nontrivial_start needs A nonempty");
  if (A.contains(Int(0))) fail(Errc::precondition_violated, "nontrivial_start needs 0 not in A");
  std::vector<Int> as = A.elements();
  std::size_t na = as.size();
  Decomposition d = decompose(F, r * na);
  std::size_t l = d.rank();
  if (d.extra.size() < r * na) require_vectors(F.size(), Int(l + r * na), "nontrivial_start");

  // u^(j) = sum_t a_t v_{j,t}, written over the basis.
  std::vector<std::vector<Int>> y(r, std::vector<Int>(l, Int(0)));
  for (unsigned j = 0; j < r; ++j)
    for (std::size_t t = 0; t < na; ++t)
      for (std::size_t i = 0; i < l; ++i)
        y[j][i] = M.add(y[j][i], M.mul(as[t], d.extra_coords[j * na + t][i]));
  std::vector<Int> beta = sparse_combination(M, y, l);
  for (const Int& b : beta)
    if (b != 0) {
      Int s = M.inv(b);
      for (Int& x : beta) x = M.mul(x, s);
      break;
    }

  CoeffMap out;
  for (unsigned j = 0; j < r; ++j)
    for (std::size_t t = 0; t < na; ++t) out.set(M, d.extra[j * na + t], M.mul(beta[j], as[t]));
  for (std::size_t i = 0; i < l; ++i) {
    Int c = 0;
    for (unsigned j = 0; j < r; ++j) c += beta[j] * y[j][i];
    out.set(M, d.basis[i], -c);
  }
  Int bound = floor_q(sparse_ratio(M.q(), r) * l) + Int(r * na);
  if (Int(out.support()) > bound) fail(Errc::solve_failed, "nontrivial_start support bound violated");
  return out;
}

Int StartRoutine::input_size(const Int&, std::size_t dim) const { return Int(dim) + Int(r) * A.size(); }

Int StartRoutine::sparsity(const Int& q, std::size_t dim) const {
  return floor_q(sparse_ratio(q, r) * Int(dim)) + Int(r) * A.size();
}

// ---- partitions ----

std::size_t Partition::cell(const Int& x) const {
  for (std::size_t i = 0; i < H.size(); ++i)
    if (H[i].contains(x)) return i;
  fail(Errc::bad_partition, "value " + to_string(x) + " lies in no cell");
}

namespace {

void check_partition(const Modulus& M, const CoeffSet& A, const Partition& P) {
  std::size_t k = P.k();
  if (k < 1) fail(Errc::bad_partition, "need k >= 1");
  if (k > 8) fail(Errc::k_too_large, "k = " + std::to_string(k) + " exceeds 8");
  if (P.B.size() != k) fail(Errc::bad_partition, "need one B_i per H_i, i >= 1");
  if (A.contains(Int(0))) fail(Errc::bad_partition, "0 in A");
  CoeffSet all;
  Int total = 0;
  CoeffSet pmA = A.unite(A.negate(M));
  for (std::size_t i = 0; i <= k; ++i) {
    const CoeffSet& h = P.H[i];
    if (h.empty()) fail(Errc::bad_partition, "H_" + std::to_string(i) + " is empty");
    // Cell nonemptiness and A0-nontriviality both use that a and -a share a cell.
    if (!(h.negate(M) == h)) fail(Errc::bad_partition, "H_" + std::to_string(i) + " is not symmetric");
    total += h.size();
    all = all.unite(h);
    if (pmA.intersect(h).empty())
      fail(Errc::bad_partition, "H_" + std::to_string(i) + " misses +-A");
    if (i > 0) {
      const CoeffSet& b = P.B[i - 1];
      if (!h.intersect(b.unite(b.negate(M)).complement(M)).empty())
        fail(Errc::bad_partition, "H_" + std::to_string(i) + " not inside +-B_" + std::to_string(i));
    }
  }
  if (total != M.q() || all.size() != M.q()) fail(Errc::bad_partition, "cells do not partition F_q");
}

}  // namespace

// ---- the forest ----

CoeffSet GeneralReducible::H() const {
  CoeffSet h;
  for (std::size_t i = 1; i < P_.H.size(); ++i) h = h.unite(P_.H[i]);
  return h;
}

CoeffSet GeneralReducible::H_prime() const {
  CoeffSet h = P_.H[0].unite(P_.H[0].negate(M_));
  for (const auto& b : P_.B) h = h.unite(b.minus(M_, b));
  return h;
}

std::vector<std::size_t> GeneralReducible::leaves() const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes_)
    if (n.depth == P_.k() + 1) out.push_back(n.leaf);
  return out;
}

void GeneralReducible::walk(std::size_t node, const Path& cells, std::size_t level, std::size_t mark,
                            const std::function<Int(const Node&, std::size_t)>& special, const Int& acc,
                            const Int& sign, CoeffMap& out) const {
  const Node& z = nodes_[node];
  if (level > cells.size()) {
    out.add(M_, z.leaf, M_.mul(acc, sign));
    return;
  }
  for (std::size_t t = 0; t < z.children.size(); ++t) {
    if (z.cell[t] != cells[level - 1]) continue;
    Int f = level == mark ? special(z, t) : Int(z.beta[t]);
    walk(z.children[t], cells, level + 1, mark, special, M_.mul(acc, f), sign, out);
  }
}

const CoeffMap& GeneralReducible::eval(std::size_t node, const Path& cells, std::size_t from) const {
  auto key = std::make_pair(node, Path(cells.begin() + static_cast<long>(from), cells.end()));
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const Node& z = nodes_[node];
  CoeffMap out;
  if (from == cells.size()) {
    out.set(M_, z.leaf, Int(1));
  } else {
    for (std::size_t t = 0; t < z.children.size(); ++t) {
      if (z.cell[t] != cells[from]) continue;
      for (const auto& [i, v] : eval(z.children[t], cells, from + 1)) out.add(M_, i, v * z.beta[t]);
    }
  }
  return memo_.emplace(std::move(key), std::move(out)).first->second;
}

GeneralReducible::Parts GeneralReducible::expand_parts(const Int& c0) const {
  Int c = M_.reduce(c0);
  std::size_t is = P_.cell(c);
  if (is == 0) fail(Errc::precondition_violated, "expand needs c outside H_0");
  if (!P_.B[is - 1].contains(c)) fail(Errc::precondition_violated, "expand_parts needs c in B_i");
  return parts_for(c, is);
}

// c in B_is; the cell index is passed separately because -c may sit in another cell.
GeneralReducible::Parts GeneralReducible::parts_for(const Int& c, std::size_t is) const {
  std::size_t k = P_.k();
  Parts p;
  auto star = [&](const Node& z, std::size_t t) { return M_.sub(M_.mul(c, Int(z.beta[t])), z.alpha[t]); };
  auto plain = [&](const Node& z, std::size_t t) { return z.alpha[t]; };
  for (const auto& pi : permutations(k)) {
    Int sg = perm_sign(pi);
    std::size_t j = static_cast<std::size_t>(std::find(pi.begin(), pi.end(), is) - pi.begin()) + 1;
    walk(root_, pi, 1, j, star, Int(1), sg, p.star);
    Path z0 = pi;
    z0[j - 1] = 0;
    walk(root_, z0, 1, j, plain, Int(1), sg, p.zero);
    // Sequences with i* dropped and some other cell repeated at j < j2.
    for (std::size_t j2 = j + 1; j2 <= k; ++j2) {
      Path s = pi;
      s[j - 1] = pi[j2 - 1];
      walk(root_, s, 1, j, plain, Int(1), sg, p.one);
      walk(root_, s, 1, j2, plain, Int(1), -sg, p.one);
    }
  }
  return p;
}

CoeffMap GeneralReducible::expand(const Int& c0) const {
  Int c = M_.reduce(c0);
  std::size_t is = P_.cell(c);
  if (is == 0) fail(Errc::precondition_violated, "expand needs c in H_1 u ... u H_k");
  bool flip = !P_.B[is - 1].contains(c);
  Parts p = parts_for(flip ? M_.neg(c) : c, is);
  CoeffMap out = p.star;
  for (const auto& [i, v] : p.zero) out.add(M_, i, -v);
  for (const auto& [i, v] : p.one) out.add(M_, i, -v);
  return flip ? out.scaled(M_, M_.neg(Int(1))) : out;
}

Int tree_size(const Int& q, std::size_t n, std::size_t k, const StartRoutine& start) {
  Int m = 1;
  for (std::size_t l = 1; l <= k; ++l) {
    std::size_t D = static_cast<std::size_t>(ipow(Int(k), k - l)) * n;
    m = (m - 1) * start.sparsity(q, D) + start.input_size(q, D);
  }
  return m;
}

Int tree_sparsity(const Int& q, std::size_t n, std::size_t k, const StartRoutine& start) {
  Int s = 1;
  for (std::size_t l = 1; l <= k; ++l)
    s *= start.sparsity(q, static_cast<std::size_t>(ipow(Int(k), k - l)) * n);
  return s;
}

GeneralReducible build_reducible(const VecFamily& F, const StartRoutine& start, const Partition& P) {
  const Modulus& M = F.modulus();
  check_partition(M, start.A, P);
  std::size_t k = P.k(), n = F.dim();
  std::size_t leaves = to_size(tree_size(M.q(), n, k, start), "build_reducible");
  require_vectors(F.size(), Int(leaves), "build_reducible");

  GeneralReducible R(M);
  R.P_ = P;
  R.A0_ = start.A.unite(start.A.negate(M)).intersect(P.H[0]);
  auto& nodes = R.nodes_;
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < leaves; ++i) {
    GeneralReducible::Node z;
    z.depth = k + 1;
    z.leaf = i;
    z.Q = F[i];
    pool.push_back(nodes.size());
    nodes.push_back(std::move(z));
  }
  // per-level node counts m_1..m_k
  std::vector<Int> m(k + 2, Int(1));
  for (std::size_t l = 1; l <= k; ++l) {
    std::size_t D = static_cast<std::size_t>(ipow(Int(k), k - l)) * n;
    m[l + 1] = (m[l] - 1) * start.sparsity(M.q(), D) + start.input_size(M.q(), D);
  }
  for (std::size_t depth = k; depth >= 1; --depth) {
    std::size_t D = nodes[pool.front()].Q.size();
    std::size_t take = static_cast<std::size_t>(start.input_size(M.q(), D));
    std::size_t count = static_cast<std::size_t>(m[depth]);
    std::vector<std::size_t> next;
    for (std::size_t c = 0; c < count; ++c) {
      if (pool.size() < take) fail(Errc::solve_failed, "forest ran out of nodes");
      std::vector<FieldVec> qs;
      for (std::size_t t = 0; t < take; ++t) qs.push_back(nodes[pool[t]].Q);
      CoeffMap alpha = start.run(VecFamily(M, D, std::move(qs)));
      GeneralReducible::Node z;
      z.depth = depth;
      z.Q = FieldVec(k * D);
      std::vector<bool> used(take, false);
      for (const auto& [t, a] : alpha) {
        std::size_t id = pool[t];
        std::size_t cl = P.cell(a);
        int b = 1;
        if (cl > 0 && !P.B[cl - 1].contains(a)) b = -1;
        z.children.push_back(id);
        z.alpha.push_back(a);
        z.cell.push_back(cl);
        z.beta.push_back(b);
        used[t] = true;
        if (cl > 0)
          for (std::size_t e = 0; e < D; ++e) {
            Int& dst = z.Q[(cl - 1) * D + e];
            dst = M.add(dst, b > 0 ? nodes[id].Q[e] : M.neg(nodes[id].Q[e]));
          }
      }
      for (std::size_t i = 0; i <= k; ++i)
        if (std::find(z.cell.begin(), z.cell.end(), i) == z.cell.end())
          fail(Errc::solve_failed, "start routine left a cell empty");
      std::vector<std::size_t> rest;
      for (std::size_t t = 0; t < pool.size(); ++t)
        if (t >= take || !used[t]) rest.push_back(pool[t]);
      pool = std::move(rest);
      next.push_back(nodes.size());
      nodes.push_back(std::move(z));
    }
    pool = std::move(next);
  }
  R.root_ = pool.front();

  for (const auto& pi : permutations(k)) {
    int sg = perm_sign(pi);
    for (const auto& [i, v] : R.eval(R.root_, pi, 0)) R.uc_.add(M, i, v * sg);
  }
  R.memo_.clear();
  R.u_ = F.combine(R.uc_);
  return R;
}

GeneralReducible reducible_simple(const VecFamily& F, const CoeffSet& A, const CoeffSet& H0, const CoeffSet& H1,
                                  const CoeffSet& B1, unsigned r) {
  return build_reducible(F, StartRoutine{A, r}, Partition{{H0, H1}, {B1}});
}

GeneralReducible reducible_tree(const VecFamily& F, const CoeffSet& A, const Partition& P, unsigned r) {
  return build_reducible(F, StartRoutine{A, r}, P);
}

// ---- lifting ----

Int lift_threshold(const Int& q, std::size_t n, const StartRoutine& start, const Partition& P) {
  return start.input_size(q, n) * tree_size(q, n, P.k(), start);
}

CoeffMap lift_zero_sum(const VecFamily& F, const StartRoutine& start, const Partition& P) {
  const Modulus& M = F.modulus();
  std::size_t n = F.dim();
  std::size_t T = to_size(tree_size(M.q(), n, P.k(), start), "lift_zero_sum");
  std::size_t mm = static_cast<std::size_t>(start.input_size(M.q(), n));
  require_vectors(F.size(), lift_threshold(M.q(), n, start, P), "lift_zero_sum");

  std::vector<GeneralReducible> red;
  std::vector<FieldVec> us;
  for (std::size_t j = 0; j < mm; ++j) {
    red.push_back(build_reducible(F.slice(j * T, T), start, P));
    us.push_back(red.back().u());
  }
  CoeffMap beta = start.run(VecFamily(M, n, std::move(us)));
  CoeffMap out;
  for (const auto& [j, b] : beta) {
    CoeffMap part = P.cell(b) == 0 ? red[j].u_coeffs().scaled(M, b) : red[j].expand(b);
    for (const auto& [i, v] : part) out.set(M, j * T + i, v);
  }
  Int bound = start.sparsity(M.q(), n) * tree_sparsity(M.q(), n, P.k(), start);
  if (Int(out.support()) > bound) fail(Errc::solve_failed, "lifted support exceeds " + to_string(bound));
  return out;
}

// ---- one-shot (+-floor(q/2k)) ----

Partition one_shot_partition(const Modulus& M, unsigned k) {
  if (M.q() < 5) fail(Errc::precondition_violated, "sis_one_shot needs q >= 5");
  if (k < 2 || Int(k) > M.half()) fail(Errc::bad_k, "k = " + std::to_string(k) + " outside [2, floor(q/2)]");
  Int s = M.q() / (2 * k);
  Int L = M.half() - s;
  Int base = L / (k - 1), extra = L % (k - 1);
  if (base < 1 || base + (extra > 0 ? 1 : 0) > s + 1)
    fail(Errc::solve_failed, "cannot split the upper range into short intervals");
  Partition P;
  P.H.push_back(CoeffSet::symmetric(M, s));
  Int lo = s + 1;
  for (unsigned i = 1; i < k; ++i) {
    Int len = base + (Int(i) <= extra ? 1 : 0);
    CoeffSet b = CoeffSet::range(M, lo, lo + len - 1);
    P.B.push_back(b);
    P.H.push_back(b.unite(b.negate(M)));
    lo += len;
  }
  return P;
}

namespace {

StartRoutine one_shot_start(const Modulus& M, const Partition& P) {
  std::vector<Int> a{Int(1)};
  for (const auto& b : P.B) a.push_back(b.runs().front().first);
  return StartRoutine{CoeffSet::of(M, a), 1};
}

}  // namespace

Int sis_one_shot_threshold(std::size_t n, unsigned k) {
  Int km = k - 1;
  return ipow(km, static_cast<std::size_t>(k - 1) * (k - 2) / 2) * ipow(Int(n) + k, k);
}

Int sis_one_shot_exact(const Int& q, std::size_t n, unsigned k) {
  Modulus M(q);
  Partition P = one_shot_partition(M, k);
  return lift_threshold(q, n, one_shot_start(M, P), P);
}

CoeffMap sis_one_shot(const VecFamily& F, unsigned k) {
  const Modulus& M = F.modulus();
  Partition P = one_shot_partition(M, k);
  require_vectors(F.size(), sis_one_shot_threshold(F.dim(), k), "sis_one_shot");
  if (auto z = F.find_zero()) return unit(M, *z);
  StartRoutine st = one_shot_start(M, P);
  std::size_t need = to_size(lift_threshold(M.q(), F.dim(), st, P), "sis_one_shot");
  return lift_zero_sum(F.slice(0, need), st, P);
}

Solver sis_one_shot_solver(const Modulus& M, std::size_t n, unsigned k) {
  one_shot_partition(M, k);
  return Solver{to_size(sis_one_shot_threshold(n, k), "sis_one_shot"),
                [k](const VecFamily& G) { return sis_one_shot(G, k); }};
}

// ---- (+-1) engines and subset sums ----

Solver pm1_engine(const Modulus& M, std::size_t n, PmEngine e) {
  if (M.q() < 5) fail(Errc::precondition_violated, "(+-1) engines need q >= 5");
  unsigned k1 = static_cast<unsigned>((M.q() + 3) / 4);
  unsigned k2 = subset_k(M.q());
  if (e == PmEngine::cheapest)
    e = sis_one_shot_threshold(n, k1) < sis_power2_threshold(M.q(), n, k2) ? PmEngine::one_shot
                                                                            : PmEngine::power2;
  if (e == PmEngine::one_shot) return sis_one_shot_solver(M, n, k1);
  return sis_power2_solver(M, n, k2);
}

CoeffMap subset_sum_improved(const VecFamily& F, const Rational& eps, PmEngine e) {
  return subset_sum_with(F, pm1_engine(F.modulus(), F.dim(), e), eps);
}

Int subset_sum_improved_threshold(const Modulus& M, std::size_t n, const Rational& eps, PmEngine e) {
  return subset_sum_threshold(M.q(), pm1_engine(M, n, e).input_size, eps);
}

namespace {

struct PairShape {
  Int a, b;
};

PairShape pair_shape(const Modulus& M, const CoeffSet& A) {
  if (A.size() != 2) fail(Errc::precondition_violated, "size_two needs |A| = 2");
  std::vector<Int> e = A.elements();
  // prefer b = 0, the cheaper route
  if (e[0] == 0) return {e[1], Int(0)};
  return {M.sub(e[1], e[0]), e[0]};
}

unsigned size_two_d(const Int& q, const Rational& eps) { return log2_ceil_ratio(q, eps / 2); }

Rational size_two_inner_eps(const Int& q, const Rational& eps, const Int& b) {
  if (b == 0) return eps;
  return eps / (2 * size_two_d(q, eps));
}

}  // namespace

Int size_two_threshold(const Modulus& M, std::size_t n, const CoeffSet& A, const Rational& eps, PmEngine e) {
  PairShape ps = pair_shape(M, A);
  Int inner = subset_sum_improved_threshold(M, n, size_two_inner_eps(M.q(), eps, ps.b), e);
  if (ps.b == 0) return inner;
  return inner * size_two_d(M.q(), eps) + 1;
}

CoeffMap size_two(const VecFamily& F, const CoeffSet& A, const Rational& eps, PmEngine e) {
  const Modulus& M = F.modulus();
  PairShape ps = pair_shape(M, A);
  require_vectors(F.size(), size_two_threshold(M, F.dim(), A, eps, e), "size_two");
  Rational ie = size_two_inner_eps(M.q(), eps, ps.b);
  Solver pm1 = pm1_engine(M, F.dim(), e);
  Solver inner{to_size(subset_sum_threshold(M.q(), pm1.input_size, ie), "size_two"),
               [pm1, ie](const VecFamily& G) { return subset_sum_with(G, pm1, ie); }};
  return affine_transfer(F, inner, CoeffSet::range(M, Int(0), Int(1)), ps.a, ps.b, size_two_d(M.q(), eps));
}

// ---- avoiding +-a_1..+-a_k ----

namespace {

struct Centered {
  std::vector<Int> a;  // distinct, in [1, floor(q/2)]
  Int a0;              // smallest positive value not among them
  CoeffSet A;          // F_q \ {+-a_i}
};

Centered centered(const Modulus& M, const std::vector<Int>& avoid) {
  Centered c;
  std::set<Int> s;
  for (const Int& x : avoid) {
    Int v = abs_int(M.lift(M.reduce(x)));
    if (v == 0) fail(Errc::precondition_violated, "cannot avoid 0");
    s.insert(v);
  }
  if (s.size() != avoid.size()) fail(Errc::precondition_violated, "avoided values must be distinct up to sign");
  if (s.empty() || Int(s.size()) >= M.half())
    fail(Errc::precondition_violated, "need 1 <= k < floor(q/2) avoided pairs");
  c.a.assign(s.begin(), s.end());
  c.a0 = 1;
  while (s.count(c.a0)) ++c.a0;
  std::vector<Int> bad;
  for (const Int& x : c.a) {
    bad.push_back(x);
    bad.push_back(M.neg(x));
  }
  c.A = CoeffSet::of(M, bad).complement(M);
  return c;
}

Partition centered_partition(const Modulus& M, const Centered& c) {
  Partition P;
  P.H.push_back(c.A);
  for (const Int& x : c.a) {
    P.H.push_back(CoeffSet::of(M, {x, M.neg(x)}));
    P.B.push_back(CoeffSet::of(M, {x}));
  }
  return P;
}

StartRoutine centered_start(const Modulus& M, const Centered& c) {
  std::vector<Int> a = c.a;
  a.push_back(c.a0);
  return StartRoutine{CoeffSet::of(M, a), 1};
}

}  // namespace

Int cis_centered_threshold(std::size_t n, std::size_t k) {
  return ipow(Int(k), k * (k - 1) / 2) * ipow(Int(n) + k + 1, k + 1);
}

Int cis_centered_exact(const Int& q, std::size_t n, std::size_t k) {
  Modulus M(q);
  std::vector<Int> a;
  for (std::size_t i = 1; i <= k; ++i) a.push_back(Int(i));
  Centered c = centered(M, a);
  Partition P = centered_partition(M, c);
  return lift_threshold(q, n, centered_start(M, c), P);
}

CoeffMap cis_centered(const VecFamily& F, const std::vector<Int>& avoid) {
  const Modulus& M = F.modulus();
  Centered c = centered(M, avoid);
  require_vectors(F.size(), cis_centered_threshold(F.dim(), c.a.size()), "cis_centered");
  if (auto z = F.find_zero()) return unit(M, *z, c.a0);
  Partition P = centered_partition(M, c);
  StartRoutine st = centered_start(M, c);
  std::size_t need = to_size(lift_threshold(M.q(), F.dim(), st, P), "cis_centered");
  return lift_zero_sum(F.slice(0, need), st, P);
}

Solver cis_centered_solver(const Modulus& M, std::size_t n, const std::vector<Int>& avoid) {
  centered(M, avoid);
  return Solver{to_size(cis_centered_threshold(n, avoid.size()), "cis_centered"),
                [avoid](const VecFamily& G) { return cis_centered(G, avoid); }};
}

Int cis_paired_threshold(const Modulus& M, std::size_t n, std::size_t k, const Int& b, const Rational& eps) {
  Int inner = cis_centered_threshold(n, k);
  if (M.reduce(b) == 0) return inner;
  return inner * log2_ceil_ratio(M.q(), eps) + 1;
}

CoeffMap cis_paired(const VecFamily& F, const std::vector<Int>& avoid, const Int& a, const Int& b,
                    const Rational& eps) {
  const Modulus& M = F.modulus();
  Centered c = centered(M, avoid);
  require_vectors(F.size(), cis_paired_threshold(M, F.dim(), c.a.size(), b, eps), "cis_paired");
  return affine_transfer(F, cis_centered_solver(M, F.dim(), avoid), c.A, a, b, log2_ceil_ratio(M.q(), eps));
}

// ---- general coefficient sets ----

std::string CisRoute::describe() const {
  std::string s;
  switch (kind) {
    case Kind::f3: s = "f3"; break;
    case Kind::forbid_one: s = "forbid-one"; break;
    case Kind::antipodal: s = "antipodal"; break;
    case Kind::middle_ap: s = "middle-3ap"; break;
    case Kind::size_two: s = "size-two"; break;
  }
  s += " a=" + to_string(a) + " b=" + to_string(b);
  if (!avoid.empty()) {
    s += " avoid=";
    for (std::size_t i = 0; i < avoid.size(); ++i) s += (i ? "," : "") + to_string(avoid[i]);
  }
  if (kind == Kind::size_two) s += " pair=" + pair.str();
  if (fell_back) s += " (fallback)";
  s += " need=" + to_string(threshold);
  return s;
}

namespace {

CisRoute size_two_route(const Modulus& M, std::size_t n, const CoeffSet& B, const Rational& eps) {
  std::vector<Int> e;
  for (const auto& [lo, hi] : B.runs())
    for (Int x = lo; x <= hi && e.size() < 2; ++x) e.push_back(x);
  if (e.size() < 2) fail(Errc::precondition_violated, "B needs two elements");
  CisRoute r;
  r.kind = CisRoute::Kind::size_two;
  r.pair = CoeffSet::of(M, {e[0], e[1]});
  r.engine = PmEngine::cheapest;
  PairShape ps = pair_shape(M, r.pair);
  r.a = ps.a;
  r.b = ps.b;
  r.threshold = size_two_threshold(M, n, r.pair, eps, r.engine);
  return r;
}

}  // namespace

CisRoute cis_full_plan(const Modulus& M, std::size_t n, const CoeffSet& B, const Rational& eps, bool fallback) {
  Int c = M.q() - B.size();
  if (c < 1 || B.size() < 2) fail(Errc::precondition_violated, "need 2 <= |B| <= q - 1");
  const Int& q = M.q();
  CisRoute r;
  try {
    if (q == 3) {
      r.kind = CisRoute::Kind::f3;
      std::vector<Int> e = B.elements();
      r.b = e[0];
      r.a = M.sub(e[1], e[0]);
      Int inner = f3_threshold(n, F3Strategy::main);
      r.threshold = r.b == 0 ? inner : inner * log2_ceil_ratio(q, eps) + 1;
      return r;
    }
    if (c == 1) {
      Int miss = B.complement(M).elements()[0];
      r.kind = CisRoute::Kind::forbid_one;
      r.avoid = {M.half()};
      r.b = M.sub(miss, M.half());
      r.threshold = cis_paired_threshold(M, n, 1, r.b, eps);
    } else if (2 * c <= q - 1) {
      AntipodalHole h = antipodal_hole(M, B, false);
      std::set<Int> s;
      for (const Int& x : B.complement(M).elements()) s.insert(abs_int(M.lift(M.sub(x, h.z))));
      r.kind = CisRoute::Kind::antipodal;
      r.avoid.assign(s.begin(), s.end());
      r.b = h.z;
      r.threshold = cis_paired_threshold(M, n, r.avoid.size(), r.b, eps);
    } else if (2 * c == q + 1 && q >= 11) {
      APWitness ap = middle_3ap(M, B);
      r.kind = CisRoute::Kind::middle_ap;
      r.a = ap.step;
      r.b = M.add(ap.start, ap.step);
      Int inner = pm1_engine(M, n, r.engine).input_size;
      r.threshold = r.b == 0 ? inner : inner * log2_ceil_ratio(q, eps) + 1;
    } else {
      return size_two_route(M, n, B, eps);
    }
  } catch (const Error& e) {
    if (e.code() == Errc::too_few_vectors || e.code() == Errc::insufficient_input) throw;
    fail(Errc::case_dispatch_failure, "q=" + to_string(q) + " c=" + to_string(c) + ": " + e.what());
  }
  if (fallback) {
    CisRoute s = size_two_route(M, n, B, eps);
    if (s.threshold < r.threshold) {
      s.fell_back = true;
      return s;
    }
  }
  return r;
}

CoeffMap run_route(const VecFamily& F, const CisRoute& r, const Rational& eps) {
  const Modulus& M = F.modulus();
  require_vectors(F.size(), r.threshold, "cis_full");
  switch (r.kind) {
    case CisRoute::Kind::f3: {
      Solver inner{to_size(f3_threshold(F.dim(), F3Strategy::main), "cis_full"),
                   [](const VecFamily& G) { return f3_solve(G, F3Strategy::main); }};
      return affine_transfer(F, inner, CoeffSet::range(M, Int(0), Int(1)), r.a, r.b,
                             log2_ceil_ratio(M.q(), eps));
    }
    case CisRoute::Kind::forbid_one:
    case CisRoute::Kind::antipodal:
      return cis_paired(F, r.avoid, r.a, r.b, eps);
    case CisRoute::Kind::middle_ap:
      return affine_transfer(F, pm1_engine(M, F.dim(), r.engine), CoeffSet::symmetric(M, Int(1)), r.a, r.b,
                             log2_ceil_ratio(M.q(), eps));
    case CisRoute::Kind::size_two:
      return size_two(F, r.pair, eps, r.engine);
  }
  fail(Errc::case_dispatch_failure, "unknown route");
}

CoeffMap cis_full(const VecFamily& F, const CoeffSet& B, const Rational& eps, bool fallback) {
  return run_route(F, cis_full_plan(F.modulus(), F.dim(), B, eps, fallback), eps);
}

}  // namespace zsf
