#include "zsf/linalg.hpp"

#include <algorithm>

namespace zsf {

// ---- CoeffMap ----

void CoeffMap::set(const Modulus& M, std::size_t i, const Int& v) {
  Int r = M.reduce(v);
  if (r == 0)
    m_.erase(i);
  else
    m_[i] = std::move(r);
}

void CoeffMap::add(const Modulus& M, std::size_t i, const Int& v) { set(M, i, get(i) + v); }

Int CoeffMap::get(std::size_t i) const {
  auto it = m_.find(i);
  return it == m_.end() ? Int(0) : it->second;
}

std::vector<std::size_t> CoeffMap::indices() const {
  std::vector<std::size_t> out;
  out.reserve(m_.size());
  for (const auto& [i, v] : m_) out.push_back(i);
  return out;
}

CoeffMap CoeffMap::remap(const std::vector<std::size_t>& map) const {
  CoeffMap out;
  for (const auto& [i, v] : m_) out.m_[map.at(i)] = v;
  return out;
}

CoeffMap CoeffMap::scaled(const Modulus& M, const Int& c) const {
  CoeffMap out;
  for (const auto& [i, v] : m_) out.set(M, i, M.mul(v, M.reduce(c)));
  return out;
}

Int CoeffMap::max_abs(const Modulus& M) const {
  Int best = 0;
  for (const auto& [i, v] : m_) best = std::max(best, abs_int(M.lift(v)));
  return best;
}

// ---- FieldVec ----

bool FieldVec::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
}

std::size_t FieldVec::pivot() const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != 0) return i;
  return e_.size();
}

FieldVec FieldVec::drop(std::size_t coord) const {
  std::vector<Int> out;
  out.reserve(e_.size() ? e_.size() - 1 : 0);
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (i != coord) out.push_back(e_[i]);
  return FieldVec(std::move(out));
}

void axpy(const Modulus& M, FieldVec& y, const Int& c, const FieldVec& x) {
  if (c == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (x[i] != 0) y[i] = M.add(y[i], M.mul(c, x[i]));
}

FieldVec scale(const Modulus& M, const Int& c, const FieldVec& x) {
  FieldVec out(x.size());
  axpy(M, out, c, x);
  return out;
}

// ---- VecFamily ----

VecFamily::VecFamily(Modulus M, std::size_t dim, std::vector<FieldVec> vecs)
    : M_(std::move(M)), dim_(dim) {
  v_.reserve(vecs.size());
  for (auto& v : vecs) push(std::move(v));
}

void VecFamily::push(FieldVec v) {
  if (v.size() != dim_)
    fail(Errc::dimension_mismatch, "vector of length " + std::to_string(v.size()) +
                                       " in a family of dimension " + std::to_string(dim_));
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!M_.is_canonical(v[i])) fail(Errc::dimension_mismatch, "entry outside [0, q)");
  v_.push_back(std::move(v));
}

VecFamily VecFamily::slice(std::size_t begin, std::size_t count) const {
  VecFamily out(M_, dim_);
  out.v_.assign(v_.begin() + static_cast<std::ptrdiff_t>(begin),
                v_.begin() + static_cast<std::ptrdiff_t>(begin + count));
  return out;
}

VecFamily VecFamily::select(const std::vector<std::size_t>& idx) const {
  VecFamily out(M_, dim_);
  out.v_.reserve(idx.size());
  for (std::size_t i : idx) out.v_.push_back(v_.at(i));
  return out;
}

FieldVec VecFamily::combine(const CoeffMap& x) const {
  FieldVec s(dim_);
  for (const auto& [i, c] : x) {
    if (i >= v_.size())
      fail(Errc::dimension_mismatch, "coefficient index " + std::to_string(i) +
                                         " outside a family of size " + std::to_string(v_.size()));
    axpy(M_, s, c, v_[i]);
  }
  return s;
}

std::optional<std::size_t> VecFamily::find_zero() const {
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (v_[i].is_zero()) return i;
  return std::nullopt;
}

// ---- Eliminator ----

void Eliminator::reduce(FieldVec& w, std::vector<Int>& c) const {
  for (const Row& row : rows_) {
    if (w[row.pivot] == 0) continue;
    Int f = w[row.pivot];
    Int nf = M_.neg(f);
    axpy(M_, w, nf, row.r);
    for (std::size_t j = 0; j < row.comb.size(); ++j)
      if (row.comb[j] != 0) c[j] = M_.add(c[j], M_.mul(nf, row.comb[j]));
  }
}

std::optional<std::vector<Int>> Eliminator::insert(const FieldVec& v) {
  if (v.size() != dim_) fail(Errc::dimension_mismatch, "eliminator dimension");
  FieldVec w = v;
  std::vector<Int> c(rows_.size() + 1, Int(0));
  reduce(w, c);
  std::size_t p = w.pivot();
  if (p == w.size()) {
    // w = v + sum c_j b_j = 0
    c.pop_back();
    for (auto& x : c) x = M_.neg(x);
    return c;
  }
  c.back() = 1;
  Int inv = M_.inv(w[p]);
  Row row{p, scale(M_, inv, w), {}};
  for (auto& x : c) x = M_.mul(x, inv);
  row.comb = std::move(c);
  for (Row& r : rows_) r.comb.push_back(Int(0));
  rows_.push_back(std::move(row));
  return std::nullopt;
}

FieldVec Eliminator::residual(const FieldVec& v) const {
  FieldVec w = v;
  std::vector<Int> c(rows_.size(), Int(0));
  reduce(w, c);
  return w;
}

std::optional<std::vector<Int>> Eliminator::represent(const FieldVec& v) const {
  FieldVec w = v;
  std::vector<Int> c(rows_.size(), Int(0));
  reduce(w, c);
  if (!w.is_zero()) return std::nullopt;
  for (auto& x : c) x = M_.neg(x);
  return c;
}

// ---- bases and dependencies ----

Decomposition decompose(const VecFamily& F, std::size_t extras) {
  const Modulus& M = F.modulus();
  Eliminator E(M, F.dim());
  Decomposition d;
  for (std::size_t i = 0; i < F.size(); ++i) {
    auto rep = E.insert(F[i]);
    if (!rep) {
      d.basis.push_back(i);
    } else if (d.extra.size() < extras) {
      d.extra.push_back(i);
      d.extra_coords.push_back(std::move(*rep));
    }
  }
  // Coordinates recorded early are shorter than the final rank.
  for (auto& c : d.extra_coords) c.resize(d.basis.size(), Int(0));
  return d;
}

CoeffMap find_dependency(const VecFamily& F) {
  const Modulus& M = F.modulus();
  Eliminator E(M, F.dim());
  std::vector<std::size_t> basis;
  for (std::size_t i = 0; i < F.size(); ++i) {
    auto rep = E.insert(F[i]);
    if (!rep) {
      basis.push_back(i);
      continue;
    }
    CoeffMap out;
    out.set(M, i, Int(1));
    for (std::size_t j = 0; j < rep->size(); ++j) out.set(M, basis[j], M.neg((*rep)[j]));
    return out;
  }
  fail(Errc::no_dependency, "family of " + std::to_string(F.size()) + " vectors is independent");
}

namespace {

using Mat = std::vector<std::vector<Int>>;

// Solves G X = B in place by Gauss-Jordan. False if G is singular.
bool solve_square(const Modulus& M, Mat G, Mat& B) {
  std::size_t t = G.size();
  std::size_t cols = t ? B[0].size() : 0;
  for (std::size_t c = 0; c < t; ++c) {
    std::size_t p = c;
    while (p < t && G[p][c] == 0) ++p;
    if (p == t) return false;
    std::swap(G[p], G[c]);
    std::swap(B[p], B[c]);
    Int inv = M.inv(G[c][c]);
    for (auto& x : G[c]) x = M.mul(x, inv);
    for (auto& x : B[c]) x = M.mul(x, inv);
    for (std::size_t r = 0; r < t; ++r) {
      if (r == c || G[r][c] == 0) continue;
      Int f = M.neg(G[r][c]);
      for (std::size_t j = 0; j < t; ++j)
        if (G[c][j] != 0) G[r][j] = M.add(G[r][j], M.mul(f, G[c][j]));
      for (std::size_t j = 0; j < cols; ++j)
        if (B[c][j] != 0) B[r][j] = M.add(B[r][j], M.mul(f, B[c][j]));
    }
  }
  return true;
}

Int dot(const Modulus& M, const FieldVec& a, const FieldVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return M.reduce(s);
}

// Greedy basis of v[lo, hi), overwriting the second half of each split with
// its residual against the kept vectors of the first half.
void simple_basis(const Modulus& M, std::vector<FieldVec>& v, std::size_t lo, std::size_t hi,
                  std::vector<std::size_t>& kept) {
  if (hi - lo == 1) {
    if (!v[lo].is_zero()) kept.push_back(lo);
    return;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  std::size_t first = kept.size();
  simple_basis(M, v, lo, mid, kept);
  std::vector<FieldVec> V;
  for (std::size_t k = first; k < kept.size(); ++k) V.push_back(v[kept[k]]);
  if (!V.empty()) {
    std::vector<FieldVec> U(v.begin() + static_cast<std::ptrdiff_t>(mid),
                            v.begin() + static_cast<std::ptrdiff_t>(hi));
    auto R = project_out(M, V, U);
    for (std::size_t j = 0; j < R.size(); ++j) v[mid + j] = std::move(R[j]);
  }
  simple_basis(M, v, mid, hi, kept);
}

}  // namespace

std::vector<FieldVec> project_out(const Modulus& M, const std::vector<FieldVec>& V,
                                  const std::vector<FieldVec>& U, bool* used_projector) {
  std::size_t t = V.size();
  Mat G(t, std::vector<Int>(t));
  Mat B(t, std::vector<Int>(U.size()));
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i; j < t; ++j) G[i][j] = G[j][i] = dot(M, V[i], V[j]);
    for (std::size_t j = 0; j < U.size(); ++j) B[i][j] = dot(M, V[i], U[j]);
  }
  std::vector<FieldVec> R = U;
  if (solve_square(M, G, B)) {
    if (used_projector) *used_projector = true;
    for (std::size_t j = 0; j < U.size(); ++j)
      for (std::size_t i = 0; i < t; ++i) axpy(M, R[j], M.neg(B[i][j]), V[i]);
    return R;
  }
  // V^T V singular (isotropic vectors): reduce against an echelon form of V.
  if (used_projector) *used_projector = false;
  Eliminator E(M, V[0].size());
  for (const auto& v : V) E.insert(v);
  for (auto& r : R) r = E.residual(r);
  return R;
}

std::vector<std::size_t> max_independent(const VecFamily& F, BasisStrategy s) {
  if (s == BasisStrategy::naive) return decompose(F, 0).basis;
  const Modulus& M = F.modulus();
  std::size_t batch = std::max<std::size_t>(F.dim(), 1);
  std::vector<std::size_t> S;
  for (std::size_t start = 0; start < F.size(); start += batch) {
    std::size_t end = std::min(F.size(), start + batch);
    std::vector<std::size_t> ids = S;
    for (std::size_t i = start; i < end; ++i) ids.push_back(i);
    std::vector<FieldVec> v;
    v.reserve(ids.size());
    for (std::size_t i : ids) v.push_back(F[i]);
    std::vector<std::size_t> kept;
    simple_basis(M, v, 0, v.size(), kept);
    S.clear();
    for (std::size_t k : kept) S.push_back(ids[k]);
  }
  return S;
}

// ---- span split ----

SpanSplit span_split(const FieldVec& u, const VecFamily& F) {
  if (u.size() != F.dim()) fail(Errc::dimension_mismatch, "span_split dimension");
  std::size_t p = u.pivot();
  if (p == u.size()) fail(Errc::zero_vector, "span_split needs a nonzero u");
  const Modulus& M = F.modulus();
  SpanSplit out;
  out.pivot = p;
  out.u = u;
  Int inv = M.inv(u[p]);
  for (const auto& v : F.vectors()) {
    Int c = M.mul(v[p], inv);
    FieldVec w = v;
    axpy(M, w, M.neg(c), u);
    out.c.push_back(c);
    out.w.push_back(std::move(w));
  }
  return out;
}

VecFamily SpanSplit::reduced(const Modulus& M) const {
  VecFamily out(M, u.size() - 1);
  for (const auto& x : w) out.push(x.drop(pivot));
  return out;
}

}  // namespace zsf
