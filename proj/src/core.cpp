#include "zsf/core.hpp"

#include <algorithm>
#include <sstream>

namespace zsf {

// ---- CoeffSet ----

void CoeffSet::normalise() {
  std::sort(runs_.begin(), runs_.end());
  std::vector<std::pair<Int, Int>> out;
  for (auto& r : runs_) {
    if (!out.empty() && r.first <= out.back().second + 1)
      out.back().second = std::max(out.back().second, r.second);
    else
      out.push_back(std::move(r));
  }
  runs_ = std::move(out);
}

CoeffSet CoeffSet::all(const Modulus& M) {
  CoeffSet s;
  s.runs_.emplace_back(Int(0), M.q() - 1);
  return s;
}

CoeffSet CoeffSet::of(const Modulus& M, const std::vector<Int>& elems) {
  CoeffSet s;
  for (const auto& e : elems) {
    Int r = M.reduce(e);
    s.runs_.emplace_back(r, r);
  }
  s.normalise();
  return s;
}

CoeffSet CoeffSet::range(const Modulus& M, const Int& lo, const Int& hi) {
  CoeffSet s;
  if (hi < lo) return s;
  Int len = hi - lo + 1;
  if (len >= M.q()) return all(M);
  Int a = M.reduce(lo);
  Int b = a + len - 1;
  if (b < M.q()) {
    s.runs_.emplace_back(a, b);
  } else {
    s.runs_.emplace_back(a, M.q() - 1);
    s.runs_.emplace_back(Int(0), b - M.q());
  }
  s.normalise();
  return s;
}

bool CoeffSet::contains(const Int& r) const {
  auto it = std::upper_bound(runs_.begin(), runs_.end(), r,
                             [](const Int& x, const std::pair<Int, Int>& run) { return x < run.first; });
  if (it == runs_.begin()) return false;
  --it;
  return r <= it->second;
}

Int CoeffSet::size() const {
  Int n = 0;
  for (const auto& [lo, hi] : runs_) n += hi - lo + 1;
  return n;
}

std::vector<Int> CoeffSet::elements(std::size_t cap) const {
  if (size() > cap) fail(Errc::precondition_violated, "set too large to enumerate");
  std::vector<Int> out;
  for (const auto& [lo, hi] : runs_)
    for (Int x = lo; x <= hi; ++x) out.push_back(x);
  return out;
}

CoeffSet CoeffSet::unite(const CoeffSet& o) const {
  CoeffSet s = *this;
  s.runs_.insert(s.runs_.end(), o.runs_.begin(), o.runs_.end());
  s.normalise();
  return s;
}

CoeffSet CoeffSet::intersect(const CoeffSet& o) const {
  CoeffSet s;
  std::size_t i = 0, j = 0;
  while (i < runs_.size() && j < o.runs_.size()) {
    Int lo = std::max(runs_[i].first, o.runs_[j].first);
    Int hi = std::min(runs_[i].second, o.runs_[j].second);
    if (lo <= hi) s.runs_.emplace_back(lo, hi);
    if (runs_[i].second < o.runs_[j].second)
      ++i;
    else
      ++j;
  }
  return s;
}

CoeffSet CoeffSet::complement(const Modulus& M) const {
  CoeffSet s;
  Int next = 0;
  for (const auto& [lo, hi] : runs_) {
    if (next < lo) s.runs_.emplace_back(next, lo - 1);
    next = hi + 1;
  }
  if (next <= M.q() - 1) s.runs_.emplace_back(next, M.q() - 1);
  return s;
}

CoeffSet CoeffSet::negate(const Modulus& M) const {
  CoeffSet s;
  for (const auto& [lo, hi] : runs_) {
    if (lo == 0) {
      s.runs_.emplace_back(Int(0), Int(0));
      if (hi >= 1) s.runs_.emplace_back(M.q() - hi, M.q() - 1);
    } else {
      s.runs_.emplace_back(M.q() - hi, M.q() - lo);
    }
  }
  s.normalise();
  return s;
}

CoeffSet CoeffSet::plus(const Modulus& M, const Int& c) const {
  CoeffSet s;
  for (const auto& [lo, hi] : runs_) s = s.unite(range(M, lo + c, hi + c));
  return s;
}

CoeffSet CoeffSet::times(const Modulus& M, const Int& c) const {
  Int cc = M.reduce(c);
  if (cc == 1) return *this;
  if (cc == M.q() - 1) return negate(M);
  std::vector<Int> e;
  for (const auto& x : elements()) e.push_back(M.mul(x, cc));
  return of(M, e);
}

CoeffSet CoeffSet::minus(const Modulus& M, const CoeffSet& o) const {
  CoeffSet s;
  for (const auto& a : runs_)
    for (const auto& b : o.runs_) s = s.unite(range(M, a.first - b.second, a.second - b.first));
  return s;
}

std::optional<Int> CoeffSet::smallest_positive(const Modulus& M) const {
  for (const auto& [lo, hi] : runs_) {
    if (hi < 1) continue;
    Int x = std::max(lo, Int(1));
    if (x <= M.half()) return x;
    break;
  }
  return std::nullopt;
}

std::string CoeffSet::str() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (i) os << ",";
    os << runs_[i].first;
    if (runs_[i].second != runs_[i].first) os << ".." << runs_[i].second;
  }
  os << "}";
  return os.str();
}

// ---- Constraint ----

Constraint Constraint::interval(const Modulus& M, const Int& s) {
  if (s < 1 || s > M.half())
    fail(Errc::precondition_violated, "interval bound " + to_string(s) + " outside [1, floor(q/2)]");
  Constraint c(Kind::interval);
  c.s_ = s;
  return c;
}

Constraint Constraint::explicit_set(const Modulus& M, const CoeffSet& A) {
  Int n = A.size();
  if (n < 2 || n > M.q() - 1)
    fail(Errc::precondition_violated, "explicit set needs 2 <= |A| <= q-1, got " + to_string(n));
  Constraint c(Kind::explicit_set);
  c.set_ = A;
  return c;
}

Constraint Constraint::forbidden(const Modulus& M, const CoeffSet& bad) {
  Int n = bad.size();
  if (n < 1 || n > M.q() - 2)
    fail(Errc::precondition_violated, "forbidden set needs 1 <= |bad| <= q-2, got " + to_string(n));
  Constraint c(Kind::forbidden);
  c.set_ = bad;
  return c;
}

CoeffSet Constraint::allowed(const Modulus& M) const {
  switch (kind_) {
    case Kind::interval: return CoeffSet::symmetric(M, s_);
    case Kind::explicit_set: return set_;
    case Kind::forbidden: return set_.complement(M);
    case Kind::binary: return CoeffSet::of(M, {0, 1});
    case Kind::ternary012: return CoeffSet::of(M, {0, 1, 2});
  }
  return {};
}

bool Constraint::contains(const Modulus& M, const Int& r) const {
  switch (kind_) {
    case Kind::interval: return abs_int(M.lift(r)) <= s_;
    case Kind::explicit_set: return set_.contains(r);
    case Kind::forbidden: return !set_.contains(r);
    case Kind::binary: return r == 0 || r == 1;
    case Kind::ternary012: return r == 0 || r == 1 || r == 2;
  }
  return false;
}

namespace {

std::string join(const std::vector<Int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

std::vector<Int> split_ints(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(parse_int(tok));
  return out;
}

}  // namespace

std::string Constraint::str() const {
  switch (kind_) {
    case Kind::interval: return "interval:" + to_string(s_);
    case Kind::explicit_set: return "allow:" + join(set_.elements());
    case Kind::forbidden: return "forbid:" + join(set_.elements());
    case Kind::binary: return "binary";
    case Kind::ternary012: return "ternary012";
  }
  return "";
}

Constraint Constraint::parse(const Modulus& M, const std::string& s) {
  if (s == "binary") return binary();
  if (s == "ternary012") return ternary012();
  auto colon = s.find(':');
  if (colon == std::string::npos) fail(Errc::parse_error, "unknown constraint '" + s + "'");
  std::string head = s.substr(0, colon), tail = s.substr(colon + 1);
  if (head == "interval") return interval(M, parse_int(tail));
  if (head == "allow") return explicit_set(M, CoeffSet::of(M, split_ints(tail)));
  if (head == "forbid") return forbidden(M, CoeffSet::of(M, split_ints(tail)));
  fail(Errc::parse_error, "unknown constraint '" + s + "'");
}

// ---- Problem / verify ----

Problem::Problem(VecFamily F, std::vector<Constraint> cs, std::optional<FieldVec> t)
    : family(std::move(F)), constraints(std::move(cs)), target(std::move(t)) {
  if (constraints.size() != 1 && constraints.size() != family.size())
    fail(Errc::dimension_mismatch, "need one constraint or one per vector");
  if (target && target->size() != family.dim())
    fail(Errc::dimension_mismatch, "target dimension");
}

std::string VerifyReport::failed_check() const {
  if (!sums_to_target) return "sums_to_target";
  if (!in_constraint) return "in_constraint";
  if (!nontrivial) return "nontrivial";
  return "";
}

VerifyReport verify(const Problem& P, const CoeffMap& x) {
  const Modulus& M = P.modulus();
  const VecFamily& F = P.family;
  if (P.target && P.target->size() != F.dim()) fail(Errc::dimension_mismatch, "target dimension");
  VerifyReport rep;
  FieldVec sum = F.combine(x);  // throws on out-of-range indices
  rep.sums_to_target = P.target ? sum == *P.target : sum.is_zero();
  rep.nontrivial = !x.empty();
  bool ok = true;
  for (const auto& [i, v] : x)
    if (!M.is_canonical(v) || !P.constraint(i).contains(M, v)) ok = false;
  if (ok && x.support() < F.size()) {
    if (P.constraints.size() == 1) {
      ok = P.constraints[0].admits_zero(M);
    } else {
      for (std::size_t i = 0; i < F.size() && ok; ++i)
        if (!x.contains(i) && !P.constraints[i].admits_zero(M)) ok = false;
    }
  }
  rep.in_constraint = ok;
  return rep;
}

void require_vectors(std::size_t have, const Int& need, const std::string& who) {
  if (Int(have) < need)
    fail(Errc::too_few_vectors,
         who + ": need " + to_string(need) + ", got " + std::to_string(have));
}

}  // namespace zsf
