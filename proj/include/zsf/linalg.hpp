#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "zsf/ff.hpp"

namespace zsf {

// Sparse coefficient map: index -> canonical nonzero residue.
class CoeffMap {
 public:
  using Store = std::map<std::size_t, Int>;

  CoeffMap() = default;
  // Stores mod-reduced values; zeros are dropped.
  void set(const Modulus& M, std::size_t i, const Int& v);
  void add(const Modulus& M, std::size_t i, const Int& v);
  Int get(std::size_t i) const;
  bool contains(std::size_t i) const { return m_.count(i) != 0; }
  std::size_t support() const { return m_.size(); }
  bool empty() const { return m_.empty(); }
  std::vector<std::size_t> indices() const;
  const Store& entries() const { return m_; }
  Store::const_iterator begin() const { return m_.begin(); }
  Store::const_iterator end() const { return m_.end(); }

  // Re-index through `map` (local index -> global index).
  CoeffMap remap(const std::vector<std::size_t>& map) const;
  CoeffMap scaled(const Modulus& M, const Int& c) const;
  // max |lift(x_i)|, 0 on the empty map.
  Int max_abs(const Modulus& M) const;

  bool operator==(const CoeffMap& o) const { return m_ == o.m_; }

 private:
  Store m_;
};

class FieldVec {
 public:
  FieldVec() = default;
  explicit FieldVec(std::size_t n) : e_(n, Int(0)) {}
  explicit FieldVec(std::vector<Int> e) : e_(std::move(e)) {}

  std::size_t size() const { return e_.size(); }
  Int& operator[](std::size_t i) { return e_[i]; }
  const Int& operator[](std::size_t i) const { return e_[i]; }
  const std::vector<Int>& entries() const { return e_; }

  bool is_zero() const;
  // Lowest index with a nonzero entry, or size() if none.
  std::size_t pivot() const;
  FieldVec drop(std::size_t coord) const;

  bool operator==(const FieldVec& o) const { return e_ == o.e_; }

 private:
  std::vector<Int> e_;
};

// y += c * x
void axpy(const Modulus& M, FieldVec& y, const Int& c, const FieldVec& x);
FieldVec scale(const Modulus& M, const Int& c, const FieldVec& x);

// m vectors of F_q^n under one modulus.
class VecFamily {
 public:
  VecFamily(Modulus M, std::size_t dim) : M_(std::move(M)), dim_(dim) {}
  // Validates dimensions and canonical entries.
  VecFamily(Modulus M, std::size_t dim, std::vector<FieldVec> vecs);

  const Modulus& modulus() const { return M_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return v_.size(); }
  const FieldVec& operator[](std::size_t i) const { return v_[i]; }
  const std::vector<FieldVec>& vectors() const { return v_; }

  void push(FieldVec v);
  VecFamily slice(std::size_t begin, std::size_t count) const;
  VecFamily select(const std::vector<std::size_t>& idx) const;
  // Sum over x_i v_i; throws DimensionMismatch on out-of-range indices.
  FieldVec combine(const CoeffMap& x) const;
  // Lowest index of a zero vector, if any.
  std::optional<std::size_t> find_zero() const;

 private:
  Modulus M_;
  std::size_t dim_;
  std::vector<FieldVec> v_;
};

// Incremental row echelon form with lowest-index pivots. Each inserted vector
// is either absorbed into the basis or written as a combination of the
// vectors absorbed so far.
class Eliminator {
 public:
  Eliminator(const Modulus& M, std::size_t dim) : M_(M), dim_(dim) {}

  // nullopt when v was independent and has been absorbed. Otherwise the
  // coefficients c_j (indexed by absorption order) with v = sum c_j b_j.
  std::optional<std::vector<Int>> insert(const FieldVec& v);
  // Coordinates of v over the absorbed vectors, or nullopt if outside the span.
  std::optional<std::vector<Int>> represent(const FieldVec& v) const;
  // v minus a combination of absorbed vectors, zero at every pivot.
  FieldVec residual(const FieldVec& v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    std::size_t pivot;
    FieldVec r;               // normalised so r[pivot] == 1
    std::vector<Int> comb;    // r = sum comb[j] * b_j
  };
  // Reduces w against all rows; c accumulates so that w_out = v + sum c_j b_j.
  void reduce(FieldVec& w, std::vector<Int>& c) const;

  Modulus M_;
  std::size_t dim_;
  std::vector<Row> rows_;
};

// Lowest-index basis of F plus coordinates of the first `extras` dependent vectors.
struct Decomposition {
  std::vector<std::size_t> basis;
  std::vector<std::size_t> extra;
  std::vector<std::vector<Int>> extra_coords;  // over `basis`, in basis order
  std::size_t rank() const { return basis.size(); }
};
Decomposition decompose(const VecFamily& F, std::size_t extras);

// Nontrivial linear dependence; NoDependency if F is independent.
CoeffMap find_dependency(const VecFamily& F);

enum class BasisStrategy { naive, blocked };

// Indices of a maximal independent subset. Both strategies return the
// lowest-index (greedy) basis.
std::vector<std::size_t> max_independent(const VecFamily& F,
                                         BasisStrategy s = BasisStrategy::naive);

// Removes from each column of U its component along span(V), using the
// projector V (V^T V)^-1 V^T when V^T V is invertible and elimination
// otherwise. `used_projector` reports which path ran.
std::vector<FieldVec> project_out(const Modulus& M, const std::vector<FieldVec>& V,
                                  const std::vector<FieldVec>& U,
                                  bool* used_projector = nullptr);

struct SpanSplit {
  std::size_t pivot = 0;       // lowest nonzero coordinate of u
  FieldVec u;
  std::vector<Int> c;          // v_i = c_i u + w_i
  std::vector<FieldVec> w;     // w_i[pivot] == 0

  // The w_i with the pivot coordinate removed.
  VecFamily reduced(const Modulus& M) const;
};
// Throws ZeroVector if u = 0.
SpanSplit span_split(const FieldVec& u, const VecFamily& F);

}  // namespace zsf
