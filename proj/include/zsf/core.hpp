#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsf/linalg.hpp"

namespace zsf {

// A set of residues stored as disjoint canonical intervals [lo, hi] in [0, q).
// Works for huge q as long as the set has few runs.
class CoeffSet {
 public:
  CoeffSet() = default;

  static CoeffSet all(const Modulus& M);
  static CoeffSet of(const Modulus& M, const std::vector<Int>& elems);
  // Balanced integer range lo..hi (may wrap around).
  static CoeffSet range(const Modulus& M, const Int& lo, const Int& hi);
  static CoeffSet symmetric(const Modulus& M, const Int& s) { return range(M, -s, s); }

  bool contains(const Int& r) const;
  bool empty() const { return runs_.empty(); }
  Int size() const;
  // Canonical elements in increasing order; PreconditionViolated beyond `cap`.
  std::vector<Int> elements(std::size_t cap = 1u << 24) const;

  CoeffSet unite(const CoeffSet& o) const;
  CoeffSet intersect(const CoeffSet& o) const;
  CoeffSet complement(const Modulus& M) const;
  CoeffSet negate(const Modulus& M) const;
  CoeffSet plus(const Modulus& M, const Int& c) const;
  CoeffSet times(const Modulus& M, const Int& c) const;  // small sets only
  // {a - b : a in this, b in o}
  CoeffSet minus(const Modulus& M, const CoeffSet& o) const;
  // Smallest x in [1, floor(q/2)] in the set.
  std::optional<Int> smallest_positive(const Modulus& M) const;

  const std::vector<std::pair<Int, Int>>& runs() const { return runs_; }
  bool operator==(const CoeffSet& o) const { return runs_ == o.runs_; }
  std::string str() const;

 private:
  void normalise();
  std::vector<std::pair<Int, Int>> runs_;
};

// Allowed coefficient values for a problem.
class Constraint {
 public:
  enum class Kind { interval, explicit_set, forbidden, binary, ternary012 };

  static Constraint interval(const Modulus& M, const Int& s);
  static Constraint explicit_set(const Modulus& M, const CoeffSet& A);
  static Constraint forbidden(const Modulus& M, const CoeffSet& bad);
  static Constraint binary() { return Constraint(Kind::binary); }
  static Constraint ternary012() { return Constraint(Kind::ternary012); }

  Kind kind() const { return kind_; }
  const Int& bound() const { return s_; }
  // The allowed residues.
  CoeffSet allowed(const Modulus& M) const;
  bool contains(const Modulus& M, const Int& r) const;
  bool admits_zero(const Modulus& M) const { return contains(M, Int(0)); }
  // Text form used in solution files: "interval:3", "binary", "allow:0,1", "forbid:2".
  std::string str() const;
  static Constraint parse(const Modulus& M, const std::string& s);

 private:
  explicit Constraint(Kind k) : kind_(k) {}
  Kind kind_;
  Int s_ = 0;
  CoeffSet set_;  // allowed set for explicit, forbidden set for forbidden
};

// Find x with sum x_i v_i = target and x_i in the i-th constraint.
struct Problem {
  VecFamily family;
  std::vector<Constraint> constraints;  // one shared entry, or one per vector
  std::optional<FieldVec> target;       // zero when absent

  Problem(VecFamily F, Constraint c) : family(std::move(F)), constraints{std::move(c)} {}
  Problem(VecFamily F, std::vector<Constraint> cs, std::optional<FieldVec> t = std::nullopt);

  const Constraint& constraint(std::size_t i) const {
    return constraints.size() == 1 ? constraints[0] : constraints[i];
  }
  const Modulus& modulus() const { return family.modulus(); }
};

struct VerifyReport {
  bool sums_to_target = false;
  bool in_constraint = false;
  bool nontrivial = false;

  bool ok() const { return sums_to_target && in_constraint && nontrivial; }
  // Name of the first failing check, empty if none.
  std::string failed_check() const;
};

// Pure check of a candidate solution. Indices outside the map carry 0, which
// must then satisfy their constraint.
VerifyReport verify(const Problem& P, const CoeffMap& x);
inline std::size_t sparsity(const CoeffMap& x) { return x.support(); }

// A routine that consumes exactly `input_size` vectors and returns a map over
// their local indices.
struct Solver {
  std::size_t input_size = 0;
  std::function<CoeffMap(const VecFamily&)> run;
};

// TooFewVectors with the "need N, got M" message.
void require_vectors(std::size_t have, const Int& need, const std::string& who);

}  // namespace zsf
