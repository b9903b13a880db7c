#pragma once

#include <map>
#include <optional>

#include "zsf/avgcase.hpp"
#include "zsf/core.hpp"
#include "zsf/halving.hpp"

namespace zsf {

// True if for every a in A some coefficient equals a or -a.
bool is_nontrivial_for(const Modulus& M, const CoeffMap& x, const CoeffSet& A);

// Zero-sum in which every a in A (0 not in A) shows up as a coefficient.
// Support <= floor((1-1/q)/(1-1/q^r) * rank) + r|A|; needs |F| >= dim + r|A|.
CoeffMap nontrivial_start(const VecFamily& F, const CoeffSet& A, unsigned r = 1);

// nontrivial_start packaged with its size functions m(D) and s(D).
struct StartRoutine {
  CoeffSet A;
  unsigned r = 1;

  Int input_size(const Int& q, std::size_t dim) const;  // m(D) = D + r|A|
  Int sparsity(const Int& q, std::size_t dim) const;    // floor(ratio D) + r|A|
  CoeffMap run(const VecFamily& F) const { return nontrivial_start(F, A, r); }
};

// H_0..H_k partition F_q into symmetric cells; B_1..B_k with H_i inside +-B_i.
struct Partition {
  std::vector<CoeffSet> H;
  std::vector<CoeffSet> B;  // B[i-1] pairs with H[i]
  std::size_t k() const { return H.empty() ? 0 : H.size() - 1; }
  // Index i with x in H_i.
  std::size_t cell(const Int& x) const;
};

// A (H_1..H_k -> H')-reducible vector over a forest of depth k+1. k = 1 is the
// two-level (P + Q) construction.
class GeneralReducible {
 public:
  struct Node {
    std::size_t depth = 0;             // 1 = root, k+1 = leaf
    std::size_t leaf = 0;              // family index, leaves only
    std::vector<std::size_t> children; // node ids, in index order
    std::vector<Int> alpha;            // per child
    std::vector<std::size_t> cell;     // per child, H-cell of alpha
    std::vector<int> beta;             // per child, +-1
    FieldVec Q;                        // leaves: the input vector
  };

  struct Parts {
    CoeffMap star, zero, one;  // L*, L_0, L_1 with expand(c) = L* - L_0 - L_1
  };

  const Modulus& modulus() const { return M_; }
  std::size_t k() const { return P_.k(); }
  const Partition& partition() const { return P_; }
  const FieldVec& u() const { return u_; }
  const CoeffMap& u_coeffs() const { return uc_; }
  // H_1 u ... u H_k
  CoeffSet H() const;
  // (+-H_0) u (B_1 - B_1) u ... u (B_k - B_k)
  CoeffSet H_prime() const;
  // (+-A) n H_0
  const CoeffSet& A0() const { return A0_; }
  std::vector<std::size_t> leaves() const;
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t root() const { return root_; }

  // For c in H_1 u ... u H_k: values in H', sum expand(c)_i v_i = c u, and
  // A0-nontrivial.
  CoeffMap expand(const Int& c) const;
  // The three disjoint pieces for c in H_i n B_i (no sign flip applied).
  Parts expand_parts(const Int& c) const;

 private:
  friend GeneralReducible build_reducible(const VecFamily&, const StartRoutine&, const Partition&);
  explicit GeneralReducible(Modulus M) : M_(std::move(M)) {}

  using Path = std::vector<std::size_t>;
  Parts parts_for(const Int& c, std::size_t cell) const;
  // sum over paths from `from` following `cells`, each step weighted by beta
  // except at level `mark` (1-based) where `special(node, child)` multiplies.
  void walk(std::size_t node, const Path& cells, std::size_t level, std::size_t mark,
            const std::function<Int(const Node&, std::size_t)>& special, const Int& acc, const Int& sign,
            CoeffMap& out) const;
  const CoeffMap& eval(std::size_t node, const Path& cells, std::size_t from) const;

  Modulus M_;
  Partition P_;
  CoeffSet A0_;
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
  FieldVec u_;
  CoeffMap uc_;
  mutable std::map<std::pair<std::size_t, Path>, CoeffMap> memo_;
};

// Validates the partition (BadPartition, KTooLarge) and builds the forest on
// the first tree_size(...) vectors of F.
GeneralReducible build_reducible(const VecFamily& F, const StartRoutine& start, const Partition& P);
GeneralReducible reducible_simple(const VecFamily& F, const CoeffSet& A, const CoeffSet& H0, const CoeffSet& H1,
                                  const CoeffSet& B1, unsigned r = 1);
GeneralReducible reducible_tree(const VecFamily& F, const CoeffSet& A, const Partition& P, unsigned r = 1);

// m_{k+1}: leaves consumed by one forest.
Int tree_size(const Int& q, std::size_t n, std::size_t k, const StartRoutine& start);
// Product of per-level sparsities, the leaf bound of one reducible.
Int tree_sparsity(const Int& q, std::size_t n, std::size_t k, const StartRoutine& start);

// A0-nontrivial H'-zero-sum from m(n) forests plus one more start call.
CoeffMap lift_zero_sum(const VecFamily& F, const StartRoutine& start, const Partition& P);
Int lift_threshold(const Int& q, std::size_t n, const StartRoutine& start, const Partition& P);

// ---- solvers ----

// q >= 5, 2 <= k <= floor(q/2). Nontrivial (+-floor(q/2k))-zero-sum.
CoeffMap sis_one_shot(const VecFamily& F, unsigned k);
// (k-1)^((k-1)(k-2)/2) (n+k)^k, the public precondition.
Int sis_one_shot_threshold(std::size_t n, unsigned k);
// Vectors the construction actually reads (<= the threshold).
Int sis_one_shot_exact(const Int& q, std::size_t n, unsigned k);
Partition one_shot_partition(const Modulus& M, unsigned k);
Solver sis_one_shot_solver(const Modulus& M, std::size_t n, unsigned k);

// (+-1) engines for the subset-sum pipelines.
enum class PmEngine {
  one_shot,  // sis_one_shot with k = floor((q+3)/4)
  power2,    // sis_power2 with the power of 2 in (q/4, floor(q/2)]
  cheapest,  // whichever needs fewer vectors
};
Solver pm1_engine(const Modulus& M, std::size_t n, PmEngine e);

CoeffMap subset_sum_improved(const VecFamily& F, const Rational& eps, PmEngine e = PmEngine::one_shot);
Int subset_sum_improved_threshold(const Modulus& M, std::size_t n, const Rational& eps,
                                  PmEngine e = PmEngine::one_shot);

// |A| = 2, A = a{0,1} + b.
CoeffMap size_two(const VecFamily& F, const CoeffSet& A, const Rational& eps, PmEngine e = PmEngine::one_shot);
Int size_two_threshold(const Modulus& M, std::size_t n, const CoeffSet& A, const Rational& eps,
                       PmEngine e = PmEngine::one_shot);

// Zero-sum avoiding {+-a_1..+-a_k}, 1 <= k < floor(q/2), worst case.
CoeffMap cis_centered(const VecFamily& F, const std::vector<Int>& avoid);
Int cis_centered_threshold(std::size_t n, std::size_t k);
Int cis_centered_exact(const Int& q, std::size_t n, std::size_t k);
Solver cis_centered_solver(const Modulus& M, std::size_t n, const std::vector<Int>& avoid);

// B = a (F_q \ {+-a_i}) + b on uniform inputs.
CoeffMap cis_paired(const VecFamily& F, const std::vector<Int>& avoid, const Int& a, const Int& b,
                    const Rational& eps);
Int cis_paired_threshold(const Modulus& M, std::size_t n, std::size_t k, const Int& b, const Rational& eps);

// Route chosen for a general coefficient set B of co-size c.
struct CisRoute {
  enum class Kind { f3, forbid_one, antipodal, middle_ap, size_two };
  Kind kind = Kind::size_two;
  Int a = 1, b = 0;             // B contains a * A + b
  std::vector<Int> avoid;       // centered routes
  CoeffSet pair;                // size-two route
  PmEngine engine = PmEngine::cheapest;
  Int threshold;
  bool fell_back = false;       // case route replaced by the cheaper size-two route
  std::string describe() const;
};

// The case table: q = 3; c = 1; 2 <= c <= (q-1)/2; c = (q+1)/2 with q >= 11;
// larger c or q = 5, 7 via size two. With `fallback`, a case route that
// needs more vectors than the size-two route is replaced by it (q >= 5).
CisRoute cis_full_plan(const Modulus& M, std::size_t n, const CoeffSet& B, const Rational& eps,
                       bool fallback = true);
CoeffMap cis_full(const VecFamily& F, const CoeffSet& B, const Rational& eps, bool fallback = true);
CoeffMap run_route(const VecFamily& F, const CisRoute& route, const Rational& eps);

}  // namespace zsf
