#include "doctest.h"
#include "support.hpp"
#include "zsf/halving.hpp"
#include "zsf/oracle.hpp"

#include <cstdlib>
#include <functional>

using namespace zsf;
using zsf::test::family;
using zsf::test::family_of;

namespace {

// Recursive search over coefficient vectors, independent of the odometer.
bool exists_solution(const Problem& P) {
  const Modulus& M = P.modulus();
  const VecFamily& F = P.family;
  std::function<bool(std::size_t, FieldVec, bool)> rec = [&](std::size_t i, FieldVec s, bool nz) {
    if (i == F.size()) return nz && s.is_zero();
    for (const Int& a : P.constraint(i).allowed(M).elements()) {
      FieldVec t = s;
      axpy(M, t, a, F[i]);
      if (rec(i + 1, t, nz || a != 0)) return true;
    }
    return false;
  };
  return rec(0, FieldVec(F.dim()), false);
}

bool throws_code(Errc code, auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("brute solve examples") {
  Modulus M3(3u), M5(5u);
  CHECK_FALSE(brute_solve(Problem(family_of(3, {{1}, {1}}), Constraint::binary())));

  auto F = family_of(3, {{1}, {2}});
  auto x = brute_solve(Problem(F, Constraint::binary()));
  REQUIRE(x);
  CHECK(x->get(0) == 1);
  CHECK(x->get(1) == 1);

  auto G = family_of(5, {{1}, {1}});
  auto y = brute_solve(Problem(G, Constraint::interval(M5, Int(2))));
  REQUIRE(y);
  CHECK(verify(Problem(G, Constraint::interval(M5, Int(2))), *y).ok());
  // lexicographically first over canonical residues: (0,0) is trivial, then x_1 runs
  // through the allowed set before x_0 moves
  CHECK(*y == reduce_map(M5, {{0, 1}, {1, -1}}));
}

TEST_CASE("brute solve agrees with a recursive search") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    std::mt19937_64 rng(seed);
    std::uint64_t q = std::vector<std::uint64_t>{3, 5, 7}[seed % 3];
    Modulus M(q);
    std::size_t n = 1 + rng() % 2, m = 1 + rng() % 4;
    auto F = family(seed, q, n, m);
    std::vector<Constraint> cs{Constraint::binary(), Constraint::ternary012(),
                               Constraint::interval(M, Int(1)),
                               Constraint::forbidden(M, CoeffSet::of(M, {Int(0)})),
                               Constraint::explicit_set(M, CoeffSet::of(M, {Int(1), Int(q - 1)}))};
    Problem P(F, cs[rng() % cs.size()]);
    auto x = brute_solve(P);
    REQUIRE(x.has_value() == exists_solution(P));
    if (x) REQUIRE(verify(P, *x).ok());
  }
}

TEST_CASE("brute solve with targets and per-index sets") {
  Modulus M(5u);
  auto F = family_of(5, {{1, 0}, {0, 1}, {1, 1}});
  Problem T(F, {Constraint::binary()}, FieldVec({Int(2), Int(1)}));
  auto x = brute_solve(T);
  REQUIRE(x);
  CHECK(verify(T, *x).ok());
  std::vector<Constraint> cs{Constraint::binary(), Constraint::binary(),
                             Constraint::explicit_set(M, CoeffSet::of(M, {Int(2), Int(3)}))};
  Problem P(F, cs);
  CHECK(brute_solve(P).has_value() == exists_solution(P));
}

TEST_CASE("budget") {
  auto F = family(1, 7, 1, 12);
  Modulus M(7u);
  CHECK(throws_code(Errc::budget_exceeded, [&] { brute_solve(Problem(F, Constraint::interval(M, Int(3))), 1000); }));
  CHECK_NOTHROW(brute_solve(Problem(family(1, 7, 1, 3), Constraint::interval(M, Int(3))), 1000));
  ::setenv("ZSF_BUDGET", "17", 1);
  CHECK(oracle_budget() == 17);
  ::setenv("ZSF_BUDGET", "junk", 1);
  CHECK(oracle_budget() == 2000000);
  ::unsetenv("ZSF_BUDGET");
  CHECK(oracle_budget() == 2000000);
}

TEST_CASE("totality at q=3") {
  Modulus M(3u);
  auto rep = totality_check(M, 1, 3, Constraint::binary());
  CHECK(rep.families == 27);
  CHECK(rep.total());
  CHECK_FALSE(rep.counterexample);

  auto two = totality_check(M, 1, 2, Constraint::binary());
  CHECK(two.families == 9);
  CHECK_FALSE(two.total());
  REQUIRE(two.counterexample);
  CHECK_FALSE(brute_solve(Problem(*two.counterexample, Constraint::binary())));
}

TEST_CASE("tight families have no subset-sum") {
  for (std::uint64_t q : {3ull, 5ull, 7ull})
    for (std::size_t n = 1; n <= 2; ++n) {
      Modulus M(q);
      VecFamily F = tight_family(M, n);
      CHECK(F.size() == (q - 1) * n);
      CHECK_FALSE(brute_solve(Problem(F, Constraint::binary())));
      // one more vector of any kind makes it solvable
      VecFamily extras = generate(q, M, n, 5);
      for (const auto& extra : extras.vectors()) {
        VecFamily G = F;
        G.push(extra);
        CHECK(brute_solve(Problem(G, Constraint::binary())));
      }
    }
  CHECK_FALSE(brute_solve(Problem(family_of(5, {{1}, {1}, {1}, {1}}), Constraint::binary())));
  CHECK_FALSE(brute_solve(Problem(family_of(3, {{1}, {1}}), Constraint::binary())));
}

TEST_CASE("totality beyond the smallest case") {
  auto rep = totality_check(Modulus(5u), 1, 5, Constraint::binary());
  CHECK(rep.families == 3125);
  CHECK(rep.total());
  auto two = totality_check(Modulus(3u), 2, 5, Constraint::binary());
  CHECK(two.total());
}
