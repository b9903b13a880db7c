#include "doctest.h"
#include "support.hpp"
#include "zsf/avgcase.hpp"
#include "zsf/halving.hpp"

using namespace zsf;
using zsf::test::family;
using zsf::test::family_of;
using zsf::test::solves;
using zsf::test::solves_in;

namespace {

Solver pm1(const Modulus& M, std::size_t n) { return sis_power2_solver(M, n, subset_k(M.q())); }

template <class F>
int successes(int seeds, F&& trial) {
  int ok = 0;
  for (int s = 0; s < seeds; ++s) {
    try {
      if (trial(static_cast<std::uint64_t>(s))) ++ok;
    } catch (const Error& e) {
      REQUIRE((e.code() == Errc::sample_failure || e.code() == Errc::solve_failed));
    }
  }
  return ok;
}

}  // namespace

TEST_CASE("subset with sum") {
  Modulus M(7u);
  auto t = subset_with_sum(M, {Int(3), Int(5), Int(2)}, Int(1));
  REQUIRE(t);
  Int s = 0;
  for (auto j : *t) s += std::vector<int>{3, 5, 2}[j];
  CHECK(M.reduce(s) == 1);
  CHECK_FALSE(subset_with_sum(M, {Int(0), Int(0)}, Int(1)));
  CHECK(subset_with_sum(M, {}, Int(0)));
}

TEST_CASE("log2 ratio") {
  CHECK(log2_ceil_ratio(Int(5), Rational(1, 2)) == 4);
  CHECK(log2_ceil_ratio(Int(11), Rational(1, 2)) == 5);
  CHECK(log2_ceil_ratio(Int(8), Rational(1, 2)) == 4);
  CHECK_THROWS_AS(log2_ceil_ratio(Int(5), Rational(0)), Error);
  CHECK_THROWS_AS(log2_ceil_ratio(Int(5), Rational(1)), Error);
}

TEST_CASE("combine groups examples") {
  Modulus M(5u);
  Solver never{3, [](const VecFamily&) -> CoeffMap { FAIL("pm1 must not run"); return {}; }};
  auto F = family_of(5, {{1}, {4}, {2}, {3}});
  CoeffMap ones;
  ones.set(M, 0, Int(1));
  ones.set(M, 1, Int(1));
  CoeffMap x = combine_012_to_01(F, {ones}, never);
  CHECK(solves(F, Constraint::binary(), x));
  CoeffMap twos;
  twos.set(M, 2, Int(2));
  twos.set(M, 3, Int(2));
  CHECK(combine_012_to_01(F, {twos}, never) == CoeffMap(reduce_map(M, {{2, 1}, {3, 1}})));

  // mixed groups: v_a + 2 v_b = 0 with v_a = 3 v_b
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    VecFamily G(M, 1);
    std::vector<CoeffMap> groups;
    for (int g = 0; g < 3; ++g) {
      Int b = 1 + rng() % 4;
      G.push(FieldVec({M.mul(Int(3), b)}));
      G.push(FieldVec({b}));
      CoeffMap grp;
      grp.set(M, 2 * g, Int(1));
      grp.set(M, 2 * g + 1, Int(2));
      groups.push_back(grp);
    }
    CoeffMap y = combine_012_to_01(G, groups, pm1(M, 1));
    REQUIRE(solves(G, Constraint::binary(), y));
  }
}

TEST_CASE("combine groups rejects malformed input") {
  Modulus M(5u);
  auto F = family_of(5, {{1}, {4}});
  CoeffMap g;
  g.set(M, 0, Int(3));
  CHECK_THROWS_AS(combine_012_to_01(F, {g}, pm1(M, 1)), Error);
  CoeffMap a, b;
  a.set(M, 0, Int(1));
  a.set(M, 1, Int(2));
  b.set(M, 1, Int(1));
  b.set(M, 0, Int(2));
  try {
    combine_012_to_01(F, {a}, pm1(M, 1));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::too_few_groups);
  }
  CHECK_THROWS_AS(combine_012_to_01(F, {a, b}, pm1(M, 1)), Error);
}

TEST_CASE("solve 012") {
  Modulus M(5u);
  Solver inner = pm1(M, 2);
  CHECK(inner.input_size == 6);
  unsigned d = log2_ceil_ratio(M.q(), Rational(1, 2));
  std::size_t m = static_cast<std::size_t>(affine_transfer_threshold(inner.input_size, d));
  CHECK(m == 25);

  // sum already zero: all ones
  auto Z = family(3, 5, 2, m - 1);
  FieldVec tail(2);
  for (const auto& v : Z.vectors()) axpy(M, tail, M.neg(Int(1)), v);
  Z.push(tail);
  CoeffMap all = solve_012(Z, inner, d);
  CHECK(all.support() == m);
  for (const auto& [i, v] : all) CHECK(v == 1);

  int ok = successes(100, [&](std::uint64_t s) {
    auto F = family(s, 5, 2, m);
    return solves(F, Constraint::ternary012(), solve_012(F, inner, d));
  });
  CHECK(ok >= 50);

  // the batches never touch the pivot coordinate: no subset reaches weight 1
  std::vector<std::vector<int>> rows;
  std::mt19937_64 rng(1);
  for (std::size_t i = 0; i + 1 < m; ++i) rows.push_back({0, int(rng() % 5)});
  rows.push_back({1, 0});
  auto A = family_of(5, rows);
  try {
    solve_012(A, inner, d);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::sample_failure);
  }
}

TEST_CASE("random subset-sum at q=5") {
  Modulus M(5u);
  Int t = subset_sum_random_threshold(M.q(), 1, Rational(1, 2));
  int ok = successes(100, [&](std::uint64_t s) {
    auto F = family(s, 5, 1, static_cast<std::size_t>(t));
    return solves(F, Constraint::binary(), subset_sum_random(F, Rational(1, 2)));
  });
  CHECK(ok >= 40);
  auto Z = family_of(5, {{1}, {0}});
  CHECK(subset_sum_random(Z, Rational(1, 2)).support() == 1);
}

TEST_CASE("random subset-sum on zero-free inputs") {
  Int t = subset_sum_random_threshold(Int(5), 2, Rational(1, 2));
  int ok = successes(60, [&](std::uint64_t s) {
    auto F = zsf::test::nonzero_family(s, 5, 2, static_cast<std::size_t>(t));
    return solves(F, Constraint::binary(), subset_sum_random(F, Rational(1, 2)));
  });
  CHECK(ok >= 24);
}

TEST_CASE("random subset-sum at q=7, eps=0.1") {
  Int t = subset_sum_random_threshold(Int(7), 1, Rational(1, 10));
  int ok = successes(100, [&](std::uint64_t s) {
    auto F = family(500 + s, 7, 1, static_cast<std::size_t>(t));
    return solves(F, Constraint::binary(), subset_sum_random(F, Rational(1, 10)));
  });
  CHECK(ok >= 80);
}

TEST_CASE("subset-sum threshold and relaxed input") {
  auto F = family_of(5, {{1}, {2}, {3}, {4}, {1}, {2}, {3}, {4}, {1}, {2}});
  try {
    subset_sum_random(F, Rational(1, 2));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::insufficient_input);
  }
  SubsetOptions relaxed{false};
  try {
    subset_sum_random(F, Rational(1, 2), 1, relaxed);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::solve_failed);
  }
  CHECK(group_count(Int(3), Rational(1, 2)) == 7);
  CHECK(group_count(Int(100), Rational(1, 2)) >= 100);
}

TEST_CASE("affine transfer reproduces solve 012") {
  Modulus M(5u);
  Solver inner = pm1(M, 1);
  unsigned d = 4;
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto F = family(s, 5, 1, static_cast<std::size_t>(affine_transfer_threshold(inner.input_size, d)));
    std::optional<CoeffMap> a, b;
    try {
      a = solve_012(F, inner, d);
    } catch (const Error&) {
    }
    try {
      b = affine_transfer(F, inner, CoeffSet::symmetric(M, Int(1)), Int(1), Int(1), d);
    } catch (const Error&) {
    }
    REQUIRE(a.has_value() == b.has_value());
    if (a) REQUIRE(*a == *b);
  }
}

TEST_CASE("affine transfer dilation") {
  Modulus M(7u);
  Solver inner = pm1(M, 1);
  auto A = CoeffSet::symmetric(M, Int(1));
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto F = family(s, 7, 1, inner.input_size);
    CoeffMap base = inner.run(F);
    CoeffMap x = affine_transfer(F, inner, A, Int(2), Int(0), 3);
    REQUIRE(x == base.scaled(M, Int(2)));
    REQUIRE(solves_in(F, A.times(M, Int(2)), x));
  }
  CHECK_THROWS_AS(affine_transfer(family(1, 7, 1, 9), inner, A, Int(0), Int(1), 3), Error);
}

TEST_CASE("affine transfer onto 3A+5 at q=11") {
  Modulus M(11u);
  auto A = CoeffSet::symmetric(M, Int(2));
  Solver inner = pm1(M, 1);
  unsigned d = log2_ceil_ratio(M.q(), Rational(1, 2));
  std::size_t m = static_cast<std::size_t>(affine_transfer_threshold(inner.input_size, d));
  CoeffSet B = A.times(M, Int(3)).plus(M, Int(5));
  int ok = successes(100, [&](std::uint64_t s) {
    auto F = family(s, 11, 1, m);
    CoeffMap x = affine_transfer(F, inner, A, Int(3), Int(5), d);
    return solves(F, Constraint::explicit_set(M, B), x);
  });
  CHECK(ok >= 50);
}

TEST_CASE("simple CIS") {
  Modulus M5(5u);
  auto A = CoeffSet::of(M5, {Int(2)}).complement(M5);
  auto p = cis_simple_plan(M5, 1, A, 1, Rational(1, 2));
  CHECK(p.ap.length >= 3);
  CHECK(p.ap.inside(M5, A));
  int ok = successes(50, [&](std::uint64_t s) {
    auto F = family(s, 5, 1, static_cast<std::size_t>(p.threshold));
    return solves(F, Constraint::explicit_set(M5, A), cis_simple(F, A, 1, Rational(1, 2)));
  });
  CHECK(ok >= 20);

  auto F = family(4, 5, 2, 3);
  CHECK(cis_simple(F, CoeffSet::all(M5), 1, Rational(1, 2)) == find_dependency(F));

  Modulus M67(67u);
  auto B = CoeffSet::of(M67, {Int(5), Int(40)}).complement(M67);
  auto p67 = cis_simple_plan(M67, 1, B, 1, Rational(1, 2));
  CHECK(p67.k == 2);
  int ok67 = successes(30, [&](std::uint64_t s) {
    auto G = family(s, 67, 1, static_cast<std::size_t>(p67.threshold));
    return solves(G, Constraint::explicit_set(M67, B), cis_simple(G, B, 1, Rational(1, 2)));
  });
  CHECK(ok67 >= 12);
}

TEST_CASE("simple CIS preconditions") {
  Modulus M(7u);
  auto A = CoeffSet::of(M, {Int(1), Int(2)}).complement(M);
  try {
    cis_simple_plan(M, 1, A, 1, Rational(1, 2));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_long_ap);
  }
  APWitness bad{Int(1), Int(1), 4};
  CHECK_THROWS_AS(cis_simple_plan(M, 1, A, 1, Rational(1, 2), bad), Error);
  APWitness good{Int(3), Int(1), 4};
  CHECK(cis_simple_plan(M, 1, A, 1, Rational(1, 2), good).k == 2);
}
