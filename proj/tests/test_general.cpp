#include "doctest.h"
#include "reducible_check.hpp"
#include "support.hpp"
#include "zsf/general.hpp"

#include <set>

using namespace zsf;
using zsf::test::family;
using zsf::test::solves;
using zsf::test::solves_in;

using zsf::test::Admissible;
using zsf::test::check_reducible;
using zsf::test::random_admissible;

TEST_CASE("nontrivial start hits every element of A and stays sparse") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::uint64_t q = std::vector<std::uint64_t>{3, 5, 7, 11, 13}[trial % 5];
    Modulus M(q);
    std::vector<Int> a;
    for (std::uint64_t x = 1; x < q; ++x)
      if (rng() % 3 == 0) a.push_back(Int(x));
    if (a.empty()) a.push_back(Int(1));
    CoeffSet A = CoeffSet::of(M, a);
    unsigned r = 1 + trial % 2;
    std::size_t n = 1 + trial % 4;
    StartRoutine st{A, r};
    VecFamily F = family(trial, q, n, static_cast<std::size_t>(st.input_size(M.q(), n)));
    CoeffMap x = nontrivial_start(F, A, r);
    CHECK(F.combine(x).is_zero());
    CHECK(is_nontrivial_for(M, x, A));
    CHECK(Int(x.support()) <= st.sparsity(M.q(), n));
  }
}

TEST_CASE("nontrivial start rejects 0 in A and short input") {
  Modulus M(7);
  VecFamily F = family(1, 7, 2, 5);
  CHECK_THROWS_AS(nontrivial_start(F, CoeffSet::of(M, {Int(0), Int(1)})), Error);
  CHECK_THROWS_AS(nontrivial_start(F.slice(0, 3), CoeffSet::of(M, {Int(1), Int(2)})), Error);
}

TEST_CASE("two-level reducible: full sweep") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    Admissible ad = random_admissible(rng, 1);
    std::size_t n = 1 + trial % 3;
    StartRoutine st{ad.A, 1};
    VecFamily F = family(100 + trial, ad.M.q64(), n, static_cast<std::size_t>(tree_size(ad.M.q(), n, 1, st)));
    GeneralReducible R = reducible_simple(F, ad.A, ad.P.H[0], ad.P.H[1], ad.P.B[0]);
    CHECK(check_reducible(F, R) == "");
  }
}

TEST_CASE("forest reducible: full sweep for k = 2, 3") {
  std::mt19937_64 rng(31);
  for (std::size_t k : {2, 3}) {
    for (int trial = 0; trial < 15; ++trial) {
      Admissible ad = random_admissible(rng, k);
      std::size_t n = k == 2 ? 1 + trial % 2 : 1;
      StartRoutine st{ad.A, 1};
      Int leaves = tree_size(ad.M.q(), n, k, st);
      VecFamily F = family(200 + trial, ad.M.q64(), n, static_cast<std::size_t>(leaves));
      GeneralReducible R = reducible_tree(F, ad.A, ad.P);
      CHECK(R.leaves().size() == static_cast<std::size_t>(leaves));
      CHECK(Int(R.u_coeffs().support()) <= tree_sparsity(ad.M.q(), n, k, st));
      CHECK(check_reducible(F, R) == "");
    }
  }
}

TEST_CASE("partition validation") {
  Modulus M(7);
  CoeffSet A = CoeffSet::of(M, {Int(1), Int(3)});
  VecFamily F = family(3, 7, 1, 200);
  CoeffSet H0 = CoeffSet::symmetric(M, Int(1)), H1 = CoeffSet::of(M, {Int(2), Int(3), Int(4), Int(5)});
  // B_1 too small to cover H_1 up to sign
  CHECK_THROWS_AS(reducible_simple(F, A, H0, H1, CoeffSet::of(M, {Int(2)})), Error);
  // cells overlap
  CHECK_THROWS_AS(reducible_simple(F, A, CoeffSet::symmetric(M, Int(2)), H1, CoeffSet::of(M, {Int(2), Int(3)})),
                  Error);
  // A misses H_1
  CHECK_THROWS_AS(reducible_simple(F, CoeffSet::of(M, {Int(1)}), H0, H1, CoeffSet::of(M, {Int(2), Int(3)})),
                  Error);
  // cells must be closed under negation
  CHECK_THROWS_AS(reducible_simple(F, A, CoeffSet::of(M, {Int(0), Int(1), Int(6), Int(2)}),
                                   CoeffSet::of(M, {Int(3), Int(4), Int(5)}), CoeffSet::of(M, {Int(3), Int(4), Int(5)})),
                  Error);
  Partition big;
  for (int i = 0; i < 10; ++i) big.H.push_back(CoeffSet::of(M, {Int(i)}));
  big.B = std::vector<CoeffSet>(9, CoeffSet::of(M, {Int(1)}));
  try {
    reducible_tree(F, A, big);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::k_too_large);
  }
}

TEST_CASE("lifting forests to an A0-nontrivial H'-zero-sum") {
  std::mt19937_64 rng(41);
  for (std::size_t k : {1, 2}) {
    for (int trial = 0; trial < 8; ++trial) {
      Admissible ad = random_admissible(rng, k);
      StartRoutine st{ad.A, 1};
      std::size_t n = 1;
      Int need = lift_threshold(ad.M.q(), n, st, ad.P);
      VecFamily F = family(300 + trial, ad.M.q64(), n, static_cast<std::size_t>(need));
      CoeffMap x = lift_zero_sum(F, st, ad.P);
      GeneralReducible R = build_reducible(F, st, ad.P);
      CHECK(solves_in(F, R.H_prime(), x));
      CHECK(is_nontrivial_for(ad.M, x, R.A0()));
      CHECK_THROWS_AS(lift_zero_sum(F.slice(0, F.size() - 1), st, ad.P), Error);
    }
  }
}

TEST_CASE("one-shot thresholds") {
  CHECK(sis_one_shot_threshold(1, 3) == 128);
  CHECK(sis_one_shot_threshold(2, 2) == 16);
  CHECK(sis_one_shot_threshold(2, 3) == 2 * 125);
  CHECK(sis_one_shot_threshold(1, 4) == 27 * 625);
  // exact count (n+k) prod_{j<k-1} ((k-1)^j n + k), by hand
  auto exact = [](std::size_t n, unsigned k) {
    Int t = Int(n) + k, p = 1;
    for (unsigned j = 0; j + 1 < k; ++j) {
      t *= p * n + k;
      p *= k - 1;
    }
    return t;
  };
  for (std::uint64_t q : {13, 19, 29})
    for (unsigned k : {2, 3, 4})
      for (std::size_t n : {1, 2, 3}) {
        CHECK(sis_one_shot_exact(Int(q), n, k) == exact(n, k));
        CHECK(sis_one_shot_exact(Int(q), n, k) <= sis_one_shot_threshold(n, k));
      }
}

TEST_CASE("one-shot interval partition") {
  for (std::uint64_t q : {5, 7, 11, 13, 19, 23, 101}) {
    Modulus M(q);
    for (unsigned k = 2; Int(k) <= M.half(); ++k) {
      Partition P = one_shot_partition(M, k);
      Int s = M.q() / (2 * k);
      REQUIRE(P.k() == k - 1);
      CHECK(P.H[0] == CoeffSet::symmetric(M, s));
      Int total = 0;
      for (std::size_t i = 1; i < k; ++i) {
        const auto& run = P.B[i - 1].runs();
        REQUIRE(run.size() == 1);
        CHECK(run[0].second - run[0].first <= s);
        total += P.H[i].size();
      }
      CHECK(total + P.H[0].size() == M.q());
    }
  }
}

TEST_CASE("one-shot SIS at the threshold") {
  for (int seed = 0; seed < 5; ++seed) {
    VecFamily F = family(seed, 13, 1, 128);
    CoeffMap x = sis_one_shot(F, 3);
    CHECK(solves(F, Constraint::interval(F.modulus(), Int(2)), x));
  }
  for (int seed = 0; seed < 5; ++seed) {
    VecFamily F = family(seed, 7, 2, 16);
    CoeffMap x = sis_one_shot(F, 2);
    CHECK(solves(F, Constraint::interval(F.modulus(), Int(1)), x));
  }
  VecFamily F = family(9, 13, 1, 127);
  try {
    sis_one_shot(F, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::too_few_vectors);
    CHECK(std::string(e.what()).find("need 128, got 127") != std::string::npos);
  }
  CHECK_THROWS_AS(sis_one_shot(family(1, 13, 1, 200), 7), Error);
  CHECK_THROWS_AS(sis_one_shot(family(1, 13, 1, 200), 1), Error);
}

TEST_CASE("one-shot on a family with a zero vector") {
  VecFamily F = test::family_of(13, {{3}, {0}, {5}});
  for (int i = 0; i < 125; ++i) F.push(FieldVec(std::vector<Int>{Int(1 + i % 12)}));
  CoeffMap x = sis_one_shot(F, 3);
  CHECK(solves(F, Constraint::interval(F.modulus(), Int(2)), x));
}

TEST_CASE("centered avoidance") {
  CHECK(cis_centered_threshold(1, 1) == 9);
  CHECK(cis_centered_threshold(1, 2) == 2 * 64);
  Modulus M7(7);
  for (int seed = 0; seed < 10; ++seed) {
    VecFamily F = family(seed, 7, 1, 9);
    CoeffMap x = cis_centered(F, {Int(3)});
    CHECK(solves(F, Constraint::forbidden(M7, CoeffSet::of(M7, {Int(3), Int(4)})), x));
  }
  Modulus M11(11);
  CoeffSet bad = CoeffSet::of(M11, {Int(2), Int(9), Int(5), Int(6)});
  for (int seed = 0; seed < 5; ++seed) {
    VecFamily F = family(seed, 11, 1, 128);
    CoeffMap x = cis_centered(F, {Int(2), Int(5)});
    CHECK(solves(F, Constraint::forbidden(M11, bad), x));
  }
  // -5 names the same pair as 5
  CHECK_THROWS_AS(cis_centered(family(1, 11, 1, 128), {Int(5), Int(6)}), Error);
  CHECK_THROWS_AS(cis_centered(family(1, 11, 1, 128), {}), Error);
  CHECK_THROWS_AS(cis_centered(family(1, 7, 1, 8), {Int(3)}), Error);
  for (std::uint64_t q : {11, 13})
    for (std::size_t k : {1, 2, 3})
      for (std::size_t n : {1, 2}) {
        Int t = Int(n) + k + 1, p = 1;
        for (std::size_t j = 0; j < k; ++j) {
          t *= p * n + k + 1;
          p *= k;
        }
        CHECK(cis_centered_exact(Int(q), n, k) == t);
      }
}

TEST_CASE("improved subset sum, q = 5") {
  Modulus M(5);
  Rational eps(1, 2);
  Int need = subset_sum_improved_threshold(M, 1, eps);
  int ok = 0;
  for (int seed = 0; seed < 10; ++seed) {
    VecFamily F = family(seed, 5, 1, static_cast<std::size_t>(need));
    try {
      CoeffMap x = subset_sum_improved(F, eps);
      CHECK(solves(F, Constraint::binary(), x));
      ++ok;
    } catch (const Error& e) {
      CHECK((e.code() == Errc::sample_failure || e.code() == Errc::solve_failed));
    }
  }
  CHECK(ok >= 4);
}

TEST_CASE("size two") {
  Modulus M(7);
  Rational eps(1, 2);
  CoeffSet A = CoeffSet::of(M, {Int(2), Int(5)});
  Int need = size_two_threshold(M, 1, A, eps, PmEngine::power2);
  int ok = 0;
  for (int seed = 0; seed < 6; ++seed) {
    VecFamily F = family(seed, 7, 1, static_cast<std::size_t>(need));
    try {
      CoeffMap x = size_two(F, A, eps, PmEngine::power2);
      CHECK(solves(F, Constraint::explicit_set(M, A), x));
      ++ok;
    } catch (const Error& e) {
      CHECK(e.code() == Errc::sample_failure);
    }
  }
  CHECK(ok >= 3);
  // {0,1} is the subset-sum problem itself
  CoeffSet bin = CoeffSet::of(M, {Int(0), Int(1)});
  CHECK(size_two_threshold(M, 1, bin, eps) == subset_sum_improved_threshold(M, 1, eps));
  CHECK_THROWS_AS(size_two(family(1, 7, 1, 10), CoeffSet::of(M, {Int(1)}), eps), Error);
}

TEST_CASE("paired avoidance, q = 7") {
  Modulus M(7);
  Rational eps(1, 2);
  // B = 2 (F_7 \ {+-3}) + 1 misses 2*3+1 = 0 and 2*4+1 = 2
  CoeffSet B = CoeffSet::of(M, {Int(0), Int(2)}).complement(M);
  CHECK(cis_paired_threshold(M, 1, 1, Int(1), eps) == 37);
  int ok = 0;
  for (int seed = 0; seed < 20; ++seed) {
    VecFamily F = family(seed, 7, 1, 37);
    try {
      CoeffMap x = cis_paired(F, {Int(3)}, Int(2), Int(1), eps);
      CHECK(solves(F, Constraint::explicit_set(M, B), x));
      ++ok;
    } catch (const Error& e) {
      CHECK(e.code() == Errc::sample_failure);
    }
  }
  CHECK(ok >= 8);
  CHECK_THROWS_AS(cis_paired(family(1, 7, 1, 37), {Int(3)}, Int(0), Int(1), eps), Error);
  // b = 0, a = 1 is the centered problem itself
  VecFamily F = family(5, 7, 1, 9);
  CHECK(cis_paired(F, {Int(3)}, Int(1), Int(0), eps) == cis_centered(F, {Int(3)}));
}

TEST_CASE("full dispatch routes") {
  Rational eps(1, 2);
  Modulus M3(3);
  auto r3 = cis_full_plan(M3, 1, CoeffSet::of(M3, {Int(0), Int(2)}), eps);
  CHECK(r3.kind == CisRoute::Kind::f3);

  Modulus M11(11);
  CoeffSet B11 = CoeffSet::of(M11, {Int(0), Int(1), Int(2), Int(3), Int(4)});
  auto r11 = cis_full_plan(M11, 1, B11, eps);
  CHECK(r11.kind == CisRoute::Kind::middle_ap);
  CHECK(!r11.fell_back);

  Modulus M5(5);
  auto r5 = cis_full_plan(M5, 1, CoeffSet::of(M5, {Int(1), Int(3)}), eps);
  CHECK(r5.kind == CisRoute::Kind::size_two);

  auto r1 = cis_full_plan(M5, 1, CoeffSet::of(M5, {Int(4)}).complement(M5), eps);
  CHECK(r1.kind == CisRoute::Kind::forbid_one);
  auto r2 = cis_full_plan(M5, 1, CoeffSet::of(M5, {Int(1), Int(2)}).complement(M5), eps);
  CHECK(r2.kind == CisRoute::Kind::antipodal);
  CHECK(r2.describe().find("antipodal") == 0);

  CHECK_THROWS_AS(cis_full_plan(M5, 1, CoeffSet::of(M5, {Int(1)}), eps), Error);
  CHECK_THROWS_AS(cis_full_plan(M5, 1, CoeffSet::all(M5), eps), Error);
}

TEST_CASE("full dispatch solves across cases") {
  Rational eps(1, 2);
  std::mt19937_64 rng(5);
  for (std::uint64_t q : {3, 5, 7, 11}) {
    Modulus M(q);
    for (std::uint64_t c = 1; c + 2 <= q; ++c) {
      std::vector<Int> all;
      for (std::uint64_t x = 0; x < q; ++x) all.push_back(Int(x));
      std::shuffle(all.begin(), all.end(), rng);
      CoeffSet B = CoeffSet::of(M, std::vector<Int>(all.begin(), all.begin() + static_cast<long>(q - c)));
      CisRoute route = cis_full_plan(M, 1, B, eps);
      if (route.threshold > 20000) continue;
      int ok = 0;
      for (int seed = 0; seed < 4; ++seed) {
        VecFamily F = family(seed * 31 + c, q, 1, static_cast<std::size_t>(route.threshold));
        try {
          CoeffMap x = run_route(F, route, eps);
          CHECK(solves(F, Constraint::explicit_set(M, B), x));
          ++ok;
        } catch (const Error& e) {
          CHECK((e.code() == Errc::sample_failure || e.code() == Errc::solve_failed));
        }
      }
      CHECK_MESSAGE(ok >= 1, "q=" << q << " c=" << c << " route " << route.describe());
    }
  }
}
