#include "doctest.h"
#include "support.hpp"
#include "zsf/f3.hpp"

using namespace zsf;
using zsf::test::family;
using zsf::test::family_of;
using zsf::test::solves;

namespace {

const F3Strategy kAll[] = {F3Strategy::weak, F3Strategy::quadratic, F3Strategy::main};

unsigned log3_ceil(std::size_t l) {
  unsigned t = 0;
  for (std::size_t p = 1; p < l + 1; p *= 3) ++t;
  return t;
}

// Three times the main recursion, kept in integers.
std::uint64_t main_times3(std::size_t n) {
  std::uint64_t m3 = 3;
  for (std::size_t l = 1; l <= n; ++l) {
    std::uint64_t t = log3_ceil(l);
    std::uint64_t sparse = std::max<std::uint64_t>(m3 + 2 * (l + 1), 3 * l) + 3 * t;
    std::uint64_t dep = m3 + 3 * (l + 1);
    m3 = std::min(sparse, dep);
  }
  return m3;
}

std::size_t sparse_bound(std::size_t l) { return 2 * (l + 1) / 3 + log3_ceil(l); }

}  // namespace

TEST_CASE("sparse dependence examples") {
  auto F = family_of(3, {{1, 0}, {0, 1}, {1, 1}});
  CoeffMap a = f3_sparse_dependence(F);
  CHECK(F.combine(a).is_zero());
  CHECK(a.support() <= 3);
  CHECK(a.support() >= 1);

  auto Z = family_of(3, {{1, 1}, {0, 0}, {1, 2}});
  CoeffMap z = f3_sparse_dependence(Z);
  CHECK(z.support() == 1);
  CHECK(z.contains(1));

  auto G = family_of(3, {{1}, {2}});
  CoeffMap g = f3_sparse_dependence(G);
  CHECK(g.get(0) == 1);
  CHECK(g.get(1) == 1);
  CHECK(g.support() == 2);
}

TEST_CASE("sparse dependence support bound on random families") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::size_t n = 1 + seed % 12;
    auto F = family(seed, 3, n, n + log3_ceil(n) + seed % 3);
    CoeffMap a = f3_sparse_dependence(F);
    REQUIRE_FALSE(a.empty());
    REQUIRE(F.combine(a).is_zero());
    std::size_t l = max_independent(F).size();
    REQUIRE(a.support() <= std::max<std::size_t>(1, sparse_bound(l)));
  }
}

TEST_CASE("solve examples") {
  auto F = family_of(3, {{1}, {1}, {2}, {0}});
  for (auto s : kAll) {
    CoeffMap x = f3_solve(F, s);
    CHECK(solves(F, Constraint::binary(), x));
  }
  auto Z = family_of(3, {{1, 2}, {2, 2}, {0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 0}, {1, 2}});
  for (auto s : kAll) {
    CoeffMap x = f3_solve(Z, s);
    CHECK(x.support() == 1);
    CHECK(x.contains(2));
  }
}

TEST_CASE("worst-case shaped family at the main threshold") {
  // copies of e_i and -e_i in rotation; no short zero-sums among few vectors
  const std::size_t n = 4;
  std::size_t m = static_cast<std::size_t>(f3_threshold(n, F3Strategy::main));
  std::vector<std::vector<int>> rows;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<int> v(n, 0);
    v[i % n] = (i / n) % 2 ? 2 : 1;
    rows.push_back(v);
  }
  auto F = family_of(3, rows);
  for (auto s : kAll) {
    if (F.size() < f3_threshold(n, s)) continue;
    CHECK(solves(F, Constraint::binary(), f3_solve(F, s)));
  }
  CHECK(solves(F, Constraint::binary(), f3_solve(F, F3Strategy::main)));
}

TEST_CASE("threshold values") {
  CHECK(f3_threshold(0, F3Strategy::main) == 1);
  for (std::size_t n = 0; n <= 30; ++n) {
    CHECK(f3_threshold(n, F3Strategy::weak) == Int((n + 1) * (n + 1)));
    CHECK(f3_threshold(n, F3Strategy::quadratic) == Int((n + 1) * (n + 2) / 2));
    CHECK(f3_threshold(n, F3Strategy::main) == Int((main_times3(n) + 2) / 3));
    CHECK(f3_threshold(n, F3Strategy::main) <= ceil_q(f3_closed_form(n)));
  }
  CHECK(f3_closed_form(10) == Rational(223, 3));
  CHECK(ceil_q(f3_closed_form(10)) == 75);
  CHECK(f3_threshold(10, F3Strategy::main) <= 75);
  const int frozen[] = {1, 3, 6, 10, 15, 21, 28, 35, 43, 53, 63, 74, 86};
  for (std::size_t n = 0; n <= 12; ++n) CHECK(f3_threshold(n, F3Strategy::main) == frozen[n]);
}

TEST_CASE("threshold ordering") {
  for (std::size_t n = 3; n <= 60; ++n) {
    CHECK(f3_threshold(n, F3Strategy::main) <= f3_threshold(n, F3Strategy::quadratic));
    CHECK(f3_threshold(n, F3Strategy::quadratic) <= f3_threshold(n, F3Strategy::weak));
  }
}

TEST_CASE("random families at threshold") {
  for (std::size_t n = 1; n <= 8; ++n)
    for (auto s : kAll)
      for (std::uint64_t seed = 0; seed < 30; ++seed) {
        std::size_t m = static_cast<std::size_t>(f3_threshold(n, s));
        auto F = family(1000 * n + seed, 3, n, m);
        CoeffMap x = f3_solve(F, s);
        REQUIRE(solves(F, Constraint::binary(), x));
      }
}

TEST_CASE("below threshold and wrong field are rejected") {
  auto F = family(1, 3, 3, 9);
  try {
    f3_solve(F, F3Strategy::main);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::too_few_vectors);
    CHECK(std::string(e.what()).find("need 10, got 9") != std::string::npos);
  }
  auto G = family(1, 5, 1, 4);
  CHECK_THROWS_AS(f3_solve(G, F3Strategy::weak), Error);
}
