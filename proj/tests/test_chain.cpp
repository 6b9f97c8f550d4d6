#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <tuple>
#include <utility>

#include "hgs/chain.hpp"

using namespace hgs;
using namespace hgs::chain;

namespace {

// fit an affine map to a permutation table by reading off the image of 0
// and of the basis vectors, then report whether it matches everywhere
bool table_is_affine(int n, std::uint32_t p, const PermTable& table) {
  std::uint64_t size = small_pow(p, static_cast<unsigned>(n));
  Vec t = vec_of_rank(table[0], n, p);
  FpMatrix linear(p, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Vec ej = unit_vec(static_cast<std::size_t>(n), static_cast<std::size_t>(j));
    Vec img = vec_of_rank(table[rank_of_vec(ej, p)], n, p);
    Vec col = vec_sub(p, img, t);
    for (int i = 0; i < n; ++i)
      linear.entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          col[static_cast<std::size_t>(i)];
  }
  for (std::uint64_t xr = 0; xr < size; ++xr) {
    Vec x = vec_of_rank(xr, n, p);
    Vec predicted = vec_add(p, linear.apply(x), t);
    if (rank_of_vec(predicted, p) != table[xr]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("truncated polynomial arithmetic", "[chain]") {
  std::uint32_t p = 5;
  TruncatedPoly u = zero_poly(p, 3);
  u.c = {1, 1, 0, 0};  // 1 + z

  SECTION("products truncate above the bound") {
    TruncatedPoly sq = mul(u, u);
    CHECK(sq.c == std::vector<std::uint32_t>{1, 2, 1, 0});
    TruncatedPoly cube = mul(sq, u);
    CHECK(cube.c == std::vector<std::uint32_t>{1, 3, 3, 1});
    TruncatedPoly fourth = mul(cube, u);  // binomial row 1 4 6 4 1 cut at z^3
    CHECK(fourth.c == std::vector<std::uint32_t>{1, 4, 1, 4});
  }

  SECTION("pow matches repeated multiplication and kills exponent p") {
    TruncatedPoly acc = zero_poly(p, 3);
    acc.c[0] = 1;
    for (unsigned e = 0; e <= 7; ++e) {
      CHECK(pow_trunc(u, e).c == acc.c);
      acc = mul(acc, u);
    }
    CHECK(pow_trunc(u, p).c == std::vector<std::uint32_t>{1, 0, 0, 0});
  }

  SECTION("element/poly conversions") {
    Vec x = {2, 0, 4};
    TruncatedPoly a = poly_from_elem(p, x);
    CHECK(a.c == std::vector<std::uint32_t>{0, 2, 0, 4});
    CHECK(elem_from_poly(a) == x);
    a.c[0] = 1;
    CHECK_THROWS_AS(elem_from_poly(a), std::invalid_argument);
    CHECK_THROWS_AS(poly_from_elem(p, Vec{5, 0}), std::invalid_argument);
  }

  SECTION("shape mismatches are rejected") {
    CHECK_THROWS_AS(mul(u, zero_poly(p, 2)), std::invalid_argument);
    CHECK_THROWS_AS(mul(u, zero_poly(7, 3)), std::invalid_argument);
  }
}

TEST_CASE("truncated logarithm", "[chain]") {
  SECTION("log(1+z) at p=5, bound 3") {
    TruncatedPoly u = zero_poly(5, 3);
    u.c = {1, 1, 0, 0};
    // z - z^2/2 + z^3/3 = z + 2 z^2 + 2 z^3 over F_5
    CHECK(log_trunc(u).c == std::vector<std::uint32_t>{0, 1, 2, 2});
  }

  SECTION("log turns products into sums") {
    std::uint32_t p = 7;
    int n = 5;
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      TruncatedPoly a = zero_poly(p, n), b = zero_poly(p, n);
      a.c[0] = b.c[0] = 1;
      for (int i = 1; i <= n; ++i) {
        a.c[static_cast<std::size_t>(i)] = rng() % p;
        b.c[static_cast<std::size_t>(i)] = rng() % p;
      }
      TruncatedPoly lhs = log_trunc(mul(a, b));
      TruncatedPoly la = log_trunc(a), lb = log_trunc(b);
      for (int i = 0; i <= n; ++i)
        CHECK(lhs.c[static_cast<std::size_t>(i)] ==
              fp_add(p, la.c[static_cast<std::size_t>(i)],
                     lb.c[static_cast<std::size_t>(i)]));
    }
  }

  SECTION("requires a principal unit and p > n") {
    TruncatedPoly v = zero_poly(5, 3);
    v.c = {2, 1, 0, 0};
    CHECK_THROWS_AS(log_trunc(v), std::invalid_argument);
    TruncatedPoly w = zero_poly(3, 3);
    w.c = {1, 1, 0, 0};
    CHECK_THROWS_AS(log_trunc(w), std::invalid_argument);
    TruncatedPoly x = zero_poly(5, 5);
    x.c[0] = 1;
    CHECK_THROWS_AS(log_trunc(x), std::invalid_argument);
  }
}

TEST_CASE("exponential coordinate map b", "[chain]") {
  SECTION("hand-checked values at n=3, p=5") {
    CHECK(b_map(3, 5, {1, 0, 0}) == Vec{1, 0, 0});
    CHECK(b_map(3, 5, {0, 1, 0}) == Vec{0, 1, 0});
    CHECK(b_map(3, 5, {0, 0, 1}) == Vec{0, 0, 1});
    CHECK(b_map(3, 5, {1, 1, 0}) == Vec{1, 1, 1});  // (1+z)(1+z^2)-1
    CHECK(b_map(3, 5, {2, 0, 0}) == Vec{2, 1, 0});  // (1+z)^2-1
  }

  SECTION("b and its inverse round-trip exhaustively") {
    for (std::uint32_t p : {5u, 7u})
      for (int n : {2, 3}) {
        for_each_vec(n, p, [&](const Vec& r) {
          Vec s = b_map(n, p, r);
          CHECK(b_inverse(n, p, s) == r);
          return true;
        });
        for_each_vec(n, p, [&](const Vec& s) {
          CHECK(b_map(n, p, b_inverse(n, p, s)) == s);
          return true;
        });
      }
  }

  SECTION("rejects p <= n and bad arguments") {
    CHECK_THROWS_AS(b_map(3, 3, {0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(b_inverse(3, 3, {0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(b_map(3, 5, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(b_map(3, 5, {0, 0, 5}), std::invalid_argument);
  }
}

TEST_CASE("closed forms for n = 3 match the generic machinery", "[chain]") {
  for (std::uint32_t p : {5u, 7u}) {
    for_each_vec(3, p, [&](const Vec& r) {
      CHECK(b3_closed(p, r) == b_map(3, p, r));
      CHECK(b3_inverse_closed(p, r) == b_inverse(3, p, r));
      return true;
    });
  }
}

TEST_CASE("alpha closed form for n = 3", "[chain]") {
  std::uint32_t p = 5;
  std::vector<PermTable> tables(125);
  for_each_vec(3, p, [&](const Vec& g) {
    tables[rank_of_vec(g, p)] = alpha_perm(3, p, g);
    return true;
  });
  for_each_vec(3, p, [&](const Vec& r) {
    const PermTable& table = tables[rank_of_vec(r, p)];
    for_each_vec(3, p, [&](const Vec& x) {
      CHECK(rank_of_vec(alpha3_closed(p, r, x), p) == table[rank_of_vec(x, p)]);
      return true;
    });
    return true;
  });
}

TEST_CASE("alpha is conjugation of translation by b", "[chain]") {
  int n = 2;
  std::uint32_t p = 7;
  std::uint64_t size = small_pow(p, 2);
  // rank-space tables for b and b^{-1}
  PermTable btab(size), binvtab(size);
  for_each_vec(n, p, [&](const Vec& r) {
    std::uint64_t rr = rank_of_vec(r, p);
    std::uint64_t sr = rank_of_vec(b_map(n, p, r), p);
    btab[rr] = sr;
    binvtab[sr] = rr;
    return true;
  });
  for_each_vec(n, p, [&](const Vec& g) {
    PermTable direct = alpha_perm(n, p, g);
    for (std::uint64_t xr = 0; xr < size; ++xr) {
      Vec translated = vec_add(p, vec_of_rank(btab[xr], n, p), g);
      CHECK(direct[xr] == binvtab[rank_of_vec(translated, p)]);
    }
    return true;
  });
}

TEST_CASE("alpha family verification report", "[chain]") {
  for (auto [n, p] : std::vector<std::pair<int, std::uint32_t>>{
           {2, 5}, {3, 5}, {2, 7}}) {
    AlphaReport rep = alpha_checks(n, p);
    INFO("n=" << n << " p=" << p);
    CHECK(rep.b_bijective);
    CHECK(rep.b_homomorphism);
    CHECK(rep.distinct);
    CHECK(rep.regular);
    CHECK(rep.group_law);
    CHECK(rep.normalized);
    CHECK(rep.ok());
  }
  CHECK_THROWS_AS(alpha_checks(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(alpha_checks(3, 13), std::invalid_argument);  // 2197 > cap
  CHECK_THROWS_AS(alpha_perm(3, 5, Vec{0, 0}), std::invalid_argument);
}

TEST_CASE("alpha maps are affine exactly when n = 2", "[chain]") {
  SECTION("n = 2: every alpha(g) is an affine permutation") {
    std::uint32_t p = 5;
    for_each_vec(2, p, [&](const Vec& g) {
      CHECK(table_is_affine(2, p, alpha_perm(2, p, g)));
      return true;
    });
  }

  SECTION("n = 3: some alpha(g) is not affine") {
    std::uint32_t p = 5;
    bool found_nonaffine = false;
    for_each_vec(3, p, [&](const Vec& g) {
      if (!table_is_affine(3, p, alpha_perm(3, p, g))) {
        found_nonaffine = true;
        return false;
      }
      return true;
    });
    CHECK(found_nonaffine);
    // g with g_1 != 0 makes the third coordinate quadratic in x_1
    CHECK_FALSE(table_is_affine(3, p, alpha_perm(3, p, {1, 0, 0})));
  }
}

TEST_CASE("chain stabilizer formula against the full sweep", "[chain]") {
  for (auto [n, p, expect] : std::vector<std::tuple<int, std::uint32_t, std::uint64_t>>{
           {2, 5, 20}, {2, 7, 42}, {3, 3, 18}}) {
    StabilizerComparison cmp = chain_stabilizer_check(n, p);
    INFO("n=" << n << " p=" << p);
    CHECK(cmp.formula == expect);
    CHECK(cmp.measured == expect);
    CHECK(cmp.agree());
  }
}
