#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "hgs/descent.hpp"

using namespace hgs;
using namespace hgs::descent;

namespace {

bool rows_are_permutations(const DescentDatum& d) {
  for (const auto& row : d.conjugation) {
    std::vector<std::uint64_t> sorted = row;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint64_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i) return false;
  }
  return true;
}

// conjugating by t then by u must equal conjugating by t + u
bool action_is_additive(const DescentDatum& d) {
  std::uint64_t size = d.size();
  for (std::uint64_t tr = 0; tr < size; ++tr) {
    Vec t = vec_of_rank(tr, d.n, d.p);
    for (std::uint64_t ur = 0; ur < size; ++ur) {
      Vec u = vec_of_rank(ur, d.n, d.p);
      std::uint64_t sr = rank_of_vec(vec_add(d.p, t, u), d.p);
      for (std::uint64_t xr = 0; xr < size; ++xr)
        if (d.conjugation[ur][d.conjugation[tr][xr]] !=
            d.conjugation[sr][xr])
          return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("cube-zero descent datum", "[descent]") {
  std::uint32_t p = 5;
  FpMatrix phi = FpMatrix::from_rows(p, {{1, 2, 0}, {2, 4, 0}, {0, 0, 0}});
  NilpotentAlgebra a = rank1_algebra(phi);
  DescentDatum d = descent_datum(a);

  CHECK(d.p == p);
  CHECK(d.n == 3);
  CHECK(d.family == Family::CubeZero);
  CHECK(std::string(to_string(d.family)) == "cube-zero");
  CHECK(d.size() == 125);
  CHECK(d.coefficient_constraint == "b[x - x*z] = b[x]^z for all z");
  CHECK(rows_are_permutations(d));
  CHECK(action_is_additive(d));

  SECTION("stored conjugation is x - x*t, bilinear in the form") {
    for_each_vec(3, p, [&](const Vec& t) {
      std::uint64_t tr = rank_of_vec(t, p);
      for_each_vec(3, p, [&](const Vec& x) {
        // x*t = (x^T Phi t) e_3 for a rank-one tensor
        std::uint32_t pairing = 0;
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j)
            pairing = fp_add(
                p, pairing,
                fp_mul(p, fp_mul(p, x[i], phi.at(i, j)), t[j]));
        Vec expect = x;
        expect[2] = fp_sub(p, expect[2], pairing);
        CHECK(d.conjugation[tr][rank_of_vec(x, p)] == rank_of_vec(expect, p));
        return true;
      });
      return true;
    });
  }

  SECTION("evaluation element is -x + x^2 and kills the permutation") {
    for_each_vec(3, p, [&](const Vec& x) {
      Vec expect = vec_add(p, vec_neg(p, x), a.multiply(x, x));
      CHECK(d.evaluation[rank_of_vec(x, p)] == rank_of_vec(expect, p));
      CHECK(vec_is_zero(a.circle_mul(x, expect)));
      return true;
    });
  }
}

TEST_CASE("zero algebra descends to the classical structure", "[descent]") {
  std::uint32_t p = 3;
  DescentDatum d = descent_datum(zero_algebra(2, p));
  // trivial multiplication: conjugation is trivial, evaluation is negation
  for (std::uint64_t tr = 0; tr < d.size(); ++tr)
    for (std::uint64_t xr = 0; xr < d.size(); ++xr)
      CHECK(d.conjugation[tr][xr] == xr);
  for_each_vec(2, p, [&](const Vec& x) {
    CHECK(d.evaluation[rank_of_vec(x, p)] ==
          rank_of_vec(vec_neg(p, x), p));
    return true;
  });
}

TEST_CASE("cube-zero route rejects algebras with triple products", "[descent]") {
  CHECK_THROWS_AS(descent_datum(chain_algebra(3, 5)), std::invalid_argument);
  CHECK_THROWS_WITH(descent_datum(chain_algebra(3, 5)),
                    Catch::Matchers::ContainsSubstring("chain_descent_datum"));
  // too large to tabulate even though the product is trivial
  CHECK_THROWS_AS(descent_datum(zero_algebra(7, 3)),
                  std::invalid_argument);
}

TEST_CASE("chain descent datum", "[descent]") {
  int n = 3;
  std::uint32_t p = 5;
  NilpotentAlgebra a = chain_algebra(n, p);
  DescentDatum d = chain_descent_datum(n, p);

  CHECK(d.family == Family::Chain);
  CHECK(std::string(to_string(d.family)) == "chain");
  CHECK(d.size() == 125);
  CHECK(d.coefficient_constraint == "s[g + g*b(t)] = s[g]^t for all t");
  CHECK(rows_are_permutations(d));
  CHECK(action_is_additive(d));

  SECTION("stored conjugation is g + g*b(t)") {
    for_each_vec(n, p, [&](const Vec& t) {
      Vec bt = chain::b_map(n, p, t);
      std::uint64_t tr = rank_of_vec(t, p);
      for_each_vec(n, p, [&](const Vec& g) {
        Vec expect = vec_add(p, g, a.multiply(g, bt));
        CHECK(d.conjugation[tr][rank_of_vec(g, p)] == rank_of_vec(expect, p));
        return true;
      });
      return true;
    });
  }

  SECTION("evaluation element is b^{-1} of the negation and kills alpha(g)") {
    for_each_vec(n, p, [&](const Vec& g) {
      Vec gamma = chain::b_inverse(n, p, vec_neg(p, g));
      CHECK(d.evaluation[rank_of_vec(g, p)] == rank_of_vec(gamma, p));
      CHECK(chain::alpha_perm(n, p, g)[rank_of_vec(gamma, p)] == 0);
      return true;
    });
  }

  SECTION("argument validation") {
    CHECK_THROWS_AS(chain_descent_datum(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(chain_descent_datum(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(chain_descent_datum(4, 4), std::invalid_argument);
  }
}

TEST_CASE("the two routes agree on the two-dimensional chain", "[descent]") {
  // For n = 2 the chain algebra has all triple products zero, so both
  // descent routes apply.  Conjugation by t in exponential coordinates is
  // g + g*b(t) = g - g*(-b(t)), which is the cube-zero row of -b(t).
  for (std::uint32_t p : {5u, 7u}) {
    DescentDatum via_chain = chain_descent_datum(2, p);
    DescentDatum via_cube = descent_datum(chain_algebra(2, p));
    CHECK(via_cube.family == Family::CubeZero);
    for_each_vec(2, p, [&](const Vec& t) {
      Vec z = vec_neg(p, chain::b_map(2, p, t));
      CHECK(via_chain.conjugation[rank_of_vec(t, p)] ==
            via_cube.conjugation[rank_of_vec(z, p)]);
      return true;
    });
  }
}
