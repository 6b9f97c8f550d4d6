// Tests for the brute-force reference machinery: GL enumeration, orbit and
// stabilizer sweeps, orthogonal group counts, and congruence search.
#include <catch2/catch_amalgamated.hpp>

#include "hgs/oracle.hpp"

using namespace hgs;

namespace {

std::string matrix_bytes(const FpMatrix& m) {
  std::string s;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      s.push_back(static_cast<char>(m.at(i, j)));
  return s;
}

// ground-truth isometry count: scan all p^(k*k) matrices
std::uint64_t isometry_scan(int k, std::uint32_t p, std::uint32_t s) {
  FpMatrix d(p, k, k);
  for (int i = 0; i < k; ++i) d.entry(i, i) = (i == k - 1) ? s : 1;
  std::uint64_t count = 0;
  std::uint64_t total = small_pow(p, static_cast<unsigned>(k * k));
  for (std::uint64_t r = 0; r < total; ++r) {
    FpMatrix u(p, k, k);
    std::uint64_t rest = r;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        u.entry(i, j) = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
    if (u.transposed() * d * u == d) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("gl enumeration count matches the group order") {
  for (auto [n, p] : std::vector<std::pair<int, std::uint32_t>>{
           {1, 5}, {2, 3}, {2, 5}, {3, 3}}) {
    std::uint64_t visited = 0;
    std::uint64_t total = oracle::enumerate_gl(p, n, [&](const FpMatrix& m) {
      REQUIRE(m.is_invertible());
      ++visited;
      return true;
    });
    CHECK(total == gl_order(n, p));
    CHECK(visited == gl_order(n, p));
  }
}

TEST_CASE("both enumeration strategies generate the same set") {
  for (auto [n, p] : std::vector<std::pair<int, std::uint32_t>>{
           {2, 3}, {2, 5}, {3, 3}}) {
    std::vector<std::string> odo, dfs;
    oracle::detail::enumerate_gl_odometer(p, n, 1, 0, [&](const FpMatrix& m) {
      odo.push_back(matrix_bytes(m));
      return true;
    });
    oracle::detail::enumerate_gl_rowspan(p, n, 1, 0, [&](const FpMatrix& m) {
      dfs.push_back(matrix_bytes(m));
      return true;
    });
    CHECK(odo.size() == gl_order(n, p));
    CHECK(dfs.size() == gl_order(n, p));
    std::sort(odo.begin(), odo.end());
    std::sort(dfs.begin(), dfs.end());
    CHECK(odo == dfs);
    // no duplicates in either
    CHECK(std::adjacent_find(odo.begin(), odo.end()) == odo.end());
    CHECK(std::adjacent_find(dfs.begin(), dfs.end()) == dfs.end());
  }
}

TEST_CASE("worker partitions tile the enumeration without overlap") {
  const int workers = 3;
  std::vector<std::string> combined;
  for (int id = 0; id < workers; ++id)
    oracle::enumerate_gl_partition(3, 2, workers, id, [&](const FpMatrix& m) {
      combined.push_back(matrix_bytes(m));
      return true;
    });
  CHECK(combined.size() == gl_order(2, 3));
  std::sort(combined.begin(), combined.end());
  CHECK(std::adjacent_find(combined.begin(), combined.end()) == combined.end());
  CHECK_THROWS_AS(oracle::enumerate_gl_partition(
                      3, 2, 0, 0, [](const FpMatrix&) { return true; }),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::enumerate_gl_partition(
                      3, 2, 2, 2, [](const FpMatrix&) { return true; }),
                  std::invalid_argument);
}

TEST_CASE("enumeration stops early when the callback asks") {
  std::uint64_t calls = 0;
  std::uint64_t seen = oracle::enumerate_gl(5, 2, [&](const FpMatrix&) {
    return ++calls < 5;
  });
  CHECK(calls == 5);
  CHECK(seen == 5);
}

TEST_CASE("orbit of the two-dimensional chain subgroup") {
  for (std::uint32_t p : {3u, 5u}) {
    RegularSubgroup t(chain_algebra(2, p));
    auto res = oracle::orbit_size(t);
    CHECK(res.orbit == static_cast<std::uint64_t>(p) * p - 1);
    CHECK(res.stabilizer == static_cast<std::uint64_t>(p) * (p - 1));
    CHECK(oracle::stabilizer_size(t) == res.stabilizer);
  }
}

TEST_CASE("the translation subgroup is stabilized by everything") {
  RegularSubgroup t(zero_algebra(2, 3));
  auto res = oracle::orbit_size(t);
  CHECK(res.orbit == 1);
  CHECK(res.stabilizer == gl_order(2, 3));
}

TEST_CASE("orbit and stabilizer in dimension three") {
  auto phi = FpMatrix::from_rows(3, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  RegularSubgroup t(rank1_algebra(phi));
  auto res = oracle::orbit_size(t);
  CHECK(res.orbit == 104);
  CHECK(res.stabilizer == 108);
  CHECK(oracle::stabilizer_size(t) == 108);
}

TEST_CASE("worker count does not change orbit or stabilizer results") {
  RegularSubgroup t(chain_algebra(2, 5));
  for (int w : {1, 4}) {
    oracle::EnumerationBudget budget;
    budget.workers = w;
    auto res = oracle::orbit_size(t, budget);
    CHECK(res.orbit == 24);
    CHECK(res.stabilizer == 20);
    CHECK(oracle::stabilizer_size(t, budget) == 20);
  }
}

TEST_CASE("budget limits refuse oversized sweeps") {
  RegularSubgroup t(chain_algebra(2, 5));
  oracle::EnumerationBudget tiny;
  tiny.max_elements = 10;
  CHECK_THROWS_AS(oracle::orbit_size(t, tiny), std::invalid_argument);
  CHECK_THROWS_AS(oracle::stabilizer_size(t, tiny), std::invalid_argument);
}

TEST_CASE("orthogonal counts match the exhaustive scan in rank two") {
  for (std::uint32_t p : {3u, 5u}) {
    for (std::uint32_t s = 1; s < p; ++s)
      CHECK(oracle::orthogonal_count(2, p, s) == isometry_scan(2, p, s));
  }
}

TEST_CASE("orthogonal counts in higher rank") {
  CHECK(oracle::orthogonal_count(1, 7, 1) == 2);
  CHECK(oracle::orthogonal_count(1, 7, 3) == 2);
  // odd rank: both tail classes give the same order
  CHECK(oracle::orthogonal_count(3, 3, 1) == 48);
  CHECK(oracle::orthogonal_count(3, 3, 2) == 48);
  CHECK(oracle::orthogonal_count(3, 5, 1) == 240);
  // even rank: the order depends on the split type of the form
  CHECK(oracle::orthogonal_count(2, 7, 1) ==
        go_order(2, 7, even_type_of_tail(2, 7, 1)));
  CHECK(oracle::orthogonal_count(2, 7, 3) ==
        go_order(2, 7, even_type_of_tail(2, 7, 3)));
  CHECK_THROWS_AS(oracle::orthogonal_count(0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(oracle::orthogonal_count(2, 5, 0), std::invalid_argument);
}

TEST_CASE("congruence search finds witnesses exactly for equivalent forms") {
  auto d11 = FpMatrix::from_rows(3, {{1, 0}, {0, 1}});
  auto d22 = FpMatrix::from_rows(3, {{2, 0}, {0, 2}});
  auto d12 = FpMatrix::from_rows(3, {{1, 0}, {0, 2}});
  // identity fast path
  auto self = oracle::form_equivalence_search(d11, d11);
  REQUIRE(self.has_value());
  CHECK(*self == FpMatrix::identity(3, 2));
  // same discriminant class: equivalent, witness verified
  auto w = oracle::form_equivalence_search(d11, d22);
  REQUIRE(w.has_value());
  CHECK(*w * d11 * w->transposed() == d22);
  // different discriminant class: not congruent
  CHECK(!oracle::form_equivalence_search(d11, d12).has_value());
  CHECK_THROWS_AS(oracle::form_equivalence_search(
                      d11, FpMatrix::from_rows(3, {{1, 0, 0}, {0, 1, 0},
                                                   {0, 0, 1}})),
                  std::invalid_argument);
}
