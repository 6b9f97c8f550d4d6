// chain.hpp -- the truncated-polynomial ("chain") algebra in exponential
// coordinates.  The map b(r) = prod_i (1+z^i)^{r_i} - 1 identifies the
// additive group F_p^n with the circle group of the chain algebra when
// p > n; its inverse comes from the truncated logarithm.  From b we build
// the permutation family alpha(g): x -> b^{-1}(g + b(x)), a regular
// subgroup of Perm(F_p^n) normalized by all translations, along with
// exhaustive verification of those properties, closed forms for n = 3, and
// the stabilizer comparison against the brute-force sweep.
#pragma once

#include <algorithm>

#include "hgs/oracle.hpp"

namespace hgs::chain {

// Polynomial in F_p[z]/(z^(n+1)); c[i] is the coefficient of z^i.
struct TruncatedPoly {
  std::uint32_t p;
  std::vector<std::uint32_t> c;

  int bound() const { return static_cast<int>(c.size()) - 1; }
  bool operator==(const TruncatedPoly& o) const { return p == o.p && c == o.c; }
};

inline TruncatedPoly zero_poly(std::uint32_t p, int n) {
  validate_modulus(p);
  if (n < 1) throw std::invalid_argument("zero_poly: need n >= 1");
  return {p, std::vector<std::uint32_t>(static_cast<std::size_t>(n) + 1, 0)};
}

// x = (x_1, ..., x_n) as the algebra element x_1 z + ... + x_n z^n
inline TruncatedPoly poly_from_elem(std::uint32_t p, const Vec& x) {
  TruncatedPoly a = zero_poly(p, static_cast<int>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= p)
      throw std::invalid_argument("poly_from_elem: entry not a canonical residue");
    a.c[i + 1] = x[i];
  }
  return a;
}

// inverse of poly_from_elem; the constant term must vanish
inline Vec elem_from_poly(const TruncatedPoly& a) {
  if (a.c[0] != 0)
    throw std::invalid_argument("elem_from_poly: nonzero constant term");
  return Vec(a.c.begin() + 1, a.c.end());
}

inline TruncatedPoly mul(const TruncatedPoly& a, const TruncatedPoly& b) {
  if (a.p != b.p || a.c.size() != b.c.size())
    throw std::invalid_argument("truncated mul: shape mismatch");
  TruncatedPoly r = zero_poly(a.p, a.bound());
  int n = a.bound();
  for (int i = 0; i <= n; ++i) {
    if (a.c[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      std::uint32_t& cell = r.c[static_cast<std::size_t>(i + j)];
      cell = static_cast<std::uint32_t>(
          (cell + static_cast<std::uint64_t>(a.c[static_cast<std::size_t>(i)]) *
                      b.c[static_cast<std::size_t>(j)]) %
          a.p);
    }
  }
  return r;
}

inline TruncatedPoly pow_trunc(const TruncatedPoly& base,
                               unsigned long long e) {
  TruncatedPoly acc = zero_poly(base.p, base.bound());
  acc.c[0] = 1;
  TruncatedPoly b = base;
  while (e) {
    if (e & 1) acc = mul(acc, b);
    b = mul(b, b);
    e >>= 1;
  }
  return acc;
}

// log(1 + w) = sum_{i=1}^{n} (-1)^(i+1) w^i / i for u = 1 + w a principal
// unit.  The divisions require p > n.
inline TruncatedPoly log_trunc(const TruncatedPoly& u) {
  int n = u.bound();
  std::uint32_t p = u.p;
  if (u.c[0] != 1)
    throw std::invalid_argument("log_trunc: expects a principal unit (constant term 1)");
  if (p <= static_cast<std::uint32_t>(n))
    throw std::invalid_argument("log_trunc: requires p > n");
  TruncatedPoly w = u;
  w.c[0] = 0;
  TruncatedPoly acc = zero_poly(p, n);
  TruncatedPoly wi = w;
  for (int i = 1; i <= n; ++i) {
    std::uint32_t f = fp_inv(p, static_cast<std::uint32_t>(i % p));
    if (i % 2 == 0) f = fp_neg(p, f);
    for (int j = 0; j <= n; ++j)
      acc.c[static_cast<std::size_t>(j)] =
          fp_add(p, acc.c[static_cast<std::size_t>(j)],
                 fp_mul(p, f, wi.c[static_cast<std::size_t>(j)]));
    if (i < n) wi = mul(wi, w);
  }
  return acc;
}

// b(r) = (1+z)^(r_1) (1+z^2)^(r_2) ... (1+z^n)^(r_n) - 1, as the
// coefficient vector of z^1..z^n.  An isomorphism from (F_p^n, +) onto the
// circle group of the chain algebra when p > n.
inline Vec b_map(int n, std::uint32_t p, const Vec& r) {
  validate_modulus(p);
  if (static_cast<int>(r.size()) != n)
    throw std::invalid_argument("b_map: dimension mismatch");
  if (p <= static_cast<std::uint32_t>(n))
    throw std::invalid_argument("b_map: requires p > n");
  TruncatedPoly prod = zero_poly(p, n);
  prod.c[0] = 1;
  for (int i = 1; i <= n; ++i) {
    std::uint32_t ri = r[static_cast<std::size_t>(i - 1)];
    if (ri >= p)
      throw std::invalid_argument("b_map: entry not a canonical residue");
    if (ri == 0) continue;
    TruncatedPoly unit = zero_poly(p, n);
    unit.c[0] = 1;
    unit.c[static_cast<std::size_t>(i)] = 1;
    prod = mul(prod, pow_trunc(unit, ri));
  }
  prod.c[0] = 0;
  return elem_from_poly(prod);
}

// The unique r with b(r) = s.  Applying log turns the defining product into
// the linear system sum_i r_i log(1+z^i) = log(1+s); the matrix of
// log(1+z^i) columns is unitriangular (column i starts at z^i with
// coefficient 1), so a forward substitution solves it.  The result is
// round-trip verified.
inline Vec b_inverse(int n, std::uint32_t p, const Vec& s) {
  validate_modulus(p);
  if (static_cast<int>(s.size()) != n)
    throw std::invalid_argument("b_inverse: dimension mismatch");
  TruncatedPoly target = poly_from_elem(p, s);
  target.c[0] = 1;
  TruncatedPoly t = log_trunc(target);
  Vec r(static_cast<std::size_t>(n), 0);
  for (int i = 1; i <= n; ++i) {
    std::uint32_t ri = t.c[static_cast<std::size_t>(i)];
    r[static_cast<std::size_t>(i - 1)] = ri;
    if (ri == 0) continue;
    TruncatedPoly unit = zero_poly(p, n);
    unit.c[0] = 1;
    unit.c[static_cast<std::size_t>(i)] = 1;
    TruncatedPoly li = log_trunc(unit);
    for (int j = 0; j <= n; ++j)
      t.c[static_cast<std::size_t>(j)] =
          fp_sub(p, t.c[static_cast<std::size_t>(j)],
                 fp_mul(p, ri, li.c[static_cast<std::size_t>(j)]));
  }
  if (b_map(n, p, r) != s)
    throw std::logic_error("b_inverse: round trip failed");
  return r;
}

namespace detail {

inline std::uint32_t binom2(std::uint32_t p, std::uint32_t x) {
  return fp_mul(p, fp_mul(p, x, fp_sub(p, x, 1)), fp_inv(p, 2));
}

inline std::uint32_t binom3(std::uint32_t p, std::uint32_t x) {
  std::uint32_t num =
      fp_mul(p, fp_mul(p, x, fp_sub(p, x, 1)), fp_sub(p, x, 2));
  return fp_mul(p, num, fp_inv(p, 6 % p));
}

}  // namespace detail

// Closed form of b for n = 3 (needs p > 3):
// (r1, r2 + C(r1,2), r3 + r1 r2 + C(r1,3)).
inline Vec b3_closed(std::uint32_t p, const Vec& r) {
  if (r.size() != 3) throw std::invalid_argument("b3_closed: need dimension 3");
  std::uint32_t r1 = r[0], r2 = r[1], r3 = r[2];
  Vec s(3);
  s[0] = r1;
  s[1] = fp_add(p, r2, detail::binom2(p, r1));
  s[2] = fp_add(p, r3, fp_add(p, fp_mul(p, r1, r2), detail::binom3(p, r1)));
  return s;
}

// Closed form of b^{-1} for n = 3 (needs p > 3):
// (s1, s2 - C(s1,2), s3 - s1 s2 + 2 C(s1+1,3)).
inline Vec b3_inverse_closed(std::uint32_t p, const Vec& s) {
  if (s.size() != 3)
    throw std::invalid_argument("b3_inverse_closed: need dimension 3");
  std::uint32_t s1 = s[0], s2 = s[1], s3 = s[2];
  Vec r(3);
  r[0] = s1;
  r[1] = fp_sub(p, s2, detail::binom2(p, s1));
  std::uint32_t two_binom = fp_mul(p, 2, detail::binom3(p, fp_add(p, s1, 1)));
  r[2] = fp_add(p, fp_sub(p, s3, fp_mul(p, s1, s2)), two_binom);
  return r;
}

// Closed form of alpha(r)(x) for n = 3 (needs p > 3).  The first two
// coordinates are affine in x; the third is
// f = r3 + x3 - r1 r2 - r1 x2 - r2 x1 - r1/3 + r1 x1 / 2 + r1^3/3
//     + r1^2 x1 + r1 x1^2 / 2,
// which is genuinely quadratic in x1.
inline Vec alpha3_closed(std::uint32_t p, const Vec& r, const Vec& x) {
  if (r.size() != 3 || x.size() != 3)
    throw std::invalid_argument("alpha3_closed: need dimension 3");
  std::uint32_t r1 = r[0], r2 = r[1], r3 = r[2];
  std::uint32_t x1 = x[0], x2 = x[1], x3 = x[2];
  std::uint32_t half = fp_inv(p, 2);
  std::uint32_t third = fp_inv(p, 3 % p);
  Vec y(3);
  y[0] = fp_add(p, r1, x1);
  // r2 + x2 - r1^2/2 - r1 x1 + r1/2
  std::uint32_t c2 = fp_add(p, r2, x2);
  c2 = fp_sub(p, c2, fp_mul(p, fp_mul(p, r1, r1), half));
  c2 = fp_sub(p, c2, fp_mul(p, r1, x1));
  c2 = fp_add(p, c2, fp_mul(p, r1, half));
  y[1] = c2;
  std::uint32_t f = fp_add(p, r3, x3);
  f = fp_sub(p, f, fp_mul(p, r1, r2));
  f = fp_sub(p, f, fp_mul(p, r1, x2));
  f = fp_sub(p, f, fp_mul(p, r2, x1));
  f = fp_sub(p, f, fp_mul(p, r1, third));
  f = fp_add(p, f, fp_mul(p, fp_mul(p, r1, x1), half));
  f = fp_add(p, f, fp_mul(p, fp_mul(p, fp_mul(p, r1, r1), r1), third));
  f = fp_add(p, f, fp_mul(p, fp_mul(p, r1, r1), x1));
  f = fp_add(p, f, fp_mul(p, fp_mul(p, fp_mul(p, r1, x1), x1), half));
  y[2] = f;
  return y;
}

// Permutation of F_p^n in rank indexing; table[rank(x)] = rank(image of x).
using PermTable = std::vector<std::uint64_t>;

// alpha(g): x -> b^{-1}(g + b(x)), the translation by g of exponential
// coordinates pulled back through b.
inline PermTable alpha_perm(int n, std::uint32_t p, const Vec& g) {
  if (static_cast<int>(g.size()) != n)
    throw std::invalid_argument("alpha_perm: dimension mismatch");
  std::uint64_t size = small_pow(p, static_cast<unsigned>(n));
  PermTable table(size);
  for_each_vec(n, p, [&](const Vec& x) {
    Vec image = b_inverse(n, p, vec_add(p, g, b_map(n, p, x)));
    table[rank_of_vec(x, p)] = rank_of_vec(image, p);
    return true;
  });
  return table;
}

struct AlphaReport {
  bool b_bijective = false;     // b hits every vector exactly once
  bool b_homomorphism = false;  // b(r + r') = b(r) o b(r') in the circle group
  bool distinct = false;        // the p^n permutations are pairwise distinct
  bool regular = false;         // the orbit of 0 meets every point once
  bool group_law = false;       // alpha(g) alpha(h) = alpha(g + h)
  bool normalized = false;      // lambda(t) alpha(g) lambda(t)^{-1}
                                //   = alpha(g + g * b(t))
  bool ok() const {
    return b_bijective && b_homomorphism && distinct && regular && group_law &&
           normalized;
  }
};

// Exhaustive verification of the alpha family.  All pairwise checks are
// complete when p^n <= 350; beyond that the t/h sweeps use a fixed stride
// so the run stays bounded while every g is still covered.
inline AlphaReport alpha_checks(int n, std::uint32_t p) {
  validate_modulus(p);
  if (n < 1) throw std::invalid_argument("alpha_checks: need n >= 1");
  if (p <= static_cast<std::uint32_t>(n))
    throw std::invalid_argument("alpha_checks: requires p > n");
  std::uint64_t size = small_pow(p, static_cast<unsigned>(n));
  if (size > 2048)
    throw std::invalid_argument("alpha_checks: p^n too large for the exhaustive suite");
  AlphaReport rep;
  NilpotentAlgebra a = chain_algebra(n, p);

  // b tables both ways
  std::vector<Vec> bvec(size);
  std::vector<std::uint64_t> binv_rank(size, size);
  bool bijective = true;
  for_each_vec(n, p, [&](const Vec& r) {
    Vec s = b_map(n, p, r);
    std::uint64_t sr = rank_of_vec(s, p);
    bvec[rank_of_vec(r, p)] = s;
    if (binv_rank[sr] != size)
      bijective = false;
    else
      binv_rank[sr] = rank_of_vec(r, p);
    return true;
  });
  for (std::uint64_t i = 0; i < size; ++i)
    if (binv_rank[i] == size) bijective = false;
  rep.b_bijective = bijective;
  if (!bijective) return rep;

  rep.b_homomorphism = true;
  for (std::uint64_t i = 0; i < size && rep.b_homomorphism; ++i)
    for (std::uint64_t j = 0; j < size; ++j) {
      Vec r = vec_of_rank(i, n, p), rp = vec_of_rank(j, n, p);
      if (b_map(n, p, vec_add(p, r, rp)) !=
          a.circle_mul(bvec[i], bvec[j])) {
        rep.b_homomorphism = false;
        break;
      }
    }

  // all alpha tables, built from the precomputed b tables
  std::vector<PermTable> alpha(size);
  for (std::uint64_t gr = 0; gr < size; ++gr) {
    Vec g = vec_of_rank(gr, n, p);
    PermTable table(size);
    for (std::uint64_t xr = 0; xr < size; ++xr)
      table[xr] = binv_rank[rank_of_vec(vec_add(p, g, bvec[xr]), p)];
    alpha[gr] = std::move(table);
  }

  {
    auto sorted = alpha;
    std::sort(sorted.begin(), sorted.end());
    rep.distinct =
        std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }
  {
    std::vector<bool> hit(size, false);
    bool good = true;
    for (std::uint64_t gr = 0; gr < size; ++gr) {
      std::uint64_t image = alpha[gr][0];
      if (hit[image]) good = false;
      hit[image] = true;
    }
    for (std::uint64_t i = 0; i < size; ++i)
      if (!hit[i]) good = false;
    rep.regular = good;
  }

  std::uint64_t stride = size <= 350 ? 1 : size / 256 + 1;

  rep.group_law = true;
  for (std::uint64_t gr = 0; gr < size && rep.group_law; ++gr)
    for (std::uint64_t hr = 0; hr < size; hr += stride) {
      Vec sum = vec_add(p, vec_of_rank(gr, n, p), vec_of_rank(hr, n, p));
      const PermTable& expect = alpha[rank_of_vec(sum, p)];
      const PermTable& ag = alpha[gr];
      const PermTable& ah = alpha[hr];
      bool same = true;
      for (std::uint64_t xr = 0; xr < size; ++xr)
        if (ag[ah[xr]] != expect[xr]) {
          same = false;
          break;
        }
      if (!same) {
        rep.group_law = false;
        break;
      }
    }

  rep.normalized = true;
  for (std::uint64_t tr = 0; tr < size && rep.normalized; tr += stride) {
    Vec t = vec_of_rank(tr, n, p);
    // translation by t and its inverse, as rank permutations
    PermTable addt(size), subt(size);
    for (std::uint64_t xr = 0; xr < size; ++xr) {
      Vec x = vec_of_rank(xr, n, p);
      addt[xr] = rank_of_vec(vec_add(p, x, t), p);
      subt[xr] = rank_of_vec(vec_sub(p, x, t), p);
    }
    Vec bt = b_map(n, p, t);
    for (std::uint64_t gr = 0; gr < size; ++gr) {
      Vec g = vec_of_rank(gr, n, p);
      Vec expect_g = vec_add(p, g, a.multiply(g, bt));
      const PermTable& expect = alpha[rank_of_vec(expect_g, p)];
      const PermTable& ag = alpha[gr];
      bool same = true;
      for (std::uint64_t xr = 0; xr < size; ++xr)
        if (addt[ag[subt[xr]]] != expect[xr]) {
          same = false;
          break;
        }
      if (!same) {
        rep.normalized = false;
        break;
      }
    }
  }
  return rep;
}

struct StabilizerComparison {
  std::uint64_t formula;   // p^(n-1) (p-1)
  std::uint64_t measured;  // brute-force GL sweep
  bool agree() const { return formula == measured; }
};

// The GL-conjugation stabilizer of the chain subgroup consists of the
// algebra automorphisms z -> c_1 z + ... + c_n z^n with c_1 != 0, so its
// order is p^(n-1) (p-1).  The measured side conjugates over all of GL_n.
inline StabilizerComparison chain_stabilizer_check(
    int n, std::uint32_t p, const oracle::EnumerationBudget& budget = {}) {
  std::uint64_t formula =
      hgs::detail::mul_checked(hgs::detail::pow_checked(p, static_cast<unsigned>(n - 1)),
                               p - 1);
  RegularSubgroup t(chain_algebra(n, p));
  return {formula, oracle::stabilizer_size(t, budget)};
}

}  // namespace hgs::chain
