// descent.hpp -- the data needed to transfer a regular subgroup into a
// fixed-ring description over the base field.  For a Galois extension with
// elementary abelian group Gamma = (F_p^n, +), the group algebra of the
// regular subgroup descends exactly when the subgroup is normalized by all
// translations.  The descent datum records, in rank indexing:
//   * how each translation conjugates the subgroup's parametrization
//     (cube-zero family: x -> x - x*t; chain family: g -> g + g*b(t));
//   * which group element evaluates each basis coefficient when the fixed
//     ring acts on the field (the preimage of 0 under the parametrized
//     permutation);
//   * the coefficient constraint cutting out the fixed ring.
// Both constructors recompute every conjugation literally (by composing
// affine maps, respectively permutation tables) and throw if the stored
// formula ever disagrees.
#pragma once

#include <string>

#include "hgs/chain.hpp"

namespace hgs::descent {

enum class Family { CubeZero, Chain };

inline const char* to_string(Family f) {
  return f == Family::CubeZero ? "cube-zero" : "chain";
}

struct DescentDatum {
  std::uint32_t p = 0;
  int n = 0;
  Family family = Family::CubeZero;
  // conjugation[rank(t)][rank(x)] = rank(x') where conjugating the
  // parametrized permutation of x by the translation lambda(t) yields the
  // permutation parametrized by x'
  std::vector<std::vector<std::uint64_t>> conjugation;
  // evaluation[rank(x)] = rank of the Galois-group element gamma with
  // (permutation of x)(gamma) = 0; the coefficient of x acts on the field
  // through that automorphism
  std::vector<std::uint64_t> evaluation;
  // fixed-ring condition on the coefficient family, in the parametrization
  // used by `conjugation`
  std::string coefficient_constraint;

  std::uint64_t size() const { return evaluation.size(); }
};

namespace detail {

inline void require_tabulable(std::uint64_t size) {
  if (size > 2048)
    throw std::invalid_argument("descent datum: p^n too large to tabulate");
}

}  // namespace detail

// Descent datum for tau(A) when A has all triple products zero.  Requires
// cube_is_zero(); otherwise the subgroup is not normalized by the
// translations and no datum exists (the chain family has its own route).
inline DescentDatum descent_datum(const NilpotentAlgebra& a) {
  std::uint32_t p = a.p();
  int n = static_cast<int>(a.dim());
  if (!a.cube_is_zero())
    throw std::invalid_argument(
        "descent_datum: the algebra has a nonzero triple product, so the "
        "subgroup is not normalized by translations; for chain algebras use "
        "chain_descent_datum");
  std::uint64_t size = small_pow(p, static_cast<unsigned>(n));
  detail::require_tabulable(size);

  DescentDatum d;
  d.p = p;
  d.n = n;
  d.family = Family::CubeZero;
  d.coefficient_constraint = "b[x - x*z] = b[x]^z for all z";
  d.conjugation.assign(size, std::vector<std::uint64_t>(size));
  d.evaluation.assign(size, 0);

  for (std::uint64_t tr = 0; tr < size; ++tr) {
    Vec t = vec_of_rank(tr, n, p);
    AffineMap lt = lambda_map(p, t);
    AffineMap lt_inv = lt.inverse();
    for (std::uint64_t xr = 0; xr < size; ++xr) {
      Vec x = vec_of_rank(xr, n, p);
      Vec image = vec_sub(p, x, a.multiply(x, t));
      if (lt.compose(tau(a, x)).compose(lt_inv) != tau(a, image))
        throw std::logic_error(
            "descent_datum: conjugation by a translation did not match "
            "x - x*t");
      d.conjugation[tr][xr] = rank_of_vec(image, p);
    }
  }

  for (std::uint64_t xr = 0; xr < size; ++xr) {
    Vec x = vec_of_rank(xr, n, p);
    // -x + x^2, which is the circle inverse when triple products vanish
    Vec inv = vec_add(p, vec_neg(p, x), a.multiply(x, x));
    if (inv != a.circle_inv(x) || !vec_is_zero(a.circle_mul(x, inv)))
      throw std::logic_error(
          "descent_datum: -x + x^2 is not the circle inverse");
    d.evaluation[xr] = rank_of_vec(inv, p);
  }
  return d;
}

// Descent datum for the chain family in exponential coordinates, where the
// subgroup is alpha(F_p^n) with alpha(g) = b^{-1} (translation by g) b.
// Requires p > n for the b machinery.
inline DescentDatum chain_descent_datum(int n, std::uint32_t p) {
  validate_modulus(p);
  if (n < 1) throw std::invalid_argument("chain_descent_datum: need n >= 1");
  if (p <= static_cast<std::uint32_t>(n))
    throw std::invalid_argument("chain_descent_datum: requires p > n");
  std::uint64_t size = small_pow(p, static_cast<unsigned>(n));
  detail::require_tabulable(size);
  NilpotentAlgebra a = chain_algebra(n, p);

  DescentDatum d;
  d.p = p;
  d.n = n;
  d.family = Family::Chain;
  d.coefficient_constraint = "s[g + g*b(t)] = s[g]^t for all t";
  d.conjugation.assign(size, std::vector<std::uint64_t>(size));
  d.evaluation.assign(size, 0);

  std::vector<chain::PermTable> alpha(size);
  for (std::uint64_t gr = 0; gr < size; ++gr)
    alpha[gr] = chain::alpha_perm(n, p, vec_of_rank(gr, n, p));

  for (std::uint64_t tr = 0; tr < size; ++tr) {
    Vec t = vec_of_rank(tr, n, p);
    Vec bt = chain::b_map(n, p, t);
    chain::PermTable addt(size), subt(size);
    for (std::uint64_t xr = 0; xr < size; ++xr) {
      Vec x = vec_of_rank(xr, n, p);
      addt[xr] = rank_of_vec(vec_add(p, x, t), p);
      subt[xr] = rank_of_vec(vec_sub(p, x, t), p);
    }
    for (std::uint64_t gr = 0; gr < size; ++gr) {
      Vec g = vec_of_rank(gr, n, p);
      Vec image = vec_add(p, g, a.multiply(g, bt));
      std::uint64_t ir = rank_of_vec(image, p);
      const chain::PermTable& expect = alpha[ir];
      const chain::PermTable& ag = alpha[gr];
      for (std::uint64_t xr = 0; xr < size; ++xr)
        if (addt[ag[subt[xr]]] != expect[xr])
          throw std::logic_error(
              "chain_descent_datum: conjugation by a translation did not "
              "match g + g*b(t)");
      d.conjugation[tr][gr] = ir;
    }
  }

  for (std::uint64_t gr = 0; gr < size; ++gr) {
    Vec g = vec_of_rank(gr, n, p);
    // preimage of 0 under alpha(g): g + b(gamma) = 0 forces
    // gamma = b^{-1}(-g), with -g the inverse of g in the additive group
    // that parametrizes the family
    Vec gamma = chain::b_inverse(n, p, vec_neg(p, g));
    if (alpha[gr][rank_of_vec(gamma, p)] != 0)
      throw std::logic_error(
          "chain_descent_datum: evaluation element does not map to 0");
    d.evaluation[gr] = rank_of_vec(gamma, p);
  }
  return d;
}

}  // namespace hgs::descent
