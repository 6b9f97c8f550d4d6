// group_orders.hpp -- closed-form orders of the matrix groups the counting
// formulas divide by: general linear groups and the isometry groups of
// nondegenerate diagonal quadratic forms over F_p.
#pragma once

#include "hgs/fp.hpp"

namespace hgs {

// Classes of the symmetric forms behind rank-one nilpotent algebras, after
// congruence reduction to diag(1,...,1,s,0,...,0) with k active entries:
//   Zero      -- k = 0 (zero form)
//   Odd       -- k odd (normal form has s = 1, possibly after a global
//                nonsquare rescale)
//   EvenPlus  -- k even, split (hyperbolic) type: disc = (-1)^(k/2) mod
//                squares
//   EvenMinus -- k even, non-split type
// For even k the concrete tail s realizing each type depends on p; see
// even_type_of_tail / tail_for_even_type.
enum class QFormCase { Zero, Odd, EvenPlus, EvenMinus };

inline const char* to_string(QFormCase c) {
  switch (c) {
    case QFormCase::Zero: return "zero";
    case QFormCase::Odd: return "odd";
    case QFormCase::EvenPlus: return "even-plus";
    case QFormCase::EvenMinus: return "even-minus";
  }
  return "?";
}

namespace detail {

inline unsigned long long mul_checked(unsigned long long a,
                                      unsigned long long b) {
  unsigned long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("group order exceeds 64 bits");
  return r;
}

inline unsigned long long pow_checked(unsigned long long b, unsigned e) {
  unsigned long long r = 1;
  while (e--) r = mul_checked(r, b);
  return r;
}

}  // namespace detail

// |GL_n(F_p)| = prod_{i=0}^{n-1} (p^n - p^i); the empty product at n = 0
// gives 1.  Throws std::overflow_error past 64 bits.
inline unsigned long long gl_order(int n, std::uint32_t p) {
  if (n < 0) throw std::invalid_argument("gl_order: negative dimension");
  validate_modulus(p);
  unsigned long long pn = detail::pow_checked(p, static_cast<unsigned>(n));
  unsigned long long r = 1, pi = 1;
  for (int i = 0; i < n; ++i) {
    r = detail::mul_checked(r, pn - pi);
    pi = detail::mul_checked(pi, p);
  }
  return r;
}

// Orders of the full isometry groups of diag(1,...,1) (k odd) and of the
// two even-k types split by discriminant square class:
//   k = 2m+1:        2 p^(m^2)     prod_{i=1}^{m}   (p^{2i} - 1)
//   k = 2m, plus:    2 p^(m(m-1)) (p^m - 1) prod_{i=1}^{m-1} (p^{2i} - 1)
//   k = 2m, minus:   2 p^(m(m-1)) (p^m + 1) prod_{i=1}^{m-1} (p^{2i} - 1)
// Small cases: |GO_1| = 2, |GO_2^+| = 2(p-1), |GO_2^-| = 2(p+1),
// |GO_3| = 2p(p^2-1).  As polynomials in p each order has degree
// (k^2 - k)/2.  Verified against direct isometry enumeration in the tests.
inline unsigned long long go_order(int k, std::uint32_t p, QFormCase c) {
  validate_modulus(p);
  if (k < 1) throw std::invalid_argument("go_order: need k >= 1");
  using detail::mul_checked;
  using detail::pow_checked;
  if (c == QFormCase::Odd) {
    if (k % 2 == 0)
      throw std::invalid_argument("go_order: odd case needs odd k");
    unsigned m = static_cast<unsigned>(k / 2);
    unsigned long long r = mul_checked(2, pow_checked(p, m * m));
    for (unsigned i = 1; i <= m; ++i)
      r = mul_checked(r, pow_checked(p, 2 * i) - 1);
    return r;
  }
  if (c == QFormCase::EvenPlus || c == QFormCase::EvenMinus) {
    if (k % 2 != 0)
      throw std::invalid_argument("go_order: even case needs even k");
    unsigned m = static_cast<unsigned>(k / 2);
    unsigned long long pm = pow_checked(p, m);
    unsigned long long mid = (c == QFormCase::EvenPlus) ? pm - 1 : pm + 1;
    unsigned long long r = mul_checked(2, pow_checked(p, m * (m - 1)));
    r = mul_checked(r, mid);
    for (unsigned i = 1; i + 1 <= m; ++i)
      r = mul_checked(r, pow_checked(p, 2 * i) - 1);
    return r;
  }
  throw std::invalid_argument("go_order: zero form has no isometry order here");
}

// Degree of go_order(k, p, .) as a polynomial in p, from the factor
// structure above; equals (k^2 - k)/2 for every parity.
inline int go_order_degree(int k) {
  if (k < 1) throw std::invalid_argument("go_order_degree: need k >= 1");
  int m = k / 2;
  if (k % 2 == 1) return m * m + m * (m + 1);
  return m * (m - 1) + m + m * (m - 1);
}

// Which even type the concrete form diag(1, ..., 1, s) (k = 2m entries)
// realizes.  The split ("plus") type is characterized by discriminant
// (-1)^m mod squares, and disc = s here, so plus holds iff s and (-1)^m
// share a square class.  Note the consequence: for p = 3 (mod 4) and m odd
// the all-ones form is of minus type -- e.g. the isometries of x^2 + y^2
// over F_3 number 8 = 2(p+1), not 2(p-1).
inline QFormCase even_type_of_tail(int k, std::uint32_t p, std::uint32_t s) {
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("even_type_of_tail: need even k >= 2");
  Fp F(p);
  int m = k / 2;
  bool minus_one_pow_square = (m % 2 == 0) || F.is_square(p - 1);
  return (F.is_square(s) == minus_one_pow_square) ? QFormCase::EvenPlus
                                                  : QFormCase::EvenMinus;
}

// Inverse of the above: the canonical tail value s in {1, least non-square}
// whose form diag(1, ..., 1, s) is of the requested even type.
inline std::uint32_t tail_for_even_type(int k, std::uint32_t p, QFormCase c) {
  if (c != QFormCase::EvenPlus && c != QFormCase::EvenMinus)
    throw std::invalid_argument("tail_for_even_type: need an even type");
  std::uint32_t ns = canonical_nonsquare(p);
  return even_type_of_tail(k, p, 1) == c ? 1 : ns;
}

}  // namespace hgs
