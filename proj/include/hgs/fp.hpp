// fp.hpp -- arithmetic in the prime field F_p (p an odd prime), plus the
// small number-theoretic helpers the quadratic-form classification needs:
// square classes, square roots, and two-square decompositions.  Residues
// are always canonical, 0 <= a < p.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hgs {

namespace detail {

inline bool is_odd_prime(std::uint32_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint32_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

inline void validate_modulus(std::uint32_t p) {
  if (p >= (1u << 16))
    throw std::invalid_argument("modulus too large: need p < 2^16, got " +
                                std::to_string(p));
  if (!detail::is_odd_prime(p))
    throw std::invalid_argument("modulus must be an odd prime, got " +
                                std::to_string(p));
}

// Unchecked modular helpers.  Callers guarantee canonical inputs and a
// validated modulus; these are the building blocks for the hot loops.
inline std::uint32_t fp_add(std::uint32_t p, std::uint32_t a, std::uint32_t b) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint32_t fp_sub(std::uint32_t p, std::uint32_t a, std::uint32_t b) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint32_t fp_neg(std::uint32_t p, std::uint32_t a) {
  return a == 0 ? 0 : p - a;
}
inline std::uint32_t fp_mul(std::uint32_t p, std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}
inline std::uint32_t fp_reduce(std::uint32_t p, long long v) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}
inline std::uint32_t fp_pow(std::uint32_t p, std::uint32_t a,
                            unsigned long long e) {
  std::uint32_t r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = fp_mul(p, r, b);
    b = fp_mul(p, b, b);
    e >>= 1;
  }
  return r;
}
inline std::uint32_t fp_inv(std::uint32_t p, std::uint32_t a) {
  if (a % p == 0) throw std::domain_error("fp_inv: inverse of zero");
  return fp_pow(p, a, p - 2);  // Fermat; p is prime
}

// Validated modulus with the same operations as methods.  Construction is
// the API boundary where primality is enforced.
struct Fp {
  std::uint32_t p;

  explicit Fp(std::uint32_t modulus) : p(modulus) { validate_modulus(p); }

  std::uint32_t reduce(long long v) const { return fp_reduce(p, v); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    return fp_add(p, a, b);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return fp_sub(p, a, b);
  }
  std::uint32_t neg(std::uint32_t a) const { return fp_neg(p, a); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return fp_mul(p, a, b);
  }
  std::uint32_t pow(std::uint32_t a, unsigned long long e) const {
    return fp_pow(p, a, e);
  }
  std::uint32_t inv(std::uint32_t a) const { return fp_inv(p, a); }

  // Euler's criterion.  Zero belongs to neither square class.
  bool is_square(std::uint32_t a) const {
    if (a % p == 0) throw std::domain_error("is_square: zero has no square class");
    return pow(a, (p - 1) / 2) == 1;
  }

  // Smallest t >= 1 with t^2 = a (a != 0); throws when a is a non-square.
  std::uint32_t square_root(std::uint32_t a) const {
    a %= p;
    if (a == 0) return 0;
    for (std::uint32_t t = 1; t <= p / 2; ++t)
      if (mul(t, t) == a) return t;
    throw std::domain_error("square_root: not a square");
  }
};

// Least positive non-residue mod p: 3 -> 2, 5 -> 2, 7 -> 3, ...
inline std::uint32_t canonical_nonsquare(std::uint32_t p) {
  Fp F(p);
  for (std::uint32_t a = 2; a < p; ++a)
    if (!F.is_square(a)) return a;
  throw std::logic_error("canonical_nonsquare: no non-residue found");
}

// Deterministic decomposition q = f^2 + g^2 mod p: smallest f, then
// smallest g.  Every residue is such a sum over an odd prime field.
inline std::pair<std::uint32_t, std::uint32_t> sum_of_two_squares(
    std::uint32_t q, std::uint32_t p) {
  Fp F(p);
  q %= p;
  for (std::uint32_t f = 0; f < p; ++f) {
    std::uint32_t rem = F.sub(q, F.mul(f, f));
    for (std::uint32_t g = 0; g < p; ++g)
      if (F.mul(g, g) == rem) return {f, g};
  }
  throw std::logic_error("sum_of_two_squares: no decomposition found");
}

// ---------------------------------------------------------------------------
// Coordinate vectors over F_p are plain uint32 arrays with canonical
// residues.  Ranks are mixed-radix with coordinate 0 least significant, so
// rank(x) = sum x_i p^i; every table in the library is indexed this way.

using Vec = std::vector<std::uint32_t>;

inline std::uint64_t small_pow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline std::uint64_t rank_of_vec(const Vec& x, std::uint32_t p) {
  std::uint64_t r = 0;
  for (std::size_t i = x.size(); i-- > 0;) r = r * p + x[i];
  return r;
}

inline Vec vec_of_rank(std::uint64_t r, int n, std::uint32_t p) {
  Vec x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(r % p);
    r /= p;
  }
  return x;
}

inline Vec vec_add(std::uint32_t p, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = fp_add(p, a[i], b[i]);
  return r;
}
inline Vec vec_sub(std::uint32_t p, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = fp_sub(p, a[i], b[i]);
  return r;
}
inline Vec vec_neg(std::uint32_t p, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = fp_neg(p, a[i]);
  return r;
}
inline bool vec_is_zero(const Vec& a) {
  for (std::uint32_t v : a)
    if (v != 0) return false;
  return true;
}
inline Vec unit_vec(int n, int i, std::uint32_t value = 1) {
  Vec e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(i)] = value;
  return e;
}

// Odometer over all of F_p^n in rank order; f(const Vec&) may not retain
// the reference.  Returns early if f returns false.
template <class F>
void for_each_vec(int n, std::uint32_t p, F&& f) {
  Vec x(static_cast<std::size_t>(n), 0);
  for (;;) {
    if (!f(static_cast<const Vec&>(x))) return;
    int i = 0;
    while (i < n) {
      if (++x[static_cast<std::size_t>(i)] < p) break;
      x[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == n) return;
  }
}

}  // namespace hgs
