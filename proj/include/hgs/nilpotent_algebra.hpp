// nilpotent_algebra.hpp -- finite-dimensional commutative nilpotent
// F_p-algebras given by a dense structure tensor, the circle group they
// induce (x o y = x + y + xy), and the two families used throughout:
// rank-one-square algebras built from a symmetric form, and chain algebras
// of truncated polynomials.
#pragma once

#include <optional>
#include <random>

#include "hgs/matrix.hpp"

namespace hgs {

struct ValidationReport {
  bool commutative = true;
  bool associative = true;
  bool nilpotent = true;
  // first violating basis pair / triple when an axiom fails (else -1s)
  std::array<int, 2> noncommutative_pair{-1, -1};
  std::array<int, 3> nonassociative_triple{-1, -1, -1};
  // least m with A^m = 0; 0 when the algebra is not nilpotent
  int nilpotency_index = 0;
  bool ok() const { return commutative && associative && nilpotent; }
};

// Commutative nilpotent algebra A of dimension n over F_p.  The structure
// tensor stores e_i e_j = sum_k c[i][j][k] e_k densely as
// tensor[(i*n + j)*n + k].  Construction checks only the shape; axioms are
// the job of validate().
class NilpotentAlgebra {
 public:
  NilpotentAlgebra(std::uint32_t p, int n, std::vector<std::uint32_t> tensor)
      : p_(p), n_(n), c_(std::move(tensor)) {
    validate_modulus(p_);
    if (n_ < 1) throw std::invalid_argument("NilpotentAlgebra: need n >= 1");
    std::size_t want = static_cast<std::size_t>(n_) * n_ * n_;
    if (c_.size() != want)
      throw std::invalid_argument("NilpotentAlgebra: tensor size mismatch");
    for (std::uint32_t v : c_)
      if (v >= p_)
        throw std::invalid_argument(
            "NilpotentAlgebra: tensor entry not a canonical residue");
  }

  std::uint32_t p() const { return p_; }
  int dim() const { return n_; }
  const std::vector<std::uint32_t>& tensor() const { return c_; }

  // coefficient of e_k in e_i e_j
  std::uint32_t structure(int i, int j, int k) const {
    return c_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
  }

  Vec basis_product(int i, int j) const {
    Vec v(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k) v[static_cast<std::size_t>(k)] = structure(i, j, k);
    return v;
  }

  Vec multiply(const Vec& x, const Vec& y) const {
    require_element(x);
    require_element(y);
    std::vector<std::uint64_t> acc(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) {
      if (x[static_cast<std::size_t>(i)] == 0) continue;
      for (int j = 0; j < n_; ++j) {
        std::uint64_t f =
            static_cast<std::uint64_t>(x[static_cast<std::size_t>(i)]) *
            y[static_cast<std::size_t>(j)] % p_;
        if (f == 0) continue;
        for (int k = 0; k < n_; ++k)
          acc[static_cast<std::size_t>(k)] += f * structure(i, j, k);
      }
    }
    Vec r(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k)
      r[static_cast<std::size_t>(k)] =
          static_cast<std::uint32_t>(acc[static_cast<std::size_t>(k)] % p_);
    return r;
  }

  ValidationReport validate() const {
    ValidationReport rep;
    for (int i = 0; i < n_ && rep.commutative; ++i)
      for (int j = i + 1; j < n_ && rep.commutative; ++j)
        if (basis_product(i, j) != basis_product(j, i)) {
          rep.commutative = false;
          rep.noncommutative_pair = {i, j};
        }
    for (int i = 0; i < n_ && rep.associative; ++i)
      for (int j = 0; j < n_ && rep.associative; ++j)
        for (int k = 0; k < n_ && rep.associative; ++k) {
          Vec left = multiply(basis_product(i, j), unit_vec(n_, k));
          Vec right = multiply(unit_vec(n_, i), basis_product(j, k));
          if (left != right) {
            rep.nonassociative_triple = {i, j, k};
            rep.associative = false;
            break;
          }
        }
    auto dims = power_dims_unchecked();
    if (dims.back() == 0) {
      rep.nilpotent = true;
      rep.nilpotency_index = static_cast<int>(dims.size());
    } else {
      rep.nilpotent = false;
      rep.nilpotency_index = 0;
    }
    return rep;
  }

  // Dimensions of A, A^2, A^3, ... ending at the first zero power.  The
  // sequence is strictly decreasing for a nilpotent algebra; throws
  // std::domain_error when the chain stalls at a nonzero ideal.
  std::vector<int> power_dims() const {
    auto dims = power_dims_unchecked();
    if (dims.back() != 0)
      throw std::domain_error("power_dims: algebra is not nilpotent");
    return dims;
  }

  // least m with A^m = 0
  int nilpotency_index() const { return static_cast<int>(power_dims().size()); }

  // All triple products of basis vectors vanish.  Computed directly so it
  // can cross-check power_dims.
  bool cube_is_zero() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        Vec ij = basis_product(i, j);
        if (vec_is_zero(ij)) continue;
        for (int k = 0; k < n_; ++k)
          if (!vec_is_zero(multiply(ij, unit_vec(n_, k)))) return false;
      }
    return true;
  }

  // x o y = x + y + xy; the group law of the circle group on A.
  Vec circle_mul(const Vec& x, const Vec& y) const {
    Vec r = multiply(x, y);
    for (int i = 0; i < n_; ++i)
      r[static_cast<std::size_t>(i)] =
          fp_add(p_, r[static_cast<std::size_t>(i)],
                 fp_add(p_, x[static_cast<std::size_t>(i)],
                        y[static_cast<std::size_t>(i)]));
    return r;
  }

  // Circle inverse -x + x^2 - x^3 + ...; the sum stops at x^n since
  // A^(n+1) = 0 for any nilpotent algebra of dimension n.
  Vec circle_inv(const Vec& x) const {
    require_element(x);
    Vec acc(static_cast<std::size_t>(n_), 0);
    Vec power = x;
    for (int k = 1; k <= n_; ++k) {
      for (int i = 0; i < n_; ++i) {
        std::uint32_t& a = acc[static_cast<std::size_t>(i)];
        std::uint32_t t = power[static_cast<std::size_t>(i)];
        a = (k % 2 == 1) ? fp_sub(p_, a, t) : fp_add(p_, a, t);
      }
      if (k < n_) power = multiply(power, x);
    }
    return acc;
  }

  // s-fold circle product of x with itself (s >= 0); square-and-multiply.
  Vec circle_power(const Vec& x, unsigned long long s) const {
    require_element(x);
    Vec acc(static_cast<std::size_t>(n_), 0);  // identity of (A, o)
    Vec base = x;
    while (s) {
      if (s & 1) acc = circle_mul(acc, base);
      base = circle_mul(base, base);
      s >>= 1;
    }
    return acc;
  }

  // Every element satisfies x^(o p) = 0, i.e. (A, o) is elementary abelian.
  // Exhaustive when p^n <= 10^6, otherwise 10^4 seeded random elements.
  bool circle_group_is_elementary_abelian(std::uint64_t seed = 0) const {
    std::uint64_t total = small_pow(p_, static_cast<unsigned>(n_));
    if (total <= 1000000) {
      bool ok = true;
      for_each_vec(n_, p_, [&](const Vec& x) {
        if (!vec_is_zero(circle_power(x, p_))) {
          ok = false;
          return false;
        }
        return true;
      });
      return ok;
    }
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (int trial = 0; trial < 10000; ++trial) {
      Vec x(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i)
        x[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rng() % p_);
      if (!vec_is_zero(circle_power(x, p_))) return false;
    }
    return true;
  }

 private:
  void require_element(const Vec& x) const {
    if (static_cast<int>(x.size()) != n_)
      throw std::invalid_argument("NilpotentAlgebra: element dimension mismatch");
  }

  // Power chain via spans of iterated basis products; stops when the
  // dimension reaches zero or stops strictly decreasing (the latter means
  // "not nilpotent" for an associative algebra).
  std::vector<int> power_dims_unchecked() const {
    std::vector<int> dims{n_};
    RowSpan current(p_, n_);
    for (int i = 0; i < n_; ++i) current.insert(unit_vec(n_, i));
    while (dims.back() > 0) {
      RowSpan next(p_, n_);
      for (const Vec& b : current.basis())
        for (int i = 0; i < n_; ++i) next.insert(multiply(b, unit_vec(n_, i)));
      if (next.dim() >= dims.back()) {  // stalled: not nilpotent
        dims.push_back(next.dim());
        break;
      }
      dims.push_back(next.dim());
      current = next;
    }
    return dims;
  }

  std::uint32_t p_;
  int n_;
  std::vector<std::uint32_t> c_;
};

// The algebra with basis z_1, ..., z_n, z_i z_j = phi_ij z_n, where phi is
// symmetric with zero last row and column (so z_n annihilates and A^2 is
// spanned by z_n).  dim A^2 <= 1 and A^3 = 0 for every such phi.
inline NilpotentAlgebra rank1_algebra(const FpMatrix& phi) {
  int n = phi.rows();
  if (phi.cols() != n || n < 1)
    throw std::invalid_argument("rank1_algebra: phi must be square, n >= 1");
  if (!phi.is_symmetric())
    throw std::invalid_argument("rank1_algebra: phi must be symmetric");
  for (int i = 0; i < n; ++i)
    if (phi.at(n - 1, i) != 0 || phi.at(i, n - 1) != 0)
      throw std::invalid_argument(
          "rank1_algebra: last row and column of phi must vanish");
  std::vector<std::uint32_t> c(
      static_cast<std::size_t>(n) * n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      c[(static_cast<std::size_t>(i) * n + j) * n + (n - 1)] = phi.at(i, j);
  return NilpotentAlgebra(phi.p(), n, std::move(c));
}

// Extracts phi back from a rank-one-shaped tensor: all products must lie
// on the last basis axis and the last basis vector must annihilate.
// Returns nothing when the tensor is not of that shape.
inline std::optional<FpMatrix> rank1_form_of(const NilpotentAlgebra& a) {
  int n = a.dim();
  FpMatrix phi(a.p(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k + 1 < n; ++k)
        if (a.structure(i, j, k) != 0) return std::nullopt;
      phi.entry(i, j) = a.structure(i, j, n - 1);
    }
  if (!phi.is_symmetric()) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (phi.at(n - 1, i) != 0 || phi.at(i, n - 1) != 0) return std::nullopt;
  return phi;
}

// Truncated polynomial ("chain") algebra: basis z, z^2, ..., z^n with
// z^(n+1) = 0.  Basis index i (0-based) stands for z^(i+1).  The tensor is
// valid for every odd prime p; the chain-module machinery on top of it
// additionally needs p > n.
inline NilpotentAlgebra chain_algebra(int n, std::uint32_t p) {
  if (n < 1) throw std::invalid_argument("chain_algebra: need n >= 1");
  std::vector<std::uint32_t> c(static_cast<std::size_t>(n) * n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = i + j + 1;  // z^(i+1) z^(j+1) = z^(i+j+2)
      if (k < n) c[(static_cast<std::size_t>(i) * n + j) * n + k] = 1;
    }
  return NilpotentAlgebra(p, n, std::move(c));
}

// The zero-multiplication algebra of dimension n.
inline NilpotentAlgebra zero_algebra(int n, std::uint32_t p) {
  if (n < 1) throw std::invalid_argument("zero_algebra: need n >= 1");
  return NilpotentAlgebra(
      p, n, std::vector<std::uint32_t>(static_cast<std::size_t>(n) * n * n, 0));
}

}  // namespace hgs
