// affine.hpp -- affine permutations of F_p^n and the regular subgroup a
// commutative nilpotent algebra induces on them: x acts as
// w -> (I + L_x) w + x, where L_x is left multiplication by x.  Includes
// canonical serialization of subgroups so conjugates can be compared as
// strings, and the translation-normalizer test that characterizes cube-zero
// algebras.
#pragma once

#include <algorithm>
#include <string>

#include "hgs/nilpotent_algebra.hpp"

namespace hgs {

// The invertible affine map x -> Bx + v.
struct AffineMap {
  FpMatrix linear;
  Vec translation;

  std::uint32_t p() const { return linear.p(); }
  int dim() const { return linear.rows(); }

  Vec apply(const Vec& x) const {
    return vec_add(p(), linear.apply(x), translation);
  }

  // this after other: x -> B1 (B2 x + v2) + v1
  AffineMap compose(const AffineMap& other) const {
    return AffineMap{linear * other.linear,
                     vec_add(p(), linear.apply(other.translation), translation)};
  }

  AffineMap inverse() const {
    FpMatrix binv = linear.inverse();
    return AffineMap{binv, vec_neg(p(), binv.apply(translation))};
  }

  bool operator==(const AffineMap& o) const {
    return linear == o.linear && translation == o.translation;
  }
  bool operator!=(const AffineMap& o) const { return !(*this == o); }
};

inline AffineMap identity_affine(std::uint32_t p, int n) {
  return AffineMap{FpMatrix::identity(p, n), Vec(static_cast<std::size_t>(n), 0)};
}

// Pure translation w -> w + y; these maps form the image of the left
// regular representation of (F_p^n, +).
inline AffineMap lambda_map(std::uint32_t p, const Vec& y) {
  return AffineMap{FpMatrix::identity(p, static_cast<int>(y.size())), y};
}

// Matrix of left multiplication by x: column j is x * e_j.
inline FpMatrix left_mul_matrix(const NilpotentAlgebra& a, const Vec& x) {
  int n = a.dim();
  FpMatrix m(a.p(), n, n);
  for (int j = 0; j < n; ++j) {
    Vec col = a.multiply(x, unit_vec(n, j));
    for (int i = 0; i < n; ++i)
      m.entry(i, j) = col[static_cast<std::size_t>(i)];
  }
  return m;
}

// tau(x) = (I + L_x, x).  For a nilpotent algebra L_x is nilpotent, so
// I + L_x is always invertible; the check guards against bad tensors.
inline AffineMap tau(const NilpotentAlgebra& a, const Vec& x) {
  int n = a.dim();
  FpMatrix b = left_mul_matrix(a, x);
  for (int i = 0; i < n; ++i)
    b.entry(i, i) = fp_add(a.p(), b.at(i, i), 1);
  if (!b.is_invertible())
    throw std::domain_error("tau: I + L_x is not invertible");
  return AffineMap{std::move(b), x};
}

// Fixed-width little-endian serialization of one map: linear part row-major,
// then the translation.  One byte per entry when p < 256, else two.
inline void serialize_affine_map(const AffineMap& m, std::string& out) {
  bool wide = m.p() >= 256;
  auto put = [&](std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    if (wide) out.push_back(static_cast<char>((v >> 8) & 0xff));
  };
  int n = m.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) put(m.linear.at(i, j));
  for (int i = 0; i < n; ++i) put(m.translation[static_cast<std::size_t>(i)]);
}

// Canonical fingerprint of a set of affine maps: serialize each, sort, and
// concatenate.  Two sets are equal iff their keys are equal.
inline std::string canonical_key_of_maps(const std::vector<AffineMap>& maps) {
  std::vector<std::string> parts;
  parts.reserve(maps.size());
  for (const AffineMap& m : maps) {
    std::string s;
    serialize_affine_map(m, s);
    parts.push_back(std::move(s));
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  if (!parts.empty()) key.reserve(parts.size() * parts[0].size());
  for (const std::string& s : parts) key += s;
  return key;
}

// The subgroup T = { tau(x) : x in A } of the affine group.  Construction
// verifies that tau is a group isomorphism from (A, o) onto T and that T is
// regular: tau(0) = id and x -> tau(x)(0) = x hits every point exactly once.
// The homomorphism law tau(x) tau(y) = tau(x o y) is checked on all pairs
// when p^n <= pair_budget, otherwise on seeded random pairs.
class RegularSubgroup {
 public:
  explicit RegularSubgroup(NilpotentAlgebra algebra,
                           std::uint64_t pair_budget = 2048)
      : a_(std::move(algebra)) {
    int n = a_.dim();
    std::uint32_t p = a_.p();
    size_ = small_pow(p, static_cast<unsigned>(n));
    if (size_ > 200000)
      throw std::invalid_argument(
          "regular subgroup: p^n too large to enumerate");
    table_.reserve(size_);
    Vec zero(static_cast<std::size_t>(n), 0);
    for (std::uint64_t r = 0; r < size_; ++r) {
      Vec x = vec_of_rank(r, n, p);
      AffineMap m = tau(a_, x);
      if (m.apply(zero) != x)
        throw std::domain_error("regular subgroup: tau(x)(0) != x");
      table_.push_back(std::move(m));
    }
    if (table_[0] != identity_affine(p, n))
      throw std::domain_error("regular subgroup: tau(0) is not the identity");
    verify_closure(pair_budget);
  }

  std::uint32_t p() const { return a_.p(); }
  int dim() const { return a_.dim(); }
  std::uint64_t size() const { return size_; }
  const NilpotentAlgebra& algebra() const { return a_; }
  const AffineMap& element(std::uint64_t rank) const { return table_.at(rank); }
  const std::vector<AffineMap>& elements() const { return table_; }

  // Membership by translation lookup: a regular subgroup holds exactly one
  // map per translation vector.
  bool contains(const AffineMap& m) const {
    if (m.p() != p() || m.dim() != dim()) return false;
    return table_[rank_of_vec(m.translation, p())] == m;
  }

  const std::string& canonical_key() const {
    if (key_.empty()) key_ = canonical_key_of_maps(table_);
    return key_;
  }

  // Key of the conjugate set { P tau(x) P^{-1} } without rebuilding a
  // subgroup; pinv must be the inverse of pmat.
  std::string canonical_key_conjugated(const FpMatrix& pmat,
                                       const FpMatrix& pinv) const {
    std::vector<std::string> parts;
    parts.reserve(table_.size());
    for (const AffineMap& m : table_) {
      AffineMap c{pmat * m.linear * pinv, pmat.apply(m.translation)};
      std::string s;
      serialize_affine_map(c, s);
      parts.push_back(std::move(s));
    }
    std::sort(parts.begin(), parts.end());
    std::string key;
    key.reserve(parts.size() * parts[0].size());
    for (const std::string& s : parts) key += s;
    return key;
  }

  // Conjugate subgroup P T P^{-1}, realized as the subgroup of the
  // transported algebra a *' b = P((P^{-1} a)(P^{-1} b)).  Verifies
  // map-by-map that the transported tau table literally equals
  // { P tau(x) P^{-1} } (as the element at rank of Px).
  RegularSubgroup conjugated(const FpMatrix& pmat) const {
    int n = a_.dim();
    std::uint32_t p = a_.p();
    if (pmat.p() != p || pmat.rows() != n || pmat.cols() != n)
      throw std::invalid_argument("conjugated: matrix shape mismatch");
    FpMatrix pinv = pmat.inverse();
    std::vector<std::uint32_t> c(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Vec prod = pmat.apply(
            a_.multiply(pinv.apply(unit_vec(n, i)), pinv.apply(unit_vec(n, j))));
        for (int k = 0; k < n; ++k)
          c[(static_cast<std::size_t>(i) * n + j) * n + k] =
              prod[static_cast<std::size_t>(k)];
      }
    RegularSubgroup result(NilpotentAlgebra(p, n, std::move(c)));
    for (std::uint64_t r = 0; r < size_; ++r) {
      const AffineMap& m = table_[r];
      AffineMap lit{pmat * m.linear * pinv, pmat.apply(m.translation)};
      if (result.element(rank_of_vec(lit.translation, p)) != lit)
        throw std::domain_error(
            "conjugated: transported algebra disagrees with literal conjugation");
    }
    return result;
  }

  // Whether every translation lambda(y) normalizes T, i.e.
  // lambda(y) tau(x) lambda(y)^{-1} lies in T for all x, y.  This holds
  // exactly when all triple products in the algebra vanish.  Exhaustive when
  // p^n <= pair_budget, else seeded random pairs.
  bool normalized_by_translations(std::uint64_t pair_budget = 2048,
                                  std::uint64_t seed = 0) const {
    int n = a_.dim();
    std::uint32_t p = a_.p();
    auto check_pair = [&](const Vec& y, const AffineMap& t) {
      AffineMap lam = lambda_map(p, y);
      return contains(lam.compose(t).compose(lam.inverse()));
    };
    if (size_ <= pair_budget) {
      bool ok = true;
      for_each_vec(n, p, [&](const Vec& y) {
        for (const AffineMap& t : table_)
          if (!check_pair(y, t)) {
            ok = false;
            return false;
          }
        return true;
      });
      return ok;
    }
    std::mt19937_64 rng(seed ^ 0x5bf03635f0a5b01dull);
    for (int trial = 0; trial < 4096; ++trial) {
      Vec y(static_cast<std::size_t>(n));
      for (auto& e : y) e = static_cast<std::uint32_t>(rng() % p);
      if (!check_pair(y, table_[rng() % size_])) return false;
    }
    return true;
  }

 private:
  void verify_closure(std::uint64_t pair_budget) const {
    std::uint32_t p = a_.p();
    auto check = [&](std::uint64_t r1, std::uint64_t r2) {
      const AffineMap& m1 = table_[r1];
      const AffineMap& m2 = table_[r2];
      Vec prod = a_.circle_mul(m1.translation, m2.translation);
      return m1.compose(m2) == table_[rank_of_vec(prod, p)];
    };
    if (size_ <= pair_budget) {
      for (std::uint64_t r1 = 0; r1 < size_; ++r1)
        for (std::uint64_t r2 = 0; r2 < size_; ++r2)
          if (!check(r1, r2))
            throw std::domain_error(
                "regular subgroup: tau(x) tau(y) != tau(x o y)");
    } else {
      std::mt19937_64 rng(0x8d2e6e0b5ab1c2f7ull);
      for (int trial = 0; trial < 4096; ++trial)
        if (!check(rng() % size_, rng() % size_))
          throw std::domain_error(
              "regular subgroup: tau(x) tau(y) != tau(x o y)");
    }
  }

  NilpotentAlgebra a_;
  std::uint64_t size_;
  std::vector<AffineMap> table_;
  mutable std::string key_;
};

}  // namespace hgs
