// form_class.hpp -- classification of the symmetric forms behind
// rank-one-square algebras.  Every symmetric n x n form with vanishing last
// row and column is congruent, up to a global square-class factor, to a
// diagonal normal form diag(1,...,1,s,0,...,0); the class is named by the
// active rank k and, for even k, by the split type of the active block.
// From the class come the conjugation stabilizer order inside GL_n, the
// number of subgroup conjugates, per-dimension count tables, and the
// explicit scaling matrices solving C^T D C = q D.
#pragma once

#include "hgs/affine.hpp"
#include "hgs/group_orders.hpp"
#include "hgs/oracle.hpp"

namespace hgs {

namespace detail {

// Row-and-column operations that keep the congruence invariant
// pacc * phi * pacc^T == b while reshaping b.
inline void congruence_swap(FpMatrix& b, FpMatrix& pacc, int i, int j) {
  if (i == j) return;
  b.swap_rows(i, j);
  for (int r = 0; r < b.rows(); ++r) {
    std::uint32_t t = b.at(r, i);
    b.entry(r, i) = b.at(r, j);
    b.entry(r, j) = t;
  }
  pacc.swap_rows(i, j);
}

inline void congruence_add(FpMatrix& b, FpMatrix& pacc, int i, int j,
                           std::uint32_t f) {
  std::uint32_t p = b.p();
  b.add_scaled_row(i, j, f);
  for (int r = 0; r < b.rows(); ++r)
    b.entry(r, i) = fp_add(p, b.at(r, i), fp_mul(p, f, b.at(r, j)));
  pacc.add_scaled_row(i, j, f);
}

inline void congruence_scale(FpMatrix& b, FpMatrix& pacc, int i,
                             std::uint32_t t) {
  std::uint32_t p = b.p();
  b.scale_row(i, t);
  for (int r = 0; r < b.rows(); ++r)
    b.entry(r, i) = fp_mul(p, b.at(r, i), t);
  pacc.scale_row(i, t);
}

// (row_i, row_j) <- (a row_i + c row_j, c row_i + a row_j) pattern is not
// general enough; this applies an arbitrary 2x2 block [[a, bb], [c, d]] to
// the row pair and then to the column pair.
inline void congruence_two(FpMatrix& b, FpMatrix& pacc, int i, int j,
                           std::uint32_t a, std::uint32_t bb, std::uint32_t c,
                           std::uint32_t d) {
  std::uint32_t p = b.p();
  auto mix_rows = [&](FpMatrix& m) {
    for (int col = 0; col < m.cols(); ++col) {
      std::uint32_t ri = m.at(i, col), rj = m.at(j, col);
      m.entry(i, col) =
          fp_add(p, fp_mul(p, a, ri), fp_mul(p, bb, rj));
      m.entry(j, col) = fp_add(p, fp_mul(p, c, ri), fp_mul(p, d, rj));
    }
  };
  mix_rows(b);
  for (int r = 0; r < b.rows(); ++r) {
    std::uint32_t ci = b.at(r, i), cj = b.at(r, j);
    b.entry(r, i) = fp_add(p, fp_mul(p, a, ci), fp_mul(p, bb, cj));
    b.entry(r, j) = fp_add(p, fp_mul(p, c, ci), fp_mul(p, d, cj));
  }
  mix_rows(pacc);
}

inline void require_rank1_shape(const FpMatrix& phi) {
  int n = phi.rows();
  if (phi.cols() != n || n < 1)
    throw std::invalid_argument("form classification: phi must be square");
  if (!phi.is_symmetric())
    throw std::invalid_argument("form classification: phi must be symmetric");
  for (int i = 0; i < n; ++i)
    if (phi.at(n - 1, i) != 0 || phi.at(i, n - 1) != 0)
      throw std::invalid_argument(
          "form classification: last row and column of phi must vanish");
}

}  // namespace detail

// Normal-form data of a symmetric form with vanishing last row and column:
// change_of_basis * phi * change_of_basis^T == scale * normal_form(), where
// change_of_basis fixes the last coordinate, normal_form() is
// diag(1,..,1,tail,0,..,0) with k active entries, and scale is 1 except for
// odd-rank forms of nonsquare discriminant, where it is the canonical
// nonsquare.
struct FormClass {
  std::uint32_t p;
  int n;
  int k;
  QFormCase label;
  std::uint32_t tail;   // last active diagonal entry of the normal form
  std::uint32_t scale;  // global square-class factor (1 or nonsquare)
  FpMatrix change_of_basis;

  FpMatrix normal_form() const {
    FpMatrix d(p, n, n);
    for (int i = 0; i < k; ++i) d.entry(i, i) = (i == k - 1) ? tail : 1;
    return d;
  }

  // Conjugating the subgroup of phi's algebra by this matrix yields exactly
  // the subgroup of the normal form's algebra: the transported form is
  // u * C^{-T} phi_active C^{-1} with C the active block and u the last
  // diagonal entry, so C = P_active^{-T} and u = scale^{-1} land on the
  // normal form.
  FpMatrix subgroup_change_of_basis() const {
    int m = n - 1;
    FpMatrix active(p, m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) active.entry(i, j) = change_of_basis.at(i, j);
    FpMatrix cinv_t = active.inverse().transposed();
    FpMatrix full(p, n, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) full.entry(i, j) = cinv_t.at(i, j);
    full.entry(n - 1, n - 1) = fp_inv(p, scale);
    return full;
  }
};

// Diagonalize a symmetric form by congruence and name its class.  The
// returned data always satisfies the verified invariant
// change_of_basis * phi * change_of_basis^T == scale * normal_form().
inline FormClass classify_form(const FpMatrix& phi) {
  detail::require_rank1_shape(phi);
  std::uint32_t p = phi.p();
  int n = phi.rows();
  int m = n - 1;
  std::uint32_t ns = canonical_nonsquare(p);

  FpMatrix b(p, m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) b.entry(i, j) = phi.at(i, j);
  FpMatrix pacc = FpMatrix::identity(p, m);

  // 1. symmetric elimination to a diagonal form
  int pos = 0;
  while (pos < m) {
    int piv = -1;
    for (int i = pos; i < m; ++i)
      if (b.at(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // all remaining diagonal entries vanish; revive one from an
      // off-diagonal entry: adding row/col j to row/col i makes the
      // diagonal entry 2 b_ij, nonzero since p is odd
      int oi = -1, oj = -1;
      for (int i = pos; i < m && oi < 0; ++i)
        for (int j = i + 1; j < m; ++j)
          if (b.at(i, j) != 0) {
            oi = i;
            oj = j;
            break;
          }
      if (oi < 0) break;  // the rest of the form is zero
      detail::congruence_add(b, pacc, oi, oj, 1);
      piv = oi;
    }
    detail::congruence_swap(b, pacc, pos, piv);
    std::uint32_t dinv = fp_inv(p, b.at(pos, pos));
    for (int r = pos + 1; r < m; ++r) {
      std::uint32_t f = b.at(r, pos);
      if (f != 0)
        detail::congruence_add(b, pacc, r, pos,
                               fp_neg(p, fp_mul(p, f, dinv)));
    }
    ++pos;
  }
  int k = pos;

  // 2. normalize each nonzero diagonal entry into {1, nonsquare}
  Fp field(p);
  for (int i = 0; i < k; ++i) {
    std::uint32_t d = b.at(i, i);
    std::uint32_t target = field.is_square(d) ? 1u : ns;
    // t^2 d = target always has a solution since target/d is a square
    std::uint32_t t = field.square_root(fp_mul(p, target, fp_inv(p, d)));
    detail::congruence_scale(b, pacc, i, t);
  }

  // 3. collapse pairs of nonsquare entries into pairs of ones using a
  // rotation by (a, b) with a^2 + b^2 = ns^{-1}
  auto nonsquare_slots = [&]() {
    std::vector<int> slots;
    for (int i = 0; i < k; ++i)
      if (b.at(i, i) == ns) slots.push_back(i);
    return slots;
  };
  {
    auto [a2, b2] = sum_of_two_squares(fp_inv(p, ns), p);
    for (auto slots = nonsquare_slots(); slots.size() >= 2;
         slots = nonsquare_slots()) {
      int i = slots[slots.size() - 2], j = slots[slots.size() - 1];
      detail::congruence_two(b, pacc, i, j, a2, b2, fp_neg(p, b2), a2);
    }
  }

  std::uint32_t scale = 1;
  std::uint32_t tail = 0;
  QFormCase label = QFormCase::Zero;
  auto slots = nonsquare_slots();
  if (k > 0 && k % 2 == 1) {
    label = QFormCase::Odd;
    tail = 1;
    if (!slots.empty()) {
      // odd rank, one nonsquare entry left: the form is only scaled-
      // congruent to the all-ones normal form.  Convert every pair of ones
      // into a pair of nonsquares with a rotation (f, g), f^2 + g^2 = ns;
      // then the diagonal is ns * identity.
      auto [f, g] = sum_of_two_squares(ns, p);
      std::vector<int> ones;
      for (int i = 0; i < k; ++i)
        if (b.at(i, i) == 1) ones.push_back(i);
      for (std::size_t t2 = 0; t2 + 1 < ones.size(); t2 += 2)
        detail::congruence_two(b, pacc, ones[t2], ones[t2 + 1], f, g,
                               fp_neg(p, g), f);
      // now rescale the whole active block out of the result: b == ns * I_k
      scale = ns;
    }
  } else if (k > 0) {
    // even rank: at most one nonsquare entry; move it to the last active
    // slot and read the split type off the concrete tail
    if (!slots.empty()) detail::congruence_swap(b, pacc, slots[0], k - 1);
    tail = b.at(k - 1, k - 1);
    label = even_type_of_tail(k, p, tail);
  }

  FpMatrix full = FpMatrix::identity(p, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) full.entry(i, j) = pacc.at(i, j);

  FormClass fc{p, n, k, label, tail, scale, full};

  // verified invariant: the accumulated operations really congruate phi to
  // scale * normal_form
  FpMatrix lhs = full * phi * full.transposed();
  FpMatrix rhs = fc.normal_form();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rhs.entry(i, j) = fp_mul(p, rhs.at(i, j), scale);
  if (lhs != rhs)
    throw std::logic_error(
        "form classification lost the congruence invariant");
  return fc;
}

// Canonical representative with the given parameters: diag(1,..,1,t,0,..,0)
// as a full n x n form, t = 1 for odd rank and the tail realizing the split
// type for even rank.
inline FpMatrix representative_form(std::uint32_t p, int n, int k,
                                    QFormCase label) {
  validate_modulus(p);
  if (n < 1 || k < 0 || k > n - 1)
    throw std::invalid_argument("representative_form: need 0 <= k <= n-1");
  if ((k == 0) != (label == QFormCase::Zero))
    throw std::invalid_argument(
        "representative_form: rank zero holds exactly for the zero class");
  if (k > 0 && k % 2 == 1 && label != QFormCase::Odd)
    throw std::invalid_argument("representative_form: odd rank must be odd class");
  if (k > 0 && k % 2 == 0 &&
      label != QFormCase::EvenPlus && label != QFormCase::EvenMinus)
    throw std::invalid_argument(
        "representative_form: even rank must be a plus or minus class");
  FpMatrix d(p, n, n);
  if (k > 0) {
    std::uint32_t tail = (k % 2 == 1) ? 1u : tail_for_even_type(k, p, label);
    for (int i = 0; i < k; ++i) d.entry(i, i) = (i == k - 1) ? tail : 1;
  }
  return d;
}

// Membership test for the GL_n-conjugation stabilizer of the normal-form
// subgroup.  Writing pm in blocks of sizes (k, n-1-k, 1), membership means:
// last column is q e_n with q != 0, the top-middle block vanishes, the
// middle block is invertible, and the top-left block P1 satisfies
// P1^T D_s P1 = q D_s.  For the zero class every invertible matrix
// qualifies.
inline bool stabilizer_membership(std::uint32_t p, int n, int k,
                                  QFormCase label, const FpMatrix& pm) {
  if (pm.p() != p || pm.rows() != n || pm.cols() != n)
    throw std::invalid_argument("stabilizer_membership: shape mismatch");
  if (label == QFormCase::Zero) {
    if (k != 0)
      throw std::invalid_argument("stabilizer_membership: zero class has k=0");
    return pm.is_invertible();
  }
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("stabilizer_membership: need 1 <= k <= n-1");
  std::uint32_t tail = (k % 2 == 1) ? 1u : tail_for_even_type(k, p, label);
  // last column must be q e_n
  std::uint32_t q = pm.at(n - 1, n - 1);
  if (q == 0) return false;
  for (int r = 0; r + 1 < n; ++r)
    if (pm.at(r, n - 1) != 0) return false;
  // top-middle block must vanish
  for (int r = 0; r < k; ++r)
    for (int c = k; c + 1 < n; ++c)
      if (pm.at(r, c) != 0) return false;
  // middle block must be invertible
  int mid = n - 1 - k;
  if (mid > 0) {
    FpMatrix middle(p, mid, mid);
    for (int r = 0; r < mid; ++r)
      for (int c = 0; c < mid; ++c) middle.entry(r, c) = pm.at(k + r, k + c);
    if (!middle.is_invertible()) return false;
  }
  // active block: P1^T D_s P1 == q D_s
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      std::uint64_t acc = 0;
      for (int r = 0; r < k; ++r) {
        std::uint32_t dr = (r == k - 1) ? tail : 1;
        acc += static_cast<std::uint64_t>(dr) * pm.at(r, i) % p * pm.at(r, j);
      }
      std::uint32_t want = 0;
      if (i == j) want = fp_mul(p, q, (i == k - 1) ? tail : 1);
      if (acc % p != want) return false;
    }
  return true;
}

// Order of that stabilizer: q ranges over squares (odd rank) or all nonzero
// residues (even rank); for each admissible q the active block is a coset
// of the orthogonal group of D_s; the middle block is arbitrary invertible;
// the three lower blocks are free.
inline std::uint64_t stabilizer_order(std::uint32_t p, int n, int k,
                                      QFormCase label) {
  validate_modulus(p);
  if (n < 1 || k < 0 || k > n - 1)
    throw std::invalid_argument("stabilizer_order: need 0 <= k <= n-1");
  if (label == QFormCase::Zero) {
    if (k != 0)
      throw std::invalid_argument("stabilizer_order: zero class has k=0");
    return gl_order(n, p);
  }
  std::uint64_t qcount = (k % 2 == 1) ? (p - 1) / 2 : (p - 1);
  std::uint64_t result = qcount;
  result = detail::mul_checked(result, go_order(k, p, label));
  result = detail::mul_checked(result, gl_order(n - 1 - k, p));
  unsigned freedom = static_cast<unsigned>(k * (n - 1 - k) + (n - 1));
  result = detail::mul_checked(result, detail::pow_checked(p, freedom));
  return result;
}

// Number of conjugates of the normal-form subgroup inside GL_n, i.e. the
// orbit size |GL_n| / |stabilizer|.  The division is checked to be exact.
inline std::uint64_t hgs_count(std::uint32_t p, int n, int k,
                               QFormCase label) {
  std::uint64_t gl = gl_order(n, p);
  std::uint64_t stab = stabilizer_order(p, n, k, label);
  if (stab == 0 || gl % stab != 0)
    throw std::logic_error("hgs_count: stabilizer does not divide the group order");
  return gl / stab;
}

struct CountRow {
  int k;
  QFormCase label;
  std::uint32_t tail;  // concrete tail entry of the representative form
  std::uint64_t stabilizer;
  std::uint64_t count;
};

struct CountTable {
  std::uint32_t p;
  int n;
  std::vector<CountRow> rows;     // nonzero classes, ascending k
  std::uint64_t zero_stabilizer;  // |GL_n|: the translation subgroup is fixed
  std::uint64_t total;            // structures from nonzero classes
};

// Per-dimension table of all nonzero classes with stabilizer orders and
// conjugate counts.  Internal cross-checks: in dimension three every count
// must match its closed polynomial form, and in dimension four the total
// must exceed p^9.
inline CountTable count_table(std::uint32_t p, int n) {
  validate_modulus(p);
  if (n < 2) throw std::invalid_argument("count_table: need n >= 2");
  CountTable table{p, n, {}, gl_order(n, p), 0};
  for (int k = 1; k <= n - 1; ++k) {
    std::vector<QFormCase> labels;
    if (k % 2 == 1)
      labels = {QFormCase::Odd};
    else
      labels = {QFormCase::EvenPlus, QFormCase::EvenMinus};
    for (QFormCase label : labels) {
      std::uint32_t tail =
          (k % 2 == 1) ? 1u : tail_for_even_type(k, p, label);
      std::uint64_t stab = stabilizer_order(p, n, k, label);
      std::uint64_t cnt = hgs_count(p, n, k, label);
      table.rows.push_back({k, label, tail, stab, cnt});
      table.total += cnt;
    }
  }
  std::uint64_t pu = p;
  if (n == 2 && table.total != pu * pu - 1)
    throw std::logic_error("count_table: dimension-two total must be p^2 - 1");
  if (n == 3) {
    std::uint64_t odd = (pu * pu - 1) * (pu * pu + pu + 1);
    std::uint64_t plus = pu * (pu * pu - 1) * (pu * pu + pu + 1) / 2;
    std::uint64_t minus = pu * (pu - 1) * (pu - 1) * (pu * pu + pu + 1) / 2;
    for (const CountRow& row : table.rows) {
      std::uint64_t want = row.k == 1 ? odd
                           : row.label == QFormCase::EvenPlus ? plus
                                                              : minus;
      if (row.count != want)
        throw std::logic_error(
            "count_table: dimension-three count disagrees with its closed form");
    }
  }
  if (n == 4) {
    std::uint64_t p9 = detail::pow_checked(p, 9);
    if (table.total <= p9)
      throw std::logic_error(
          "count_table: dimension-four total must exceed p^9");
  }
  return table;
}

// Explicit solution C of C^T D C = q D for D = diag(1,..,1,s).  Odd rank:
// C = t I with t^2 = q, which forces q to be a square.  Even rank with
// s = 1: 2x2 rotation blocks [[f, g], [-g, f]] with f^2 + g^2 = q.  Even
// rank with nonsquare s: rotation blocks plus one trailing block
// [[w, s x], [x, -w]] with w^2 + s x^2 = q (x = 0 for square q, w = 0
// otherwise).
inline FpMatrix scaling_matrix(int k, std::uint32_t p, std::uint32_t s,
                               std::uint32_t q) {
  validate_modulus(p);
  if (k < 1) throw std::invalid_argument("scaling_matrix: need k >= 1");
  if (q == 0 || q >= p)
    throw std::invalid_argument(
        "scaling_matrix: factor must be a nonzero canonical residue");
  std::uint32_t ns = canonical_nonsquare(p);
  if (s != 1 && s != ns)
    throw std::invalid_argument(
        "scaling_matrix: tail must be 1 or the canonical nonsquare");
  FpMatrix c(p, k, k);
  if (k % 2 == 1) {
    if (s != 1)
      throw std::invalid_argument(
          "scaling_matrix: odd rank normal forms have tail 1");
    Fp field(p);
    if (!field.is_square(q))
      throw std::domain_error(
          "scaling_matrix: no solution, odd rank requires a square factor");
    std::uint32_t t = field.square_root(q);
    for (int i = 0; i < k; ++i) c.entry(i, i) = t;
  } else {
    int pairs = (s == 1) ? k / 2 : (k - 2) / 2;
    auto [f, g] = sum_of_two_squares(q, p);
    for (int b = 0; b < pairs; ++b) {
      int i = 2 * b;
      c.entry(i, i) = f;
      c.entry(i, i + 1) = g;
      c.entry(i + 1, i) = fp_neg(p, g);
      c.entry(i + 1, i + 1) = f;
    }
    if (s != 1) {
      // trailing block for D = diag(1, s): [[w, s x], [x, -w]] with
      // w^2 + s x^2 = q
      std::uint32_t w = 0, x = 0;
      Fp field(p);
      if (field.is_square(q)) {
        w = field.square_root(q);
      } else {
        x = field.square_root(fp_mul(p, q, fp_inv(p, s)));
      }
      int i = k - 2;
      c.entry(i, i) = w;
      c.entry(i, i + 1) = fp_mul(p, s, x);
      c.entry(i + 1, i) = x;
      c.entry(i + 1, i + 1) = fp_neg(p, w);
    }
  }
  // verified invariant: C^T D C == q D
  FpMatrix d(p, k, k);
  for (int i = 0; i < k; ++i) d.entry(i, i) = (i == k - 1) ? s : 1;
  FpMatrix lhs = c.transposed() * d * c;
  FpMatrix rhs(p, k, k);
  for (int i = 0; i < k; ++i)
    rhs.entry(i, i) = fp_mul(p, q, d.at(i, i));
  if (lhs != rhs)
    throw std::logic_error("scaling_matrix: constructed matrix fails C^T D C = q D");
  return c;
}

}  // namespace hgs
