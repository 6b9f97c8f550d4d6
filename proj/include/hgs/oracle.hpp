// oracle.hpp -- brute-force reference computations used to verify the
// closed-form counts: exhaustive deterministic enumeration of GL_n(F_p),
// conjugation orbits and stabilizers of regular subgroups, orthogonal group
// counting, and congruence search between symmetric forms.  Everything here
// trades speed for independence from the formulas it checks.
#pragma once

#include <optional>
#include <thread>
#include <unordered_set>

#include "hgs/affine.hpp"
#include "hgs/group_orders.hpp"

namespace hgs::oracle {

struct EnumerationBudget {
  // refuse sweeps over more than this many invertible matrices
  std::uint64_t max_elements = 10000000;
  // worker threads; results are identical for every worker count
  int workers = 1;
};

namespace detail {

// Invertible matrices found by an odometer over all p^(n^2) candidates in
// row-major digit order (entry (0,0) least significant) with an
// invertibility filter.  f sees every invertible matrix whose position in
// this order is worker_id mod workers; returning false stops the sweep.
// Returns the number of invertible matrices seen before stopping.
template <class F>
std::uint64_t enumerate_gl_odometer(std::uint32_t p, int n, int workers,
                                    int worker_id, F&& f) {
  FpMatrix m(p, n, n);
  const int cells = n * n;
  std::uint64_t seen = 0;
  for (;;) {
    if (m.is_invertible()) {
      std::uint64_t idx = seen++;
      if (idx % static_cast<std::uint64_t>(workers) ==
          static_cast<std::uint64_t>(worker_id)) {
        if (!f(static_cast<const FpMatrix&>(m))) return seen;
      }
    }
    int c = 0;
    for (; c < cells; ++c) {
      std::uint32_t v = m.at(c / n, c % n) + 1;
      if (v == p) {
        m.entry(c / n, c % n) = 0;
      } else {
        m.entry(c / n, c % n) = v;
        break;
      }
    }
    if (c == cells) break;
  }
  return seen;
}

// Invertible matrices built row by row: after choosing i independent rows
// with reduced-echelon span S (pivot set P), every vector outside the span
// is uniquely w = t + sum_b c_b basis_b with t a nonzero pattern on the
// non-pivot coordinates.  Iterating (t, c) odometers visits each candidate
// row exactly once, so the DFS emits every invertible matrix exactly once.
template <class F>
std::uint64_t enumerate_gl_rowspan(std::uint32_t p, int n, int workers,
                                   int worker_id, F&& f) {
  FpMatrix m(p, n, n);
  std::uint64_t seen = 0;
  bool stop = false;
  auto rec = [&](auto&& self, int row, const RowSpan& span) -> void {
    const std::vector<int>& pivots = span.pivots();
    std::vector<int> free_cols;
    {
      std::size_t k = 0;
      for (int col = 0; col < n; ++col) {
        if (k < pivots.size() && pivots[k] == col) {
          ++k;
          continue;
        }
        free_cols.push_back(col);
      }
    }
    const int d = span.dim();
    const int fdim = static_cast<int>(free_cols.size());
    Vec t(static_cast<std::size_t>(n), 0);
    std::vector<std::uint32_t> tdigit(static_cast<std::size_t>(fdim), 0);
    std::vector<std::uint32_t> cdigit(static_cast<std::size_t>(d), 0);
    Vec v(static_cast<std::size_t>(n));
    for (;;) {
      // advance the pattern odometer; the very first step leaves all-zero
      int ti = 0;
      while (ti < fdim) {
        if (++tdigit[static_cast<std::size_t>(ti)] == p) {
          tdigit[static_cast<std::size_t>(ti)] = 0;
          ++ti;
        } else {
          break;
        }
      }
      if (ti == fdim) break;  // wrapped around: all nonzero patterns done
      for (int a = 0; a < fdim; ++a)
        t[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(a)])] =
            tdigit[static_cast<std::size_t>(a)];
      std::fill(cdigit.begin(), cdigit.end(), 0);
      for (;;) {
        v = t;
        for (int b = 0; b < d; ++b) {
          std::uint32_t cb = cdigit[static_cast<std::size_t>(b)];
          if (cb == 0) continue;
          const Vec& basis = span.basis()[static_cast<std::size_t>(b)];
          for (int j = 0; j < n; ++j)
            v[static_cast<std::size_t>(j)] =
                fp_add(p, v[static_cast<std::size_t>(j)],
                       fp_mul(p, cb, basis[static_cast<std::size_t>(j)]));
        }
        for (int j = 0; j < n; ++j)
          m.entry(row, j) = v[static_cast<std::size_t>(j)];
        if (row + 1 == n) {
          std::uint64_t idx = seen++;
          if (idx % static_cast<std::uint64_t>(workers) ==
              static_cast<std::uint64_t>(worker_id)) {
            if (!f(static_cast<const FpMatrix&>(m))) {
              stop = true;
              return;
            }
          }
        } else {
          RowSpan child = span;
          child.insert(v);
          self(self, row + 1, child);
          if (stop) return;
        }
        int ci = 0;
        while (ci < d) {
          if (++cdigit[static_cast<std::size_t>(ci)] == p) {
            cdigit[static_cast<std::size_t>(ci)] = 0;
            ++ci;
          } else {
            break;
          }
        }
        if (ci == d) break;
      }
    }
  };
  rec(rec, 0, RowSpan(p, n));
  return seen;
}

template <class Fn>
void run_workers(int workers, Fn&& body) {
  if (workers <= 1) {
    body(0);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int id = 0; id < workers; ++id)
    threads.emplace_back([&, id] {
      try {
        body(id);
      } catch (...) {
        errors[static_cast<std::size_t>(id)] = std::current_exception();
      }
    });
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

// Visit the invertible matrices whose index in a fixed deterministic order
// is congruent to worker_id mod workers.  f(const FpMatrix&) -> bool; false
// stops the sweep.  Returns how many invertible matrices were generated,
// which equals |GL_n(F_p)| for a full uninterrupted sweep.
template <class F>
std::uint64_t enumerate_gl_partition(std::uint32_t p, int n, int workers,
                                     int worker_id, F&& f) {
  validate_modulus(p);
  if (n < 1) throw std::invalid_argument("enumerate_gl: need n >= 1");
  if (workers < 1 || worker_id < 0 || worker_id >= workers)
    throw std::invalid_argument("enumerate_gl: bad worker partition");
  if (n <= 3)
    return detail::enumerate_gl_odometer(p, n, workers, worker_id,
                                         std::forward<F>(f));
  return detail::enumerate_gl_rowspan(p, n, workers, worker_id,
                                      std::forward<F>(f));
}

template <class F>
std::uint64_t enumerate_gl(std::uint32_t p, int n, F&& f) {
  return enumerate_gl_partition(p, n, 1, 0, std::forward<F>(f));
}

// Fast membership test for the GL-stabilizer of a regular subgroup.
// P tau(x) P^{-1} lies in the subgroup exactly when P L_x = L_{Px} P, and
// both sides are linear in x, so checking the basis generators decides
// membership.  The screen precomputes the generator matrices and the sparse
// structure-tensor support once so one matrix costs only a few hundred
// operations.
class StabilizerScreen {
 public:
  explicit StabilizerScreen(const NilpotentAlgebra& a)
      : p_(a.p()), n_(a.dim()) {
    lgen_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      auto& li = lgen_[static_cast<std::size_t>(i)];
      li.assign(static_cast<std::size_t>(n_) * n_, 0);
      for (int r = 0; r < n_; ++r)
        for (int j = 0; j < n_; ++j)
          li[static_cast<std::size_t>(r) * n_ + j] = a.structure(i, j, r);
    }
    for (int s = 0; s < n_; ++s)
      for (int j = 0; j < n_; ++j)
        for (int r = 0; r < n_; ++r) {
          std::uint32_t cval = a.structure(s, j, r);
          if (cval)
            nonzeros_.push_back(
                {s, static_cast<int>(static_cast<std::size_t>(r) * n_ + j),
                 cval});
        }
    lx_.assign(static_cast<std::size_t>(n_) * n_, 0);
  }

  bool pass(const FpMatrix& pm) {
    for (int i = 0; i < n_; ++i) {
      std::fill(lx_.begin(), lx_.end(), 0);
      for (const auto& nz : nonzeros_) {
        std::uint32_t xs = pm.at(nz.s, i);
        if (xs) {
          std::uint32_t& cell = lx_[static_cast<std::size_t>(nz.rj)];
          cell = static_cast<std::uint32_t>(
              (cell + static_cast<std::uint64_t>(xs) * nz.c) % p_);
        }
      }
      const auto& li = lgen_[static_cast<std::size_t>(i)];
      for (int r = 0; r < n_; ++r)
        for (int j = 0; j < n_; ++j) {
          std::uint64_t lhs = 0, rhs = 0;
          for (int mcol = 0; mcol < n_; ++mcol) {
            lhs += static_cast<std::uint64_t>(pm.at(r, mcol)) *
                   li[static_cast<std::size_t>(mcol) * n_ + j];
            rhs += static_cast<std::uint64_t>(
                       lx_[static_cast<std::size_t>(r) * n_ + mcol]) *
                   pm.at(mcol, j);
          }
          if (lhs % p_ != rhs % p_) return false;
        }
    }
    return true;
  }

 private:
  struct Nonzero {
    int s;
    int rj;
    std::uint32_t c;
  };
  std::uint32_t p_;
  int n_;
  std::vector<std::vector<std::uint32_t>> lgen_;
  std::vector<Nonzero> nonzeros_;
  std::vector<std::uint32_t> lx_;
};

struct OrbitResult {
  std::uint64_t orbit = 0;
  std::uint64_t stabilizer = 0;
};

// Size of the GL_n(F_p)-conjugation orbit of the subgroup, found by
// conjugating with every invertible matrix and collecting canonical keys.
// The stabilizer is counted in the same sweep and the orbit-stabilizer
// identity orbit * stabilizer = |GL| is asserted before returning.
inline OrbitResult orbit_size(const RegularSubgroup& t,
                              const EnumerationBudget& budget = {}) {
  std::uint32_t p = t.p();
  int n = t.dim();
  std::uint64_t gl = gl_order(n, p);
  if (gl > budget.max_elements)
    throw std::invalid_argument(
        "orbit_size: GL sweep exceeds budget; raise max_elements or use "
        "stabilizer_size");
  int w = std::max(1, budget.workers);
  const std::string& base = t.canonical_key();
  std::vector<std::unordered_set<std::string>> keysets(
      static_cast<std::size_t>(w));
  std::vector<std::uint64_t> stabs(static_cast<std::size_t>(w), 0);
  detail::run_workers(w, [&](int id) {
    auto& keys = keysets[static_cast<std::size_t>(id)];
    auto& stab = stabs[static_cast<std::size_t>(id)];
    enumerate_gl_partition(p, n, w, id, [&](const FpMatrix& pm) {
      std::string key = t.canonical_key_conjugated(pm, pm.inverse());
      if (key == base) ++stab;
      keys.insert(std::move(key));
      return true;
    });
  });
  std::unordered_set<std::string> all;
  std::uint64_t stab = 0;
  for (int id = 0; id < w; ++id) {
    auto& keys = keysets[static_cast<std::size_t>(id)];
    all.merge(keys);
    stab += stabs[static_cast<std::size_t>(id)];
  }
  OrbitResult res{all.size(), stab};
  if (res.stabilizer == 0 || res.orbit * res.stabilizer != gl)
    throw std::domain_error("orbit_size: orbit-stabilizer identity violated");
  return res;
}

// Order of the GL_n(F_p)-stabilizer of the subgroup under conjugation.
// Candidates pass the generator screen; every survivor is then re-verified
// by full canonical-key conjugation, so a screen bug cannot inflate the
// count silently.
inline std::uint64_t stabilizer_size(const RegularSubgroup& t,
                                     const EnumerationBudget& budget = {}) {
  std::uint32_t p = t.p();
  int n = t.dim();
  std::uint64_t gl = gl_order(n, p);
  if (gl > budget.max_elements)
    throw std::invalid_argument(
        "stabilizer_size: GL sweep exceeds budget; raise max_elements");
  int w = std::max(1, budget.workers);
  const std::string& base = t.canonical_key();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(w), 0);
  detail::run_workers(w, [&](int id) {
    StabilizerScreen screen(t.algebra());
    auto& count = counts[static_cast<std::size_t>(id)];
    enumerate_gl_partition(p, n, w, id, [&](const FpMatrix& pm) {
      if (screen.pass(pm)) {
        if (t.canonical_key_conjugated(pm, pm.inverse()) != base)
          throw std::domain_error(
              "stabilizer_size: screen accepted a non-stabilizing matrix");
        ++count;
      }
      return true;
    });
  });
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  return total;
}

// Number of k x k matrices U over F_p with U^T D U = D, D = diag(1,..,1,s).
// Columns are chosen left to right by backtracking: a candidate column must
// have the right D-norm and be D-orthogonal to all earlier columns.  Any
// solution is automatically invertible since det(U)^2 det(D) = det(D) != 0.
inline std::uint64_t orthogonal_count(int k, std::uint32_t p,
                                      std::uint32_t s) {
  validate_modulus(p);
  if (k < 1) throw std::invalid_argument("orthogonal_count: need k >= 1");
  if (s == 0 || s >= p)
    throw std::invalid_argument(
        "orthogonal_count: tail entry must be a nonzero canonical residue");
  std::vector<std::uint32_t> d(static_cast<std::size_t>(k), 1);
  d[static_cast<std::size_t>(k - 1)] = s;
  std::vector<Vec> cols;
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, int i) -> void {
    Vec v(static_cast<std::size_t>(k), 0);
    for (;;) {
      std::uint64_t norm = 0;
      for (int r = 0; r < k; ++r)
        norm += static_cast<std::uint64_t>(d[static_cast<std::size_t>(r)]) *
                v[static_cast<std::size_t>(r)] % p *
                v[static_cast<std::size_t>(r)];
      if (norm % p == d[static_cast<std::size_t>(i)]) {
        bool orth = true;
        for (const Vec& u : cols) {
          std::uint64_t dot = 0;
          for (int r = 0; r < k; ++r)
            dot += static_cast<std::uint64_t>(d[static_cast<std::size_t>(r)]) *
                   v[static_cast<std::size_t>(r)] % p *
                   u[static_cast<std::size_t>(r)];
          if (dot % p != 0) {
            orth = false;
            break;
          }
        }
        if (orth) {
          if (i + 1 == k) {
            ++count;
          } else {
            cols.push_back(v);
            self(self, i + 1);
            cols.pop_back();
          }
        }
      }
      int c = 0;
      while (c < k) {
        if (++v[static_cast<std::size_t>(c)] == p) {
          v[static_cast<std::size_t>(c)] = 0;
          ++c;
        } else {
          break;
        }
      }
      if (c == k) break;
    }
  };
  rec(rec, 0);
  return count;
}

// Search for an invertible P with P phi1 P^T = phi2 over the full matrix
// size.  Returns the first witness in enumeration order, or nothing when
// the forms are not congruent.
inline std::optional<FpMatrix> form_equivalence_search(
    const FpMatrix& phi1, const FpMatrix& phi2,
    std::uint64_t max_elements = 10000000) {
  if (phi1.p() != phi2.p() || phi1.rows() != phi1.cols() ||
      phi2.rows() != phi2.cols() || phi1.rows() != phi2.rows())
    throw std::invalid_argument("form_equivalence_search: shape mismatch");
  int m = phi1.rows();
  std::uint32_t p = phi1.p();
  if (phi1 == phi2) return FpMatrix::identity(p, m);
  if (gl_order(m, p) > max_elements)
    throw std::invalid_argument(
        "form_equivalence_search: GL sweep exceeds budget");
  std::optional<FpMatrix> found;
  enumerate_gl(p, m, [&](const FpMatrix& pm) {
    if (pm * phi1 * pm.transposed() == phi2) {
      found = pm;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace hgs::oracle
