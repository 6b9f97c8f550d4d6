// hgs -- command-line front end for the nilpotent-algebra machinery:
// validation of structure tensors, quadratic-form classification of the
// associated regular affine subgroups, closed-form counting with optional
// brute-force verification, the chain-family construction, descent data,
// and direct access to the enumeration oracles.
//
// Exit codes: 0 success, 1 domain violation, 2 I/O, parse, or usage error.
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hgs_io.hpp"

namespace {

using namespace hgs;
using hgsio::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const hgsio::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

std::uint64_t parse_budget(const std::string& text) {
  try {
    double v = std::stod(text);
    if (v < 1 || v > 1e18) throw std::out_of_range("budget");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw hgsio::ParseError("cannot parse budget value \"" + text + "\"");
  }
}

void print_matrix(const FpMatrix& m, const char* indent) {
  for (int i = 0; i < m.rows(); ++i) {
    std::cout << indent << "[";
    for (int j = 0; j < m.cols(); ++j)
      std::cout << (j ? " " : "") << m.at(i, j);
    std::cout << "]\n";
  }
}

bool is_chain_tensor(const NilpotentAlgebra& a) {
  int n = static_cast<int>(a.dim());
  NilpotentAlgebra c = chain_algebra(n, a.p());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (a.structure(i, j, k) != c.structure(i, j, k)) return false;
  return true;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------- validate

struct ValidateOpts {
  std::string path;
  std::uint64_t seed = 0;
};

int run_validate(const ValidateOpts& o) {
  hgsio::LoadedAlgebra loaded = hgsio::read_algebra_file(o.path);
  const NilpotentAlgebra& a = loaded.algebra;
  std::uint32_t p = a.p();
  int n = static_cast<int>(a.dim());
  std::cout << "p = " << p << ", n = " << n;
  if (loaded.family) std::cout << ", family = " << loaded.family->kind;
  std::cout << '\n';

  ValidationReport rep = a.validate();
  if (rep.commutative) {
    std::cout << "commutative: yes\n";
  } else {
    std::cout << "commutative: NO (first violation at basis pair ("
              << rep.noncommutative_pair[0] << ", "
              << rep.noncommutative_pair[1] << "))\n";
  }
  if (rep.associative) {
    std::cout << "associative: yes\n";
  } else {
    std::cout << "associative: NO (first violation at basis triple ("
              << rep.nonassociative_triple[0] << ", "
              << rep.nonassociative_triple[1] << ", "
              << rep.nonassociative_triple[2] << "))\n";
  }
  if (rep.nilpotent) {
    std::cout << "nilpotent: yes (index " << rep.nilpotency_index
              << ", power dims";
    for (int d : a.power_dims()) std::cout << ' ' << d;
    std::cout << ")\n";
  } else {
    std::cout << "nilpotent: NO (power dimensions stall above zero)\n";
  }
  if (!rep.ok()) {
    std::cout << "verdict: not a commutative nilpotent algebra\n";
    return kExitDomain;
  }

  std::cout << "cube zero (A^3 = 0): " << yes_no(a.cube_is_zero()) << '\n';
  std::cout << "circle group elementary abelian: "
            << yes_no(a.circle_group_is_elementary_abelian(o.seed)) << '\n';
  std::uint64_t size = small_pow(p, static_cast<unsigned>(n));
  if (size <= 100000) {
    RegularSubgroup t(a);
    std::cout << "tau image is a regular subgroup of size " << t.size()
              << ": yes\n";
    std::cout << "normalized by translations: "
              << yes_no(t.normalized_by_translations(2048, o.seed)) << '\n';
  } else {
    std::cout << "subgroup checks skipped (p^n too large)\n";
  }
  std::cout << "verdict: all axioms hold\n";
  return kExitOk;
}

// ---------------------------------------------------------------- classify

struct ClassifyOpts {
  std::string path;
  std::string out;
};

int run_classify(const ClassifyOpts& o) {
  hgsio::LoadedAlgebra loaded = hgsio::read_algebra_file(o.path);
  const NilpotentAlgebra& a = loaded.algebra;
  std::uint32_t p = a.p();
  int n = static_cast<int>(a.dim());
  if (!a.validate().ok()) {
    std::cout << "algebra fails validation; run the validate subcommand\n";
    return kExitDomain;
  }
  if (!a.cube_is_zero()) {
    if (is_chain_tensor(a))
      std::cout << "A^3 != 0; use the chain subcommand\n";
    else
      std::cout << "A^3 != 0; the subgroup is not normalized by translations "
                   "and the quadratic-form classification does not apply\n";
    return kExitDomain;
  }

  // span of A*A; classification needs dim(A^2) <= 1
  RowSpan span(p, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) span.insert(a.basis_product(i, j));
  if (span.dim() > 1) {
    std::cout << "dim(A^2) = " << span.dim()
              << " > 1; only dim(A^2) <= 1 is classifiable here\n";
    return kExitDomain;
  }

  // move the spanning product (if any) onto the last basis vector
  FpMatrix c_mat = FpMatrix::identity(p, n);
  if (span.dim() == 1) {
    Vec w = span.basis()[0];
    RowSpan filled(p, n);
    filled.insert(w);
    std::vector<Vec> columns;
    for (int i = 0; i < n; ++i) {
      Vec e = unit_vec(static_cast<std::size_t>(n), static_cast<std::size_t>(i));
      if (filled.insert(e)) columns.push_back(e);
    }
    columns.push_back(w);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        c_mat.entry(i, j) = columns[static_cast<std::size_t>(j)]
                                  [static_cast<std::size_t>(i)];
  }
  FpMatrix c_inv = c_mat.inverse();

  // transported tensor: products of the new basis, in the new coordinates
  std::vector<std::uint32_t> tensor;
  tensor.reserve(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec prod = c_inv.apply(a.multiply(c_mat.col(i), c_mat.col(j)));
      for (int k = 0; k < n; ++k) tensor.push_back(prod[static_cast<std::size_t>(k)]);
    }
  NilpotentAlgebra shaped(p, n, tensor);
  std::optional<FpMatrix> phi = rank1_form_of(shaped);
  if (!phi) {
    std::cout << "products do not define a symmetric form on the chosen "
                 "basis; not classifiable\n";
    return kExitDomain;
  }

  FormClass fc = classify_form(*phi);
  FpMatrix subgroup_map = fc.subgroup_change_of_basis() * c_inv;
  std::uint64_t stab = stabilizer_order(p, n, fc.k, fc.label);
  std::uint64_t count = hgs_count(p, n, fc.k, fc.label);

  std::cout << "k = " << fc.k << '\n';
  std::cout << "case: " << to_string(fc.label) << '\n';
  std::cout << "tail s = " << fc.tail << " (scale " << fc.scale << ")\n";
  std::cout << "normal form diag entries:";
  FpMatrix nf = fc.normal_form();
  for (int i = 0; i < n; ++i) std::cout << ' ' << nf.at(i, i);
  std::cout << '\n';
  std::cout << "subgroup change of basis (maps this subgroup onto the "
               "representative):\n";
  print_matrix(subgroup_map, "  ");
  std::cout << "stabilizer order: " << stab << '\n';
  std::cout << "structures in this class: " << count << '\n';

  std::uint64_t size = small_pow(p, static_cast<unsigned>(n));
  if (size <= 4096) {
    NilpotentAlgebra rep_algebra =
        fc.k == 0 ? zero_algebra(n, p)
                  : rank1_algebra(representative_form(p, n, fc.k, fc.label));
    bool match = RegularSubgroup(a).conjugated(subgroup_map).canonical_key() ==
                 RegularSubgroup(rep_algebra).canonical_key();
    std::cout << "change of basis verified against the representative "
                 "subgroup: "
              << yes_no(match) << '\n';
    if (!match) return kExitDomain;
  }

  if (!o.out.empty())
    hgsio::write_json_file(
        o.out, hgsio::classification_to_json(fc, subgroup_map, stab, count));
  return kExitOk;
}

// ------------------------------------------------------------------- count

struct CountOpts {
  std::uint32_t p = 0;
  int n = 0;
  std::string verify_budget;
  int workers = 1;
  std::string out;
};

int run_count(const CountOpts& o) {
  CountTable table = count_table(o.p, o.n);
  std::cout << "regular subgroup classes for n = " << o.n << ", p = " << o.p
            << "  (|GL| = " << gl_order(o.n, o.p) << ")\n";
  std::cout << "  k  case         tail  stabilizer      count\n";
  std::cout << "  0  zero            -  " << std::setw(10) << table.zero_stabilizer
            << "  " << std::setw(9) << 1 << "  (translations only)\n";

  std::vector<std::optional<std::uint64_t>> oracle_stabs(table.rows.size());
  bool any_mismatch = false;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const CountRow& r = table.rows[i];
    std::cout << "  " << r.k << "  " << std::left << std::setw(11)
              << to_string(r.label) << std::right << "  " << std::setw(4)
              << r.tail << "  " << std::setw(10) << r.stabilizer << "  "
              << std::setw(9) << r.count;
    if (!o.verify_budget.empty()) {
      oracle::EnumerationBudget budget;
      budget.max_elements = parse_budget(o.verify_budget);
      budget.workers = o.workers;
      try {
        NilpotentAlgebra rep =
            rank1_algebra(representative_form(o.p, o.n, r.k, r.label));
        std::uint64_t measured =
            oracle::stabilizer_size(RegularSubgroup(rep), budget);
        oracle_stabs[i] = measured;
        if (measured == r.stabilizer) {
          std::cout << "  [oracle agrees: stabilizer " << measured << "]";
        } else {
          std::cout << "  [ORACLE MISMATCH: stabilizer " << measured << "]";
          any_mismatch = true;
        }
      } catch (const std::invalid_argument&) {
        std::cout << "  [formula only: budget too small for this sweep]";
      }
    }
    std::cout << '\n';
  }
  std::cout << "total (nonzero classes): " << table.total << '\n';
  if (o.n == 4) {
    std::uint64_t p9 = small_pow(o.p, 9);
    std::cout << "exceeds p^9 = " << p9 << ": "
              << yes_no(table.total > p9) << '\n';
  }
  if (!o.out.empty())
    hgsio::write_json_file(o.out,
                           hgsio::count_table_to_json(table, oracle_stabs));
  return any_mismatch ? kExitDomain : kExitOk;
}

// ------------------------------------------------------------------- chain

struct ChainOpts {
  std::uint32_t p = 0;
  int n = 0;
  int workers = 1;
  std::string verify_budget = "1e8";
  std::string out;
};

int run_chain(const ChainOpts& o) {
  validate_modulus(o.p);
  if (o.n < 1) throw std::invalid_argument("chain: need n >= 1");
  if (o.p <= static_cast<std::uint32_t>(o.n)) {
    std::cout << "requires p > n (got p = " << o.p << ", n = " << o.n << ")\n";
    return kExitDomain;
  }
  std::uint64_t size = small_pow(o.p, static_cast<unsigned>(o.n));
  if (size > 2048) {
    std::cout << "p^n = " << size << " too large to tabulate (cap 2048)\n";
    return kExitDomain;
  }
  std::cout << "chain family: n = " << o.n << ", p = " << o.p
            << " (p > n holds)\n";

  std::vector<Vec> b_table(size), b_inv_table(size);
  for_each_vec(o.n, o.p, [&](const Vec& r) {
    std::uint64_t rr = rank_of_vec(r, o.p);
    b_table[rr] = chain::b_map(o.n, o.p, r);
    b_inv_table[rr] = chain::b_inverse(o.n, o.p, r);
    return true;
  });
  std::cout << "b and b_inverse tabulated over " << size
            << " vectors (each b_inverse is round-trip checked)\n";

  if (o.n == 3) {
    bool closed_ok = true;
    for_each_vec(3, o.p, [&](const Vec& r) {
      if (chain::b3_closed(o.p, r) != b_table[rank_of_vec(r, o.p)] ||
          chain::b3_inverse_closed(o.p, r) != b_inv_table[rank_of_vec(r, o.p)])
        closed_ok = false;
      return closed_ok;
    });
    std::cout << "closed forms for n = 3 match the generic tables: "
              << yes_no(closed_ok) << '\n';
    if (!closed_ok) return kExitDomain;
  }

  chain::AlphaReport rep = chain::alpha_checks(o.n, o.p);
  std::cout << "alpha family over " << size << " parameters:\n";
  std::cout << "  b bijective: " << yes_no(rep.b_bijective) << '\n';
  std::cout << "  b homomorphism (b(r+r') = b(r) o b(r')): "
            << yes_no(rep.b_homomorphism) << '\n';
  std::cout << "  permutations pairwise distinct: " << yes_no(rep.distinct)
            << '\n';
  std::cout << "  regular (orbit of 0 covers everything once): "
            << yes_no(rep.regular) << '\n';
  std::cout << "  group law alpha(g)alpha(h) = alpha(g+h): "
            << yes_no(rep.group_law) << '\n';
  std::cout << "  normalized by translations: " << yes_no(rep.normalized)
            << '\n';

  bool stab_ok = true;
  std::uint64_t gl = gl_order(o.n, o.p);
  std::uint64_t sweep_budget = parse_budget(o.verify_budget);
  if (gl <= sweep_budget) {
    oracle::EnumerationBudget budget;
    budget.max_elements = gl;
    budget.workers = o.workers;
    chain::StabilizerComparison cmp =
        chain::chain_stabilizer_check(o.n, o.p, budget);
    std::cout << "stabilizer: formula " << cmp.formula << ", measured "
              << cmp.measured << ", agree: " << yes_no(cmp.agree()) << '\n';
    stab_ok = cmp.agree();
  } else {
    std::cout << "stabilizer sweep skipped (|GL| = " << gl
              << " exceeds budget " << sweep_budget << ")\n";
  }

  if (chain_algebra(o.n, o.p).cube_is_zero())
    std::cout << "note: A^3 = 0 here, so the cube-zero descent route also "
                 "applies\n";

  if (!o.out.empty()) {
    json alpha = json::array();
    for_each_vec(o.n, o.p, [&](const Vec& g) {
      alpha.push_back(chain::alpha_perm(o.n, o.p, g));
      return true;
    });
    json doc = {{"p", o.p},
                {"n", o.n},
                {"b_table", hgsio::vec_table_to_json(b_table)},
                {"b_inverse_table", hgsio::vec_table_to_json(b_inv_table)},
                {"alpha", std::move(alpha)},
                {"checks",
                 {{"b_bijective", rep.b_bijective},
                  {"b_homomorphism", rep.b_homomorphism},
                  {"distinct", rep.distinct},
                  {"regular", rep.regular},
                  {"group_law", rep.group_law},
                  {"normalized", rep.normalized}}}};
    hgsio::write_json_file(o.out, doc);
  }
  return (rep.ok() && stab_ok) ? kExitOk : kExitDomain;
}

// ----------------------------------------------------------------- descent

struct DescentOpts {
  std::string path;
  std::string out;
};

int run_descent(const DescentOpts& o) {
  hgsio::LoadedAlgebra loaded = hgsio::read_algebra_file(o.path);
  const NilpotentAlgebra& a = loaded.algebra;
  std::uint32_t p = a.p();
  int n = static_cast<int>(a.dim());
  if (!a.validate().ok()) {
    std::cout << "algebra fails validation; run the validate subcommand\n";
    return kExitDomain;
  }

  descent::DescentDatum datum;
  if (a.cube_is_zero()) {
    datum = descent::descent_datum(a);
  } else if (is_chain_tensor(a)) {
    if (p <= static_cast<std::uint32_t>(n)) {
      std::cout << "requires p > n for the chain route (got p = " << p
                << ", n = " << n << ")\n";
      return kExitDomain;
    }
    datum = descent::chain_descent_datum(n, p);
  } else {
    std::cout << "A^3 != 0 and the algebra is not a chain; descent data is "
                 "out of scope\n";
    return kExitDomain;
  }

  std::cout << "family: " << descent::to_string(datum.family) << '\n';
  std::cout << "group size: " << datum.size() << '\n';
  std::cout << "coefficient constraint: " << datum.coefficient_constraint
            << '\n';
  std::cout << "conjugation rows verified against literal conjugation: yes\n";
  std::cout << "evaluation map verified (each element maps to 0): yes\n";
  if (!o.out.empty()) {
    hgsio::write_json_file(o.out, hgsio::descent_to_json(datum));
    std::cout << "descent datum written to " << o.out << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------ oracle

struct OracleOpts {
  std::string path;
  std::string max_elements = "1e7";
  int workers = 1;
  std::string out;
};

int run_oracle_orbit(const OracleOpts& o, bool stabilizer_only) {
  hgsio::LoadedAlgebra loaded = hgsio::read_algebra_file(o.path);
  const NilpotentAlgebra& a = loaded.algebra;
  oracle::EnumerationBudget budget;
  budget.max_elements = parse_budget(o.max_elements);
  budget.workers = o.workers;
  RegularSubgroup t(a);
  std::uint64_t gl = gl_order(static_cast<int>(a.dim()), a.p());
  json doc = {{"p", a.p()}, {"n", a.dim()}, {"gl_order", gl}};
  if (stabilizer_only) {
    std::uint64_t stab = oracle::stabilizer_size(t, budget);
    std::cout << "stabilizer size: " << stab << '\n';
    std::cout << "orbit size (|GL| / stabilizer): " << gl / stab << '\n';
    doc["stabilizer"] = stab;
    doc["orbit"] = gl / stab;
  } else {
    oracle::OrbitResult res = oracle::orbit_size(t, budget);
    std::cout << "orbit size: " << res.orbit << '\n';
    std::cout << "stabilizer size: " << res.stabilizer << '\n';
    doc["orbit"] = res.orbit;
    doc["stabilizer"] = res.stabilizer;
  }
  std::cout << "|GL| = " << gl << '\n';
  if (!o.out.empty()) hgsio::write_json_file(o.out, doc);
  return kExitOk;
}

struct GoOpts {
  int k = 0;
  std::uint32_t p = 0;
  std::string case_name;
  std::int64_t tail = -1;  // -1: derive from the case
  std::string out;
};

int run_oracle_go(const GoOpts& o) {
  QFormCase label;
  if (o.case_name == "odd")
    label = QFormCase::Odd;
  else if (o.case_name == "even-plus")
    label = QFormCase::EvenPlus;
  else if (o.case_name == "even-minus")
    label = QFormCase::EvenMinus;
  else
    throw hgsio::ParseError("unknown case \"" + o.case_name +
                            "\" (expected odd, even-plus, or even-minus)");
  std::uint32_t tail;
  if (o.tail >= 0) {
    tail = static_cast<std::uint32_t>(o.tail);
  } else if (label == QFormCase::Odd) {
    tail = 1;
  } else {
    tail = tail_for_even_type(o.k, o.p, label);
  }
  std::uint64_t formula = go_order(o.k, o.p, label);
  std::uint64_t brute = oracle::orthogonal_count(o.k, o.p, tail);
  std::cout << "orthogonal group of diag(1,...,1," << tail << "), k = " << o.k
            << ", p = " << o.p << ", case " << to_string(label) << '\n';
  std::cout << "closed formula: " << formula << '\n';
  std::cout << "brute-force count: " << brute << '\n';
  std::cout << "agree: " << yes_no(formula == brute) << '\n';
  if (!o.out.empty())
    hgsio::write_json_file(o.out, json{{"k", o.k},
                                       {"p", o.p},
                                       {"case", to_string(label)},
                                       {"tail", tail},
                                       {"formula", formula},
                                       {"brute_force", brute}});
  return formula == brute ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "regular affine subgroups from commutative nilpotent algebras: "
      "validation, classification, counting, chain construction, descent "
      "data, and brute-force oracles"};
  app.require_subcommand(1);
  int rc = kExitOk;

  ValidateOpts vo;
  CLI::App* validate =
      app.add_subcommand("validate", "check the algebra axioms of a file");
  validate->add_option("path", vo.path, "algebra file (JSON)")->required();
  validate->add_option("--seed", vo.seed, "seed for sampled checks");
  validate->callback([&] { rc = guarded([&] { return run_validate(vo); }); });

  ClassifyOpts co;
  CLI::App* classify = app.add_subcommand(
      "classify", "quadratic-form class of a cube-zero algebra");
  classify->add_option("path", co.path, "algebra file (JSON)")->required();
  classify->add_option("--out", co.out, "write the classification as JSON");
  classify->callback([&] { rc = guarded([&] { return run_classify(co); }); });

  CountOpts no;
  CLI::App* count = app.add_subcommand(
      "count", "per-class structure counts from the closed formulas");
  count->add_option("--p", no.p, "odd prime modulus")->required();
  count->add_option("--n", no.n, "dimension (>= 2)")->required();
  count->add_option("--verify-budget", no.verify_budget,
                    "verify each row with the oracle, given this element "
                    "budget (e.g. 2e4)");
  count->add_option("--workers", no.workers, "oracle worker threads");
  count->add_option("--out", no.out, "write the table as JSON");
  count->callback([&] { rc = guarded([&] { return run_count(no); }); });

  ChainOpts ho;
  CLI::App* chain_cmd = app.add_subcommand(
      "chain", "exponential-coordinate construction for the chain algebra");
  chain_cmd->add_option("--p", ho.p, "odd prime modulus, must exceed n")
      ->required();
  chain_cmd->add_option("--n", ho.n, "dimension")->required();
  chain_cmd->add_option("--workers", ho.workers, "oracle worker threads");
  chain_cmd->add_option("--verify-budget", ho.verify_budget,
                        "largest |GL| the stabilizer sweep may visit");
  chain_cmd->add_option("--out", ho.out, "write b, b_inverse, alpha tables");
  chain_cmd->callback([&] { rc = guarded([&] { return run_chain(ho); }); });

  DescentOpts dopt;
  CLI::App* descent_cmd = app.add_subcommand(
      "descent", "conjugation and evaluation tables for the fixed ring");
  descent_cmd->add_option("path", dopt.path, "algebra file (JSON)")->required();
  descent_cmd->add_option("--out", dopt.out, "write the descent datum as JSON");
  descent_cmd->callback(
      [&] { rc = guarded([&] { return run_descent(dopt); }); });

  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "brute-force enumeration checks");
  oracle_cmd->require_subcommand(1);

  OracleOpts orb;
  CLI::App* orbit = oracle_cmd->add_subcommand(
      "orbit", "conjugation orbit of the subgroup under the full linear group");
  orbit->add_option("path", orb.path, "algebra file (JSON)")->required();
  orbit->add_option("--max-elements", orb.max_elements,
                    "largest |GL| the sweep may visit");
  orbit->add_option("--workers", orb.workers, "worker threads");
  orbit->add_option("--out", orb.out, "write the result as JSON");
  orbit->callback(
      [&] { rc = guarded([&] { return run_oracle_orbit(orb, false); }); });

  OracleOpts stb;
  CLI::App* stab = oracle_cmd->add_subcommand(
      "stabilizer", "stabilizer of the subgroup under conjugation");
  stab->add_option("path", stb.path, "algebra file (JSON)")->required();
  stab->add_option("--max-elements", stb.max_elements,
                   "largest |GL| the sweep may visit");
  stab->add_option("--workers", stb.workers, "worker threads");
  stab->add_option("--out", stb.out, "write the result as JSON");
  stab->callback(
      [&] { rc = guarded([&] { return run_oracle_orbit(stb, true); }); });

  GoOpts go;
  CLI::App* gocmd = oracle_cmd->add_subcommand(
      "go", "orthogonal group order: closed formula vs column backtracking");
  gocmd->add_option("--k", go.k, "form rank (>= 1)")->required();
  gocmd->add_option("--p", go.p, "odd prime modulus")->required();
  gocmd->add_option("--case", go.case_name, "odd | even-plus | even-minus")
      ->required();
  gocmd->add_option("--tail", go.tail,
                    "override the trailing diagonal entry of the form");
  gocmd->add_option("--out", go.out, "write the result as JSON");
  gocmd->callback([&] { rc = guarded([&] { return run_oracle_go(go); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  return rc;
}
