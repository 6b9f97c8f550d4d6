// hgs_io.hpp -- JSON file formats for the command-line tools.
//
// Algebra file: a self-describing document with integer entries only,
//   { "p": 5, "n": 3,
//     "structure": [[[...n ints...] x n] x n],      // e_i e_j coefficients
//     "family": {"kind": "rank1", "phi": [[...]]}    // or {"kind": "chain"}
//   }
// At least one of "structure" / "family" must be present; when both are,
// the derived tensor must match the explicit one.  Descent, classification,
// count, and chain reports are emitted as JSON documents that re-parse to
// the same in-memory values.
#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hgs/descent.hpp"
#include "hgs/form_class.hpp"

namespace hgsio {

using nlohmann::json;

// schema or syntax problem in an input document (CLI exit code 2)
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FamilyTag {
  std::string kind;                  // "rank1" | "chain"
  std::optional<hgs::FpMatrix> phi;  // present exactly for "rank1"
};

struct LoadedAlgebra {
  hgs::NilpotentAlgebra algebra;
  std::optional<FamilyTag> family;
};

// accept both unsigned and signed storage of a non-negative integer, so
// documents built programmatically load the same as parsed text
inline bool is_nonneg_int(const json& v) {
  if (v.is_number_unsigned()) return true;
  return v.is_number_integer() && v.get<long long>() >= 0;
}

inline json matrix_to_json(const hgs::FpMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline hgs::FpMatrix matrix_from_json(std::uint32_t p, const json& rows,
                                      const char* what) {
  if (!rows.is_array() || rows.empty())
    throw ParseError(std::string(what) + ": expected a non-empty array of rows");
  int r = static_cast<int>(rows.size());
  if (!rows[0].is_array())
    throw ParseError(std::string(what) + ": expected rows to be arrays");
  int c = static_cast<int>(rows[0].size());
  hgs::FpMatrix m(p, r, c);
  for (int i = 0; i < r; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != c)
      throw ParseError(std::string(what) + ": ragged rows");
    for (int j = 0; j < c; ++j) {
      const json& cell = row[static_cast<std::size_t>(j)];
      if (!is_nonneg_int(cell))
        throw ParseError(std::string(what) +
                         ": entries must be non-negative integers");
      m.entry(i, j) = cell.get<std::uint32_t>();
    }
  }
  return m;
}

inline json algebra_to_json(const hgs::NilpotentAlgebra& a,
                            const std::optional<FamilyTag>& family) {
  int n = static_cast<int>(a.dim());
  json structure = json::array();
  for (int i = 0; i < n; ++i) {
    json plane = json::array();
    for (int j = 0; j < n; ++j) {
      json cell = json::array();
      for (int k = 0; k < n; ++k) cell.push_back(a.structure(i, j, k));
      plane.push_back(std::move(cell));
    }
    structure.push_back(std::move(plane));
  }
  json doc = {{"p", a.p()}, {"n", n}, {"structure", std::move(structure)}};
  if (family) {
    json f = {{"kind", family->kind}};
    if (family->phi) f["phi"] = matrix_to_json(*family->phi);
    doc["family"] = std::move(f);
  }
  return doc;
}

inline LoadedAlgebra algebra_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("algebra file: expected a JSON object");
  if (!doc.contains("p") || !is_nonneg_int(doc["p"]))
    throw ParseError("algebra file: missing or non-integer \"p\"");
  if (!doc.contains("n") || !is_nonneg_int(doc["n"]))
    throw ParseError("algebra file: missing or non-integer \"n\"");
  std::uint32_t p = doc["p"].get<std::uint32_t>();
  int n = doc["n"].get<int>();
  if (n < 1 || n > 64) throw ParseError("algebra file: n out of range");
  bool has_structure = doc.contains("structure");
  bool has_family = doc.contains("family");
  if (!has_structure && !has_family)
    throw ParseError("algebra file: need \"structure\" or \"family\"");

  std::optional<hgs::NilpotentAlgebra> from_structure;
  if (has_structure) {
    const json& s = doc["structure"];
    if (!s.is_array() || static_cast<int>(s.size()) != n)
      throw ParseError("algebra file: \"structure\" must be an n-element array");
    std::vector<std::uint32_t> tensor;
    tensor.reserve(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i) {
      const json& plane = s[static_cast<std::size_t>(i)];
      if (!plane.is_array() || static_cast<int>(plane.size()) != n)
        throw ParseError("algebra file: \"structure\" rows must have n entries");
      for (int j = 0; j < n; ++j) {
        const json& cell = plane[static_cast<std::size_t>(j)];
        if (!cell.is_array() || static_cast<int>(cell.size()) != n)
          throw ParseError("algebra file: product vectors must have n entries");
        for (int k = 0; k < n; ++k) {
          const json& v = cell[static_cast<std::size_t>(k)];
          if (!is_nonneg_int(v))
            throw ParseError(
                "algebra file: structure entries must be non-negative integers");
          tensor.push_back(v.get<std::uint32_t>());
        }
      }
    }
    from_structure.emplace(p, n, tensor);
  }

  std::optional<FamilyTag> family;
  std::optional<hgs::NilpotentAlgebra> from_family;
  if (has_family) {
    const json& f = doc["family"];
    if (!f.is_object() || !f.contains("kind") || !f["kind"].is_string())
      throw ParseError("algebra file: \"family\" needs a string \"kind\"");
    std::string kind = f["kind"].get<std::string>();
    if (kind == "rank1") {
      if (!f.contains("phi"))
        throw ParseError("algebra file: rank1 family needs \"phi\"");
      hgs::FpMatrix phi = matrix_from_json(p, f["phi"], "phi");
      if (phi.rows() != n || phi.cols() != n)
        throw ParseError("algebra file: \"phi\" must be n x n");
      from_family.emplace(hgs::rank1_algebra(phi));
      family = FamilyTag{kind, phi};
    } else if (kind == "chain") {
      from_family.emplace(hgs::chain_algebra(n, p));
      family = FamilyTag{kind, std::nullopt};
    } else {
      throw ParseError("algebra file: unknown family kind \"" + kind + "\"");
    }
  }

  if (from_structure && from_family) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (from_structure->structure(i, j, k) !=
              from_family->structure(i, j, k))
            throw ParseError(
                "algebra file: explicit structure tensor does not match the "
                "declared family");
  }

  return LoadedAlgebra{from_structure ? std::move(*from_structure)
                                      : std::move(*from_family),
                       std::move(family)};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline LoadedAlgebra read_algebra_file(const std::string& path) {
  return algebra_from_json(read_json_file(path));
}

inline void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw ParseError("failed writing " + path);
}

inline json classification_to_json(const hgs::FormClass& fc,
                                   const hgs::FpMatrix& subgroup_map,
                                   std::uint64_t stabilizer,
                                   std::uint64_t count) {
  return {{"p", fc.p},
          {"n", fc.n},
          {"k", fc.k},
          {"case", hgs::to_string(fc.label)},
          {"tail", fc.tail},
          {"scale", fc.scale},
          {"normal_form", matrix_to_json(fc.normal_form())},
          {"form_change_of_basis", matrix_to_json(fc.change_of_basis)},
          {"subgroup_change_of_basis", matrix_to_json(subgroup_map)},
          {"stabilizer_order", stabilizer},
          {"count", count}};
}

inline json count_table_to_json(
    const hgs::CountTable& t,
    const std::vector<std::optional<std::uint64_t>>& oracle_stabilizers) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const hgs::CountRow& r = t.rows[i];
    json row = {{"k", r.k},
                {"case", hgs::to_string(r.label)},
                {"tail", r.tail},
                {"stabilizer", r.stabilizer},
                {"count", r.count}};
    if (i < oracle_stabilizers.size() && oracle_stabilizers[i])
      row["oracle_stabilizer"] = *oracle_stabilizers[i];
    rows.push_back(std::move(row));
  }
  json doc = {{"p", t.p},
              {"n", t.n},
              {"zero_stabilizer", t.zero_stabilizer},
              {"rows", std::move(rows)},
              {"total", t.total}};
  if (t.n == 4) {
    std::uint64_t p9 = hgs::small_pow(t.p, 9);
    doc["p_to_9"] = p9;
    doc["exceeds_p9"] = t.total > p9;
  }
  return doc;
}

inline json vec_table_to_json(const std::vector<hgs::Vec>& table) {
  json out = json::array();
  for (const hgs::Vec& v : table) out.push_back(v);
  return out;
}

inline json descent_to_json(const hgs::descent::DescentDatum& d) {
  return {{"p", d.p},
          {"n", d.n},
          {"family", hgs::descent::to_string(d.family)},
          {"coefficient_constraint", d.coefficient_constraint},
          {"conjugation", d.conjugation},
          {"evaluation", d.evaluation}};
}

inline hgs::descent::DescentDatum descent_from_json(const json& doc) {
  hgs::descent::DescentDatum d;
  try {
    d.p = doc.at("p").get<std::uint32_t>();
    d.n = doc.at("n").get<int>();
    std::string fam = doc.at("family").get<std::string>();
    if (fam == "cube-zero")
      d.family = hgs::descent::Family::CubeZero;
    else if (fam == "chain")
      d.family = hgs::descent::Family::Chain;
    else
      throw ParseError("descent file: unknown family \"" + fam + "\"");
    d.coefficient_constraint =
        doc.at("coefficient_constraint").get<std::string>();
    d.conjugation =
        doc.at("conjugation").get<std::vector<std::vector<std::uint64_t>>>();
    d.evaluation = doc.at("evaluation").get<std::vector<std::uint64_t>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("descent file: ") + e.what());
  }
  std::uint64_t size = hgs::small_pow(d.p, static_cast<unsigned>(d.n));
  if (d.evaluation.size() != size || d.conjugation.size() != size)
    throw ParseError("descent file: table sizes do not match p^n");
  for (const auto& row : d.conjugation)
    if (row.size() != size)
      throw ParseError("descent file: ragged conjugation table");
  return d;
}

}  // namespace hgsio
