#include "latfm/json_io.hpp"

#include <sstream>

#include "latfm/error.hpp"

namespace latfm {

Json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer out;
    if (out.set_str(j.get<std::string>(), 10) != 0)
      throw Error(ErrorCode::InvalidArgument, "not an integer: " + j.get<std::string>());
    return out;
  }
  throw Error(ErrorCode::InvalidArgument, "expected an integer, got " + j.dump());
}

std::string rational_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw Error(ErrorCode::InvalidArgument, "not a rational: " + s);
  q.canonicalize();
  return q;
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::InvalidArgument, "matrix must be a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  IntMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw Error(ErrorCode::NotSquare, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer_from_json(j[r][c]);
  }
  return m;
}

Json lattice_to_json(const Lattice& l) {
  Json out;
  out["rank"] = l.rank();
  out["gram"] = matrix_to_json(l.gram());
  return out;
}

Lattice lattice_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("gram")) throw Error(ErrorCode::InvalidArgument, "lattice needs a gram field");
  Lattice l(matrix_from_json(j["gram"]));
  if (j.contains("rank") && j["rank"].get<std::size_t>() != l.rank())
    throw Error(ErrorCode::DimensionMismatch, "rank field disagrees with the Gram matrix");
  return l;
}

Json module_to_json(const FiniteQuadraticModule& m) {
  Json out;
  Json factors = Json::array();
  for (const auto& f : m.factors()) factors.push_back(integer_to_json(f));
  out["factors"] = std::move(factors);
  if (m.has_q()) {
    Json q = Json::array();
    for (const auto& v : m.q_values()) q.push_back(rational_to_string(v));
    out["q"] = std::move(q);
  }
  Json b = Json::array();
  for (const auto& row : m.b_values()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(rational_to_string(v));
    b.push_back(std::move(r));
  }
  out["b"] = std::move(b);
  return out;
}

FiniteQuadraticModule module_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("factors") || !j.contains("b"))
    throw Error(ErrorCode::InvalidArgument, "module needs factors and b");
  std::vector<Integer> factors;
  for (const auto& f : j["factors"]) factors.push_back(integer_from_json(f));
  std::optional<std::vector<Rational>> q;
  if (j.contains("q")) {
    q.emplace();
    for (const auto& v : j["q"]) q->push_back(rational_from_string(v.get<std::string>()));
  }
  std::vector<std::vector<Rational>> b;
  for (const auto& row : j["b"]) {
    auto& r = b.emplace_back();
    for (const auto& v : row) r.push_back(rational_from_string(v.get<std::string>()));
  }
  return FiniteQuadraticModule(std::move(factors), std::move(q), std::move(b));
}

Json module_isometry_to_json(const ModuleIsometry& f) { return matrix_to_json(f.matrix); }

Json family_to_json(const FamilyBundle& f) {
  Json out;
  out["count"] = f.count;
  out["d"] = f.d;
  out["degree"] = 2 * f.d;
  out["n"] = f.n;
  out["ambient"] = std::string(to_string(f.ambient));
  Json members = Json::array();
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    const auto& m = f.members[i];
    Json j;
    j["index"] = i;
    j["d"] = m.d;
    j["n"] = m.n;
    j["lattice"] = lattice_to_json(m.lattice);
    j["embedding"] = matrix_to_json(m.embedding.basis());
    j["module"] = module_to_json(m.closed_form);
    Json gen = Json::array();
    for (const auto& x : m.closed_form_generator) gen.push_back(rational_to_string(x));
    j["generator"] = std::move(gen);
    j["matches_snf"] = m.matches_snf;
    j["represents_zero"] = static_cast<bool>(f.represents_zero[i]);
    members.push_back(std::move(j));
  }
  out["members"] = std::move(members);
  Json witnesses = Json::array();
  for (const auto& w : f.witnesses)
    witnesses.push_back({{"i", w.i}, {"j", w.j}, {"d1", w.witness.d1}, {"d2", w.witness.d2}, {"alpha", w.witness.alpha}});
  out["witnesses"] = std::move(witnesses);
  Json certs = Json::array();
  for (const auto& c : f.certificates)
    certs.push_back({{"i", c.i},
                     {"j", c.j},
                     {"d1", c.certificate.d1},
                     {"d2", c.certificate.d2},
                     {"n", c.certificate.n},
                     {"difference_residue", c.certificate.difference_residue},
                     {"product_residue", c.certificate.product_residue}});
  out["certificates"] = std::move(certs);
  Json atts = Json::array();
  for (const auto& a : f.attestations)
    atts.push_back({{"i", a.i},
                    {"j", a.j},
                    {"rank", a.attestation.rank},
                    {"signature", {a.attestation.signature.plus, a.attestation.signature.minus}},
                    {"length", a.attestation.length},
                    {"disc_iso", module_isometry_to_json(a.attestation.disc_iso)}});
  out["attestations"] = std::move(atts);
  out["has_degree_polarization"] = f.has_degree_polarization;
  return out;
}

IntMatrix parse_gram(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, std::string("bad Gram JSON: ") + e.what());
    }
    if (j.is_object()) {
      if (!j.contains("gram")) throw Error(ErrorCode::InvalidArgument, "lattice JSON needs a gram field");
      return matrix_from_json(j["gram"]);
    }
    return matrix_from_json(j);
  }
  std::vector<IntVector> rows;
  std::stringstream rows_in(text);
  for (std::string row; std::getline(rows_in, row, ';');) {
    auto& r = rows.emplace_back();
    std::stringstream cells(row);
    for (std::string cell; std::getline(cells, cell, ',');) {
      Integer x;
      const auto a = cell.find_first_not_of(' ');
      const auto b = cell.find_last_not_of(' ');
      if (a == std::string::npos || x.set_str(cell.substr(a, b - a + 1), 10) != 0)
        throw Error(ErrorCode::InvalidArgument, "bad Gram entry '" + cell + "'");
      r.push_back(x);
    }
  }
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "empty Gram matrix");
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw Error(ErrorCode::NotSquare, "ragged Gram rows");
  return IntMatrix::from_rows(rows);
}

}  // namespace latfm
