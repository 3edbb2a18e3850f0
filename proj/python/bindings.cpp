#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "latfm/error.hpp"
#include "latfm/finite_form.hpp"
#include "latfm/fm_count.hpp"
#include "latfm/isometry_oracle.hpp"
#include "latfm/json_io.hpp"
#include "latfm/mukai.hpp"
#include "latfm/rank2_family.hpp"
#include "latfm/selftest.hpp"

namespace py = pybind11;
using namespace latfm;

namespace {

py::object to_py(const Integer& x) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

Integer from_py(const py::handle& h) { return Integer(py::str(py::int_(py::reinterpret_borrow<py::object>(h)))); }

IntMatrix matrix_from_py(const py::sequence& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : py::len(rows[0]);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    py::sequence row = rows[i];
    if (py::len(row) != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = from_py(row[j]);
  }
  return m;
}

py::list matrix_to_py(const IntMatrix& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_py(m(i, j)));
    out.append(row);
  }
  return out;
}

// Integers that were written as strings come back as Python ints.
py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
      return to_py(integer_from_json(j));
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& x : j) out.append(json_to_py(x));
      return out;
    }
    default: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
      return out;
    }
  }
}

py::tuple signature_py(const Signature& s) { return py::make_tuple(s.plus, s.minus); }

py::tuple mukai_py(const MukaiVector& v) { return py::make_tuple(to_py(v.r), to_py(v.h_mult), to_py(v.s)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lattice and discriminant-form computations for Fourier-Mukai partners";

  static py::exception<Error> latfm_error(m, "LatfmError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(latfm_error.ptr())(py::str(e.what()));
      exc.attr("code") = py::str(std::string(to_string(e.code())));
      exc.attr("detail") = py::str(e.detail());
      PyErr_SetObject(latfm_error.ptr(), exc.ptr());
    }
  });

  m.def("distinct_prime_count", &distinct_prime_count, py::arg("d"));
  m.def(
      "fm_count", [](std::uint64_t d) { return fm_count_rho1(PolarizationDegree(d)); }, py::arg("d"),
      "Number of Fourier-Mukai partners of a K3 surface of degree 2d and Picard number one.");
  m.def(
      "fm_count_via_cosets", [](std::uint64_t d) { return fm_count_rho1_via_cosets(PolarizationDegree(d)); },
      py::arg("d"));
  m.def(
      "orthogonal_group_order",
      [](std::uint64_t d) { return units_with_square_one(Integer(2) * Integer(static_cast<unsigned long>(d))).size(); },
      py::arg("d"), "|O(A)| for the rank-one lattice <2d>.");

  m.def("k3_gram", [] { return matrix_to_py(k3_lattice().gram()); });
  m.def("mukai_gram", [] { return matrix_to_py(mukai_lattice().gram()); });
  m.def(
      "determinant", [](const py::sequence& g) { return to_py(Lattice(matrix_from_py(g)).determinant()); },
      py::arg("gram"));
  m.def(
      "signature", [](const py::sequence& g) { return signature_py(Lattice(matrix_from_py(g)).signature()); },
      py::arg("gram"));
  m.def(
      "discriminant_module",
      [](const py::sequence& g) { return json_to_py(module_to_json(discriminant_module(Lattice(matrix_from_py(g))))); },
      py::arg("gram"), "Discriminant form as {'factors', 'q', 'b'} with rationals as 'a/b' strings.");
  m.def(
      "modules_isometric",
      [](const py::sequence& g1, const py::sequence& g2) {
        const auto a = discriminant_module(Lattice(matrix_from_py(g1)));
        const auto b = discriminant_module(Lattice(matrix_from_py(g2)));
        return is_isometric_modules(a, b).has_value();
      },
      py::arg("gram1"), py::arg("gram2"));

  m.def(
      "find_isometry",
      [](const py::sequence& g1, const py::sequence& g2, long entry_bound, std::uint64_t node_limit) {
        const auto r =
            find_isometry_bounded(Lattice(matrix_from_py(g1)), Lattice(matrix_from_py(g2)), {entry_bound, node_limit});
        py::dict out;
        out["outcome"] = std::string(to_string(r.outcome));
        out["witness"] = r.witness ? py::object(matrix_to_py(r.witness->matrix)) : py::none();
        out["nodes"] = r.nodes;
        out["node_limit_hit"] = r.node_limit_hit;
        return out;
      },
      py::arg("gram1"), py::arg("gram2"), py::arg("entry_bound") = SearchBudget{}.entry_bound,
      py::arg("node_limit") = SearchBudget{}.node_limit);

  m.def(
      "mukai_vectors",
      [](std::uint64_t d) {
        py::list out;
        for (const auto& v : enumerate_mukai_vectors(PolarizationDegree(d))) out.append(mukai_py(v));
        return out;
      },
      py::arg("d"), "Isotropic vectors (r, h, s) with r*s = d, one per split of the prime-power blocks.");
  m.def(
      "mukai_classes",
      [](std::uint64_t d) {
        py::list out;
        for (const auto& c : distinct_classes(enumerate_mukai_vectors(PolarizationDegree(d)))) {
          py::list members;
          for (const auto& v : c.members) members.append(mukai_py(v));
          out.append(members);
        }
        return out;
      },
      py::arg("d"));
  m.def(
      "moduli_shadow",
      [](const py::object& r, const py::object& h, const py::object& s, std::uint64_t d) {
        const ModuliShadow sh = moduli_lattice_shadow(MukaiVector{from_py(r), from_py(h), from_py(s), d});
        py::dict out;
        out["gram"] = matrix_to_py(sh.quotient.lattice.gram());
        out["signature"] = signature_py(sh.quotient.lattice.signature());
        out["determinant"] = to_py(sh.quotient.lattice.determinant());
        out["ns_square"] = to_py(sh.ns_square);
        out["transcendental_is_ns_complement"] = sh.transcendental_is_ns_complement;
        out["transcendental_matches_tx"] = sh.transcendental_matches_tx;
        return out;
      },
      py::arg("r"), py::arg("h"), py::arg("s"), py::arg("d"));

  m.def(
      "member_gram", [](std::uint64_t d, std::uint64_t n) { return matrix_to_py(make_member(d, n).lattice.gram()); },
      py::arg("d"), py::arg("n"));
  m.def(
      "disc_iso_alpha",
      [](std::uint64_t d1, std::uint64_t d2, std::uint64_t n) -> py::object {
        if (auto w = disc_groups_isomorphic(d1, n, d2, n)) return py::int_(w->alpha);
        return py::none();
      },
      py::arg("d1"), py::arg("d2"), py::arg("n"));
  m.def(
      "necessary_conditions",
      [](std::uint64_t d1, std::uint64_t d2, std::uint64_t n) {
        const auto c = isometry_necessary_conditions(d1, d2, n);
        py::dict out;
        out["a2"] = c.a2;
        out["b2"] = c.b2;
        out["certified_non_isometric"] = c.certificate.has_value();
        return out;
      },
      py::arg("d1"), py::arg("d2"), py::arg("n"));
  m.def("least_odd_prime_above", &least_odd_prime_above, py::arg("x"));
  m.def(
      "build_family",
      [](std::uint64_t count, std::uint64_t d, const std::string& ambient) {
        if (ambient != "k3" && ambient != "abelian")
          throw Error(ErrorCode::InvalidArgument, "ambient must be 'k3' or 'abelian'");
        return json_to_py(family_to_json(build_family(count, d, ambient == "k3" ? Ambient::K3 : Ambient::Abelian)));
      },
      py::arg("count"), py::arg("d"), py::arg("ambient") = "k3",
      "The family bundle in the same layout as `latfm family --json`.");
  m.def(
      "polarization_orbits",
      [](std::uint64_t d) {
        py::list out;
        for (const auto& [a, b] : polarization_orbits_in_U(d).representatives) out.append(py::make_tuple(to_py(a), to_py(b)));
        return out;
      },
      py::arg("d"));

  m.def(
      "selftest",
      [](std::uint64_t range_d) {
        std::vector<ClaimResult> results;
        {
          py::gil_scoped_release release;
          results = run_selftest(SelftestOptions{range_d, false});
        }
        py::list out;
        for (const auto& c : results) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["detail"] = c.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("range_d") = 200);
}
