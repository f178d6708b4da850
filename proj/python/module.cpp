#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "khtangle/arc_algebra.hpp"
#include "khtangle/gluing.hpp"
#include "khtangle/hochschild.hpp"
#include "khtangle/tangle_complex.hpp"
#include "khtangle/tgl.hpp"

namespace py = pybind11;
using namespace khtangle;

namespace {

// {(h, q): (free rank, [torsion...])}
py::dict to_dict(const BigradedHomology& H) {
  py::dict d;
  for (const auto& [hq, g] : H) {
    py::list tors;
    for (const auto& t : g.torsion) tors.append(py::int_(py::str(t.get_str())));
    d[py::make_tuple(hq.first, hq.second)] = py::make_tuple(g.free_rank, tors);
  }
  return d;
}

py::list pairs_of(const CrossinglessMatching& m) {
  py::list l;
  for (auto [i, j] : m.pairs()) l.append(py::make_tuple(i, j));
  return l;
}

}  // namespace

PYBIND11_MODULE(khtangle, m) {
  m.doc() = "Khovanov arc algebras, tangle complexes and their homology";

  py::register_exception<DiagramError>(m, "DiagramError", PyExc_ValueError);

  m.def("catalan", &catalan);
  m.def(
      "matchings",
      [](int n) {
        py::list out;
        for (const auto& mt : enumerate_matchings(n)) out.append(pairs_of(mt));
        return out;
      },
      py::arg("n"));

  py::class_<TangleDiagram>(m, "Tangle")
      .def_static("from_file", &read_tangle_file, py::arg("path"))
      .def_static("from_text", &tangle_from_tgl, py::arg("text"))
      .def_static("from_slices", &tangle_from_slices, py::arg("left_points"), py::arg("word"))
      .def_static("identity", &TangleDiagram::identity, py::arg("n"))
      .def_property_readonly("m", &TangleDiagram::m)
      .def_property_readonly("n", &TangleDiagram::n)
      .def_property_readonly("crossings", &TangleDiagram::num_crossings)
      .def("writhe_counts", &TangleDiagram::writhe_counts)
      .def("to_text", [](const TangleDiagram& t) { return write_tgl(t.spec()); })
      .def(
          "then",
          [](const TangleDiagram& a, const TangleDiagram& b) { return compose_tangles(a, orient_to_match(a, b)); },
          py::arg("other"), "Compose, reversing components of `other` where needed.")
      .def("reordered", &TangleDiagram::with_crossing_order, py::arg("perm"));

  m.def("arc_algebra_rank", [](int n) { return ArcAlgebra(n).rank(); }, py::arg("n"));
  m.def(
      "verify_arc_algebra", [](int n, int jobs) { return verify_algebra(ArcAlgebra(n), jobs).ok(); }, py::arg("n"),
      py::arg("jobs") = 1);

  py::class_<KhComplex>(m, "Complex")
      .def(py::init<const TangleDiagram&, int>(), py::arg("tangle"), py::arg("jobs") = 1)
      .def("__len__", &KhComplex::size)
      .def_property_readonly("n_plus", &KhComplex::n_plus)
      .def_property_readonly("n_minus", &KhComplex::n_minus)
      .def("verify", [](const KhComplex& K, int jobs) { return verify_complex(K, jobs).ok(); }, py::arg("jobs") = 1)
      .def(
          "homology", [](const KhComplex& K, int jobs) { return to_dict(complex_homology(K, jobs)); },
          py::arg("jobs") = 1)
      .def(
          "homology_text", [](const KhComplex& K, int jobs) { return format_homology(complex_homology(K, jobs)); },
          py::arg("jobs") = 1)
      .def(
          "block_homology",
          [](const KhComplex& K, int a, int b, int jobs) { return to_dict(block_homology(K, a, b, jobs)); },
          py::arg("a"), py::arg("b"), py::arg("jobs") = 1)
      .def(
          "coherent",
          [](const KhComplex& K) {
            for (int a = 0; a < static_cast<int>(K.left_matchings().size()); ++a)
              for (int b = 0; b < static_cast<int>(K.right_matchings().size()); ++b)
                if (!K.cube(a, b).check_all().ok()) return false;
            return true;
          })
      .def(
          "hochschild",
          [](const KhComplex& K, int k, int jobs) {
            const auto H = hochschild_homology(K, k, jobs);
            py::list out;
            for (const auto& per_q : H.groups) {
              py::dict d;
              for (const auto& [q, g] : per_q) {
                py::list tors;
                for (const auto& t : g.torsion) tors.append(py::int_(py::str(t.get_str())));
                d[py::int_(q)] = py::make_tuple(g.free_rank, tors);
              }
              out.append(d);
            }
            return out;
          },
          py::arg("k"), py::arg("jobs") = 1);

  m.def(
      "glue",
      [](const TangleDiagram& a, const TangleDiagram& b, int jobs) {
        const auto r = glue(a, orient_to_match(a, b), jobs);
        py::dict d;
        d["ok"] = r.report.ok();
        d["tensor_rank"] = r.report.tensor_rank;
        d["composite_rank"] = r.report.composite_rank;
        d["problems"] = r.report.problems;
        return d;
      },
      py::arg("first"), py::arg("second"), py::arg("jobs") = 1);
}
