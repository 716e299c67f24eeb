#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "treeverb/constructions.hpp"
#include "treeverb/dsl.hpp"
#include "treeverb/errors.hpp"
#include "treeverb/parity.hpp"
#include "treeverb/quotient.hpp"
#include "treeverb/selftest.hpp"

namespace py = pybind11;
using namespace treeverb;

namespace {

Vertex vertex_from_list(const std::vector<int>& letters, int degree) {
  Vertex v;
  for (int x : letters) {
    if (x < 1 || x > degree) throw domain_error("vertex letter outside 1..degree");
    v.push_back(static_cast<uint8_t>(x - 1));
  }
  return v;
}

std::vector<int> vertex_to_list(const Vertex& v) {
  std::vector<int> out;
  for (uint8_t x : v) out.push_back(x + 1);
  return out;
}

std::string classify_text(const TreeAutomorphism& g) {
  const auto k = classify_chain(g);
  return k ? "M" + std::to_string(*k) : "trivial";
}

}  // namespace

PYBIND11_MODULE(_treeverb, m) {
  m.doc() = "finite-state automorphisms of the d-adic rooted tree";

  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
  py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);

  py::class_<TreeAutomorphism>(m, "Automorphism")
      .def_static("parse", &parse_automaton, py::arg("text"))
      .def_static("identity", &TreeAutomorphism::identity, py::arg("degree"))
      .def_static("adding_machine", &adding_machine, py::arg("degree"))
      .def_static(
          "rooted",
          [](const std::vector<int>& images) { return rooted(Permutation::from_one_based(images)); },
          py::arg("one_based_images"))
      .def_property_readonly("degree", &TreeAutomorphism::degree)
      .def_property_readonly("states", &TreeAutomorphism::state_count)
      .def("serialize", &serialize_automaton)
      .def(
          "apply",
          [](const TreeAutomorphism& g, const std::vector<int>& v) {
            return vertex_to_list(treeverb::apply(g, vertex_from_list(v, g.degree())));
          },
          py::arg("vertex"), "image of a vertex given as a list of 1-based letters")
      .def("section",
           [](const TreeAutomorphism& g, const std::vector<int>& v) {
             return section_at(g, vertex_from_list(v, g.degree()));
           })
      .def("parity", [](const TreeAutomorphism& g) { return parity_sequence(g).to_string(); })
      .def("classify", &classify_text, "largest chain subgroup, e.g. 'M3', or 'trivial'")
      .def("in_chain", &in_chain, py::arg("k"))
      .def("inverse", [](const TreeAutomorphism& g) { return inverse(g); })
      .def("conjugate", &conjugate, py::arg("x"))
      .def("commutator", &commutator, py::arg("h"))
      .def("power", &power, py::arg("n"))
      .def("in_stabilizer", &in_stabilizer, py::arg("level"))
      .def("is_level_transitive", &is_level_transitive, py::arg("max_level"))
      .def("congruent",
           [](const TreeAutomorphism& g, const TreeAutomorphism& h, int depth) {
             return truncate(g, depth) == truncate(h, depth);
           },
           py::arg("other"), py::arg("depth"))
      .def("is_identity", &TreeAutomorphism::is_identity)
      .def("__mul__",
           [](const TreeAutomorphism& g, const TreeAutomorphism& h) { return compose(g, h); })
      .def("__eq__",
           [](const TreeAutomorphism& g, const TreeAutomorphism& h) { return equals(g, h); })
      .def("__hash__",
           [](const TreeAutomorphism& g) { return py::hash(py::cast(serialize_automaton(g))); })
      .def("__repr__", [](const TreeAutomorphism& g) {
        std::ostringstream os;
        os << "Automorphism(degree=" << g.degree() << ", states=" << g.state_count() << ")";
        return os.str();
      });

  m.def("alt_exponent", &alt_exponent, py::arg("degree"));
  m.def(
      "decompose",
      [](const TreeAutomorphism& g, int depth) {
        const auto w = decompose_transitive_pair(g, depth);
        return py::make_tuple(w.u, w.y);
      },
      py::arg("g"), py::arg("depth"),
      "u, y with u * conjugate(u, y) congruent to g at the given depth");
  m.def(
      "commutator_form",
      [](const TreeAutomorphism& g, int depth) {
        const auto f = commutator_form(g, depth);
        return py::make_tuple(f.a, f.b);
      },
      py::arg("g"), py::arg("depth"));
  m.def("solve_conjugacy", &solve_conjugacy, py::arg("g"), py::arg("h"), py::arg("depth"));
  m.def(
      "order_two",
      [](const std::string& parity, int degree) {
        return order_two_rep(ParitySequence::parse(parity), degree);
      },
      py::arg("parity"), py::arg("degree"));
  m.def(
      "conjugator_to_odometer",
      [](const std::string& spine_text) {
        return conjugator_to_odometer(parse_spine_spec(spine_text));
      },
      py::arg("spine_text"));
  m.def(
      "verify_chain",
      [](int degree, int depth, size_t limit) {
        const auto r = verify_chain(degree, depth, limit);
        return py::make_tuple(r.all_pass(), r.to_string());
      },
      py::arg("degree"), py::arg("depth"), py::arg("limit") = size_t{0});
  m.def("selftest", [] {
    std::ostringstream os;
    const bool ok = run_selftest(os);
    return py::make_tuple(ok, os.str());
  });
}
