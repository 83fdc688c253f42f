// Python bindings for the cochain-calculus engine: definition-file loading,
// the cochain operations (differential, cup, bracket, composition), the
// identity-check suites, truncated cohomology dimensions, and split
// extensions.  Thin by design — every object is a handle onto the C++
// engine, values cross the boundary as canonical polynomial strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cfh/algebra.hpp"
#include "cfh/cochain.hpp"
#include "cfh/cohomology.hpp"
#include "cfh/dsl.hpp"
#include "cfh/extension.hpp"
#include "cfh/gerstenhaber.hpp"

namespace py = pybind11;
using namespace cfh;

namespace {

// The engine hands out shared_ptr-to-const handles; pybind11 holders want
// non-const element types, so the handles ride inside small wrapper values.
struct PyAlgebra {
  AlgebraPtr p;
};

struct PyBimodule {
  BimodulePtr p;
};

struct PyExtension {
  SplitExtension e;
};

struct PyDefinition {
  DefinitionFile def;
  PyAlgebra algebra;
  std::optional<PyBimodule> bimodule;
  std::vector<std::pair<std::string, Cochain>> cochains;
};

PolyVector vector_from_strings(const std::vector<std::string>& entries) {
  PolyVector v((int)entries.size());
  for (int k = 0; k < (int)entries.size(); ++k) v[k] = parse_poly(entries[k]);
  return v;
}

PyDefinition load_text(const std::string& text) {
  DefinitionFile def = parse_definition(text);
  Materialized m = materialize(def);
  PyDefinition out;
  out.def = std::move(def);
  out.algebra = PyAlgebra{m.algebra};
  if (m.bimodule) out.bimodule = PyBimodule{m.bimodule};
  out.cochains = std::move(m.cochains);
  return out;
}

PyDefinition load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return load_text(os.str());
}

py::object witness_to_py(const std::optional<Witness>& w) {
  if (!w) return py::none();
  py::dict d;
  d["tuple"] = w->tuple;
  d["lambda_assignment"] = w->lambda_assignment;
  d["difference"] = w->difference;
  return d;
}

std::string report_repr(const Report& r) {
  return "<Report " + r.check + (r.pass ? " pass" : " FAIL") + ">";
}

BimodulePtr coefficients_or_regular(const PyAlgebra& a,
                                    const std::optional<PyBimodule>& m) {
  return m ? m->p : regular_bimodule(a.p);
}

}  // namespace

PYBIND11_MODULE(_cfh, mod) {
  mod.doc() =
      "Exact cochain calculus for finite-rank associative conformal "
      "algebras: differentials, cup/bracket operations, identity suites, "
      "truncated cohomology, and split extensions.";

  py::class_<Report>(mod, "Report")
      .def_readonly("check", &Report::check)
      .def_readonly("ok", &Report::pass)
      .def_readonly("seed", &Report::seed)
      .def_property_readonly(
          "witness", [](const Report& r) { return witness_to_py(r.witness); })
      .def("__bool__", [](const Report& r) { return r.pass; })
      .def("__repr__", &report_repr);

  py::class_<PyAlgebra>(mod, "Algebra")
      .def_property_readonly("rank",
                             [](const PyAlgebra& a) { return a.p->rank(); })
      .def(
          "product",
          [](const PyAlgebra& a, int i, int j) {
            return a.p->prod(i, j).str_entries();
          },
          py::arg("i"), py::arg("j"),
          "Structure constants of generator i times generator j, as "
          "canonical polynomial strings in d and l1.")
      .def("__repr__", [](const PyAlgebra& a) {
        return "<Algebra rank " + std::to_string(a.p->rank()) + ">";
      });

  py::class_<PyBimodule>(mod, "Bimodule")
      .def_property_readonly("rank",
                             [](const PyBimodule& m) { return m.p->rank(); })
      .def_property_readonly(
          "is_regular", [](const PyBimodule& m) { return is_regular(*m.p); })
      .def("__repr__", [](const PyBimodule& m) {
        return "<Bimodule rank " + std::to_string(m.p->rank()) +
               (is_regular(*m.p) ? " (regular)" : "") + ">";
      });

  py::class_<Cochain>(mod, "Cochain")
      .def_property_readonly("degree", &Cochain::degree)
      .def_property_readonly(
          "algebra", [](const Cochain& c) { return PyAlgebra{c.algebra()}; })
      .def_property_readonly(
          "coefficients",
          [](const Cochain& c) { return PyBimodule{c.coefficients()}; })
      .def("is_zero", &Cochain::is_zero)
      .def(
          "value",
          [](const Cochain& c, const std::vector<int>& tuple) {
            return c.value(tuple).str_entries();
          },
          py::arg("tuple"),
          "Stored value on a generator tuple (empty tuple at degree 0), as "
          "canonical polynomial strings.")
      .def(
          "set_value",
          [](Cochain& c, const std::vector<int>& tuple,
             const std::vector<std::string>& entries) {
            c.set_value(tuple, vector_from_strings(entries));
          },
          py::arg("tuple"), py::arg("entries"),
          "Set the value on a generator tuple from polynomial strings (one "
          "per coefficient-module generator).")
      .def("tuples",
           [](const Cochain& c) {
             std::vector<std::vector<int>> out;
             out.reserve(c.tuple_count());
             for (int k = 0; k < c.tuple_count(); ++k)
               out.push_back(c.tuple_at(k));
             return out;
           })
      .def(
          "render",
          [](const Cochain& c, const std::string& name) {
            return render_cochain_block(c, name);
          },
          py::arg("name") = std::string("result"),
          "The cochain as a definition-file block.")
      .def("__eq__", [](const Cochain& a, const Cochain& b) { return a == b; },
           py::is_operator())
      .def("__add__", [](const Cochain& a, const Cochain& b) { return a + b; },
           py::is_operator())
      .def("__sub__", [](const Cochain& a, const Cochain& b) { return a - b; },
           py::is_operator())
      .def("__neg__", [](const Cochain& a) { return -a; }, py::is_operator())
      .def("__repr__", [](const Cochain& c) {
        return "<Cochain degree " + std::to_string(c.degree()) +
               (c.is_zero() ? " (zero)" : "") + ">";
      });

  py::class_<PyDefinition>(mod, "Definition")
      .def_readonly("algebra", &PyDefinition::algebra)
      .def_property_readonly(
          "bimodule",
          [](const PyDefinition& d) -> py::object {
            return d.bimodule ? py::cast(*d.bimodule) : py::none();
          })
      .def_property_readonly("cochains",
                             [](const PyDefinition& d) {
                               py::dict out;
                               for (const auto& [name, c] : d.cochains)
                                 out[py::str(name)] = c;
                               return out;
                             })
      .def(
          "extension",
          [](const PyDefinition& d) -> py::object {
            if (!d.def.extension) return py::none();
            return py::cast(PyExtension{split_extension(
                d.algebra.p, d.bimodule->p, d.def.extension->fiber_prod)});
          },
          "Assemble the [extension] block, if the file has one.")
      .def("__repr__", [](const PyDefinition& d) {
        return "<Definition rank " + std::to_string(d.algebra.p->rank()) +
               ", " + std::to_string(d.cochains.size()) + " cochain(s)>";
      });

  py::class_<PyExtension>(mod, "Extension")
      .def_property_readonly(
          "base", [](const PyExtension& x) { return PyAlgebra{x.e.base}; })
      .def_property_readonly(
          "fiber", [](const PyExtension& x) { return PyBimodule{x.e.fiber}; })
      .def_property_readonly(
          "total", [](const PyExtension& x) { return PyAlgebra{x.e.total}; })
      .def_property_readonly(
          "ok", [](const PyExtension& x) { return x.e.associativity.pass; })
      .def_property_readonly(
          "associativity",
          [](const PyExtension& x) { return x.e.associativity; })
      .def_property_readonly(
          "split_section",
          [](const PyExtension& x) { return x.e.split_section; })
      .def("__repr__", [](const PyExtension& x) {
        return "<Extension " + std::to_string(x.e.base_rank()) + "+" +
               std::to_string(x.e.fiber_rank()) +
               (x.e.associativity.pass ? " associative" : " NOT associative") +
               ">";
      });

  // ------------------------------------------------------------ loading --
  mod.def("load_file", &load_file, py::arg("path"),
          "Parse and materialize a definition file.");
  mod.def("load_text", &load_text, py::arg("text"),
          "Parse and materialize definition text.");
  mod.def(
      "parse_poly",
      [](const std::string& text) { return parse_poly(text).str(); },
      py::arg("text"),
      "Parse a polynomial in d, l1, l2, ... and return its canonical form.");

  // ------------------------------------------------- construction helpers --
  mod.def(
      "regular_bimodule",
      [](const PyAlgebra& a) { return PyBimodule{regular_bimodule(a.p)}; },
      py::arg("algebra"));
  mod.def(
      "cochain",
      [](const PyAlgebra& a, int degree,
         const std::optional<PyBimodule>& coefficients) {
        return Cochain(a.p, coefficients_or_regular(a, coefficients), degree);
      },
      py::arg("algebra"), py::arg("degree"),
      py::arg("coefficients") = py::none(),
      "The zero cochain of the given degree (regular coefficients unless a "
      "bimodule is supplied).");
  mod.def(
      "identity_cochain",
      [](const PyAlgebra& a) {
        return Cochain::identity(a.p, regular_bimodule(a.p));
      },
      py::arg("algebra"));
  mod.def(
      "structure_cochain",
      [](const PyAlgebra& a) {
        return rho_cochain(a.p, regular_bimodule(a.p));
      },
      py::arg("algebra"),
      "The multiplication itself, as an algebra-valued 2-cochain.");
  mod.def(
      "random_cochain",
      [](const PyAlgebra& a, int degree, std::uint64_t seed, int d_cap,
         int l_cap, const std::optional<PyBimodule>& coefficients) {
        return random_cochain(a.p, coefficients_or_regular(a, coefficients),
                              degree, d_cap, l_cap, seed);
      },
      py::arg("algebra"), py::arg("degree"), py::arg("seed"),
      py::arg("d_cap") = 2, py::arg("l_cap") = 1,
      py::arg("coefficients") = py::none());

  // ------------------------------------------------------------ operations --
  mod.def("differential",
          [](const Cochain& c) { return differential(c); }, py::arg("f"));
  mod.def("cup", [](const Cochain& f, const Cochain& g) { return cup(f, g); },
          py::arg("f"), py::arg("g"));
  mod.def("bracket",
          [](const Cochain& f, const Cochain& g) { return bracket(f, g); },
          py::arg("f"), py::arg("g"));
  mod.def("bullet",
          [](const Cochain& f, const Cochain& g) { return bullet(f, g); },
          py::arg("f"), py::arg("g"));
  mod.def(
      "circ",
      [](const Cochain& f, const Cochain& g, int slot) {
        return circ_i(f, g, slot);
      },
      py::arg("f"), py::arg("g"), py::arg("slot"),
      "Insert g into argument slot `slot` (1-based) of f.");

  // ---------------------------------------------------------------- checks --
  mod.def(
      "check_associativity",
      [](const PyAlgebra& a) { return check_associativity(*a.p); },
      py::arg("algebra"));
  mod.def(
      "check_bimodule",
      [](const PyBimodule& m) { return check_bimodule(*m.p); },
      py::arg("bimodule"));
  mod.def(
      "check_maurer_cartan",
      [](const PyAlgebra& a) { return check_maurer_cartan(a.p); },
      py::arg("algebra"));
  mod.def(
      "check_identities",
      [](const PyAlgebra& a, std::uint64_t seed, int trials, int d_cap,
         int l_cap) { return check_identities(a.p, seed, trials, d_cap, l_cap); },
      py::arg("algebra"), py::arg("seed") = 42, py::arg("trials") = 10,
      py::arg("d_cap") = 2, py::arg("l_cap") = 1,
      "One aggregated report per identity family on seeded random cochains.");

  // ------------------------------------------------------------ cohomology --
  mod.def(
      "cohomology",
      [](const PyAlgebra& a, int n, int d_cap, std::optional<int> l_cap,
         int slack, const std::optional<PyBimodule>& coefficients) {
        CohomologyDims dims = cohomology_dims(
            a.p, coefficients_or_regular(a, coefficients), n,
            TruncationPolicy(d_cap, l_cap ? *l_cap : d_cap), slack);
        py::dict out;
        out["Z"] = dims.z_dim;
        out["B"] = dims.b_dim;
        out["HH_upper"] = dims.hh_upper;
        out["B_by_slack"] = dims.b_by_slack;
        return out;
      },
      py::arg("algebra"), py::arg("n"), py::arg("d_cap") = 2,
      py::arg("l_cap") = py::none(), py::arg("slack") = 2,
      py::arg("coefficients") = py::none(),
      "Truncated cohomology at degree n: exact kernel dimension, certified "
      "image lower bound, and the resulting upper bound on the quotient.");
  mod.def(
      "derivations",
      [](const PyAlgebra& a, int d_cap) {
        return derivations(a.p, regular_bimodule(a.p), d_cap);
      },
      py::arg("algebra"), py::arg("d_cap") = 2);
  mod.def(
      "inner_derivations",
      [](const PyAlgebra& a) {
        return inner_derivations(a.p, regular_bimodule(a.p));
      },
      py::arg("algebra"));

  // ------------------------------------------------------------ extensions --
  mod.def(
      "trivial_extension",
      [](const PyAlgebra& a, const std::optional<PyBimodule>& fiber) {
        return PyExtension{
            trivial_extension(a.p, coefficients_or_regular(a, fiber))};
      },
      py::arg("algebra"), py::arg("fiber") = py::none(),
      "Split extension with zero fiber product (regular fiber by default).");
  mod.def(
      "extension_from_2cocycle",
      [](const PyAlgebra& a, const Cochain& phi) {
        BimodulePtr coeffs = phi.coefficients();
        return PyExtension{extension_from_2cocycle(a.p, coeffs, phi)};
      },
      py::arg("algebra"), py::arg("phi"),
      "Abelian extension assembled from a 2-cochain; its associativity "
      "verdict equals the cocycle condition.");
  mod.def(
      "pullback",
      [](const PyExtension& x, const Cochain& phi) {
        return pullback_phi(x.e, phi);
      },
      py::arg("extension"), py::arg("phi"),
      "Conjugate an algebra-valued cochain over the total by the projection "
      "and section.");
  mod.def(
      "check_projection_chain_map",
      [](const PyExtension& x, std::uint64_t seed, int trials, int d_cap,
         int l_cap) {
        return check_projection_chain_map(x.e, seed, trials, d_cap, l_cap);
      },
      py::arg("extension"), py::arg("seed") = 42, py::arg("trials") = 10,
      py::arg("d_cap") = 2, py::arg("l_cap") = 1,
      "Pullback along the projection/section commutes with the "
      "differential (requires a split section).");
  mod.def(
      "check_ring_morphism",
      [](const PyExtension& x, std::uint64_t seed, int trials, int d_cap,
         int l_cap) {
        return check_ring_morphism(x.e, seed, trials, d_cap, l_cap);
      },
      py::arg("extension"), py::arg("seed") = 42, py::arg("trials") = 10,
      py::arg("d_cap") = 2, py::arg("l_cap") = 1,
      "Pullback respects the cup product (requires a split section).");
  mod.def(
      "check_projection_morphism",
      [](const PyExtension& x, std::uint64_t seed, int trials) {
        return check_projection_morphism(x.e, seed, trials);
      },
      py::arg("extension"), py::arg("seed") = 42, py::arg("trials") = 10,
      "The projection is multiplicative on elements — valid for every "
      "extension, split or not.");
}
