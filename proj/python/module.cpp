#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aqtoda/io.hpp"

namespace py = pybind11;
using namespace aqtoda;

namespace {

// Reports cross the boundary as plain dicts and lists.
py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<GradedGenerator> generators(const std::vector<std::pair<std::string, int>>& gens) {
  std::vector<GradedGenerator> out;
  for (const auto& [name, degree] : gens) out.push_back({name, degree});
  return out;
}

CoefficientSpace coefficients(const PresentedLieAlgebra& lambda, const std::string& kind, int shift, int D) {
  if (kind == "loop") return loop_module(lambda, shift);
  if (kind != "ones") throw py::value_error("coefficients must be 'loop' or 'ones'");
  CoefficientSpace K;
  K.label = "Q";
  K.valid_through = D;
  for (int d = 1; d <= D; ++d) K.dims[d] = 1;
  return K;
}

}  // namespace

PYBIND11_MODULE(aqtoda, m) {
  m.doc() = "Andre-Quillen obstructions, flag complexes and long Toda brackets over Q";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CutoffError>(m, "CutoffError", PyExc_ValueError);
  py::register_exception<BandError>(m, "BandError", PyExc_RuntimeError);

  m.def("normalize_face_word", &normalize_face_word, py::arg("word"));
  m.def(
      "flag_report",
      [](std::vector<int> indices, int n) {
        Flag phi{n, std::move(indices)};
        try {
          phi.validate();
        } catch (const std::invalid_argument& e) {
          throw py::value_error(e.what());
        }
        return to_python(flag_report_json(FlagComplex(phi)));
      },
      py::arg("indices"), py::arg("n"));

  m.def(
      "hall_basis_dims", [](const std::vector<std::pair<std::string, int>>& gens, int D) {
        return hall_basis_dims(generators(gens), D);
      },
      py::arg("generators"), py::arg("max_degree"));
  m.def(
      "lie_dim_oracle", [](const std::vector<std::pair<std::string, int>>& gens, int d) {
        return lie_dim_oracle(generators(gens), d);
      },
      py::arg("generators"), py::arg("degree"));

  py::class_<PresentedLieAlgebra>(m, "Presentation")
      .def(py::init([](const std::vector<std::pair<std::string, int>>& gens, std::vector<std::string> relations,
                       int cutoff) { return PresentedLieAlgebra(generators(gens), std::move(relations), cutoff); }),
           py::arg("generators"), py::arg("relations"), py::arg("cutoff"))
      .def_static("from_json", [](const std::string& text) { return parse_presentation(text); }, py::arg("text"))
      .def("dim", &PresentedLieAlgebra::dim, py::arg("degree"))
      .def_property_readonly("cutoff", &PresentedLieAlgebra::cutoff)
      .def("to_json", [](const PresentedLieAlgebra& p) { return to_python(presentation_json(p)); });

  py::class_<TruncatedCWObject>(m, "Resolution")
      .def_property_readonly("top", &TruncatedCWObject::top)
      .def_property_readonly("cutoff", &TruncatedCWObject::cutoff)
      .def("dump", [](const TruncatedCWObject& X) { return resolution_json(X).dump(); })
      .def_static("parse", [](const std::string& text) { return parse_resolution(text); }, py::arg("text"))
      .def("identities_hold", [](const TruncatedCWObject& X) { return check_simplicial_identities(X).ok; });

  m.def(
      "resolve",
      [](const PresentedLieAlgebra& lambda, int N, bool reverse_pivots, unsigned mix_seed) {
        return resolve(lambda, N, ResolveOptions{reverse_pivots, mix_seed});
      },
      py::arg("presentation"), py::arg("levels"), py::arg("reverse_pivots") = false, py::arg("mix_seed") = 0u);
  m.def(
      "resolution_report",
      [](const TruncatedCWObject& X, const PresentedLieAlgebra& lambda) {
        return to_python(resolution_json(X, &lambda));
      },
      py::arg("resolution"), py::arg("presentation"));

  m.def(
      "cohomology_dims",
      [](const PresentedLieAlgebra& lambda, const TruncatedCWObject& X, int n, const std::string& kind, int shift) {
        auto C = build_aq_complex(X, coefficients(lambda, kind, shift, X.cutoff()));
        std::vector<int> dims;
        for (int d = 1; d <= X.cutoff(); ++d) dims.push_back(C.cohomology_dim(n, d));
        return dims;
      },
      py::arg("presentation"), py::arg("resolution"), py::arg("n"), py::arg("coefficients") = "loop",
      py::arg("shift") = 0);

  m.def(
      "obstruction",
      [](const PresentedLieAlgebra& lambda, const TruncatedCWObject& X, int n) {
        BetaResult b = beta_obstruction(lambda, X, n);
        Json out = {{"n", n}, {"vanishes", b.vanishes}, {"refusal", b.refusal}};
        if (b.cocycle) out["cocycle"] = cochain_json(X, *b.cocycle);
        return to_python(out);
      },
      py::arg("presentation"), py::arg("resolution"), py::arg("n"));

  m.def(
      "verify_existence",
      [](const PresentedLieAlgebra& lambda, const TruncatedCWObject& X, int n) {
        ExistenceReport r = verify_existence_correspondence(lambda, X, n);
        return to_python({{"pass", r.pass},
                          {"detail", r.detail},
                          {"round_trip", r.round_trip},
                          {"classes_equal", r.classes_equal},
                          {"witnesses", r.witness_beta.has_value() && r.witness_image.has_value()}});
      },
      py::arg("presentation"), py::arg("resolution"), py::arg("n"));

  m.def(
      "toda",
      [](unsigned seed, bool oracle) {
        TodaInstance inst = seeded_toda_instance(seed);
        TodaBracketValue v = toda_bracket(inst.T, inst.X, inst.gamma, inst.top);
        Json out = {{"seed", seed}, {"shape", inst.shape}, {"total_dim", inst.T.total_dim()}};
        out["report"] = toda_report_json(v);
        if (oracle) {
          TodaCheck check = check_toda_instance(inst);
          out["oracle"] = {{"sound", check.comparison.sound}, {"complete", check.comparison.complete}};
        }
        return to_python(out);
      },
      py::arg("seed"), py::arg("oracle") = false);
}
