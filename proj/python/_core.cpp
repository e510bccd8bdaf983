#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "semsec/binary_region.hpp"
#include "semsec/discrete_rdf.hpp"
#include "semsec/gaussian_region.hpp"
#include "semsec/info_core.hpp"
#include "semsec/run.hpp"

namespace py = pybind11;
using namespace semsec;

namespace {

// JSON crosses the boundary as text; the Python side wraps with json.loads/dumps.
std::string run_json(const std::string& config) {
  return to_json(run(parse_config(nlohmann::json::parse(config)))).dump();
}

RdfPoint semantic_rdf(const std::vector<std::vector<double>>& joint, double D_s, double D_u, int encoder_case) {
  if (joint.empty()) throw std::invalid_argument("joint pmf is empty");
  std::vector<double> flat;
  for (const auto& row : joint) {
    if (row.size() != joint[0].size()) throw std::invalid_argument("joint pmf rows differ in length");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  const std::size_t ns = joint.size(), nu = joint[0].size();
  const DiscreteSemanticSource src(Pmf(flat, {ns, nu}));
  const auto hs = DistortionMatrix::hamming(ns), hu = DistortionMatrix::hamming(nu);
  if (encoder_case == 1) return rdf_semantic_case1(src, hs, hu, D_s, D_u);
  if (encoder_case == 2) return rdf_semantic_case2(src, hs, hu, D_s, D_u);
  throw std::invalid_argument("encoder_case must be 1 or 2");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::class_<GaussianSource>(m, "GaussianSource")
      .def(py::init([](double P_s, double P_u, double P_su) {
             GaussianSource s{P_s, P_u, P_su};
             s.validate();
             return s;
           }),
           py::arg("P_s") = 0.7, py::arg("P_u") = 1.0, py::arg("P_su") = 0.6)
      .def_readonly("P_s", &GaussianSource::P_s)
      .def_readonly("P_u", &GaussianSource::P_u)
      .def_readonly("P_su", &GaussianSource::P_su)
      .def_property_readonly("h_s", &GaussianSource::h_s)
      .def_property_readonly("h_u", &GaussianSource::h_u)
      .def_property_readonly("h_su", &GaussianSource::h_su)
      .def_property_readonly("case1_floor", &GaussianSource::case1_floor);

  py::class_<GaussianChannel>(m, "GaussianChannel")
      .def(py::init([](double P, double P_N1, double P_N2) {
             GaussianChannel c{P, P_N1, P_N2};
             c.validate();
             return c;
           }),
           py::arg("P") = 1.0, py::arg("P_N1") = 0.1, py::arg("P_N2") = 0.4)
      .def_readonly("P", &GaussianChannel::P)
      .def_readonly("P_N1", &GaussianChannel::P_N1)
      .def_readonly("P_N2", &GaussianChannel::P_N2);

  py::class_<RdfPoint>(m, "RdfPoint")
      .def_readonly("rate", &RdfPoint::rate)
      .def_readonly("distortions", &RdfPoint::distortions)
      .def_readonly("multipliers", &RdfPoint::multipliers)
      .def_readonly("converged", &RdfPoint::converged)
      .def_property_readonly("feasible", &RdfPoint::feasible);

  m.def("binary_entropy", &binary_entropy, py::arg("p"));
  m.def("gaussian_rdf_obs", &gaussian_rdf_obs, py::arg("src"), py::arg("D_u"));
  m.def("gaussian_rdf_sem", &gaussian_rdf_sem, py::arg("src"), py::arg("D_s"), py::arg("encoder_case"));
  m.def("gaussian_rdf_joint", &gaussian_rdf_joint, py::arg("src"), py::arg("D_s"), py::arg("D_u"),
        py::arg("encoder_case"));
  m.def("secrecy_term", &secrecy_term, py::arg("ch"), py::arg("beta"));
  m.def("main_capacity", &main_capacity, py::arg("ch"));
  m.def("binary_rdf_joint", [](double alpha, double D_s, double D_u, int c) { return binary_rdf_joint(alpha, D_s, D_u, c); },
        py::arg("alpha"), py::arg("D_s"), py::arg("D_u"), py::arg("encoder_case"));
  m.def("semantic_rdf", &semantic_rdf, py::arg("joint"), py::arg("D_s"), py::arg("D_u"), py::arg("encoder_case"),
        "Hamming-distortion RDF of a joint pmf over (S, U) given as rows indexed by S.");
  m.def("preset_names", &preset_names);
  m.def("preset_json", [](const std::string& name) { return preset_json(name).dump(); }, py::arg("name"));
  m.def("run_json", &run_json, py::arg("config"), py::call_guard<py::gil_scoped_release>());
}
