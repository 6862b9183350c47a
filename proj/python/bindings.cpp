#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperperc/bands.hpp"
#include "hyperperc/errors.hpp"
#include "hyperperc/experiment.hpp"
#include "hyperperc/graph.hpp"
#include "hyperperc/graph_io.hpp"
#include "hyperperc/graph_stats.hpp"
#include "hyperperc/percolation.hpp"

namespace py = pybind11;
using namespace hyperperc;

namespace {

py::dict record_dict(const RunRecord& rec) {
  py::dict d;
  d["seed"] = rec.seed;
  d["p"] = rec.p;
  d["rho"] = rec.rho;
  d["r"] = rec.r;
  d["N"] = rec.n;
  d["alpha"] = rec.alpha;
  d["nu"] = rec.nu;
  d["a0_size"] = rec.a0_size;
  d["af_size"] = rec.af_size;
  d["rounds"] = rec.rounds;
  d["core_size"] = rec.core_size;
  d["l1"] = rec.l1;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hyperperc, m) {
  m.doc() = "Random hyperbolic graphs, bond and bootstrap percolation";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<DecompositionError>(m, "DecompositionError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  auto schema = py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<ChecksumError>(m, "ChecksumError", schema.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init(&ModelParams::make), py::arg("n"), py::arg("alpha"), py::arg("nu") = 1.0,
           py::arg("seed") = 0)
      .def_readonly("n", &ModelParams::n)
      .def_readonly("alpha", &ModelParams::alpha)
      .def_readonly("nu", &ModelParams::nu)
      .def_readonly("radius", &ModelParams::radius)
      .def_readonly("seed", &ModelParams::seed)
      .def_readonly("alpha_outside_theory", &ModelParams::alpha_outside_theory);

  py::class_<Graph>(m, "Graph")
      .def_property_readonly("params", &Graph::params)
      .def("__len__", &Graph::size)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("degree", &Graph::degree)
      .def("neighbors", [](const Graph& g, VertexId v) {
        if (v >= g.size()) throw py::index_error("vertex id out of range");
        const auto nb = g.neighbors(v);
        return std::vector<VertexId>(nb.begin(), nb.end());
      })
      .def("edges", [](const Graph& g) {
        std::vector<std::pair<VertexId, VertexId>> out;
        for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
        return out;
      })
      .def("radii", [](const Graph& g) {
        std::vector<double> out;
        for (const Vertex& v : g.vertices()) out.push_back(v.point.r);
        return out;
      })
      .def("angles", [](const Graph& g) {
        std::vector<double> out;
        for (const Vertex& v : g.vertices()) out.push_back(v.point.theta);
        return out;
      })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; });

  m.def("build_graph",
        [](const ModelParams& p, bool exact) {
          return build_graph(p, exact ? BuildMode::exact_bruteforce : BuildMode::windowed);
        },
        py::arg("params"), py::arg("exact") = false, py::call_guard<py::gil_scoped_release>());
  m.def("hyperbolic_distance", [](double ra, double ta, double rb, double tb) {
    return hyperbolic_distance({ra, ta}, {rb, tb});
  });
  m.def("sample_radius", &sample_radius);
  m.def("bond_percolate", &bond_percolate, py::arg("graph"), py::arg("rho"), py::arg("seed"));
  m.def("save_graph", [](const Graph& g, const std::string& path) { save_graph(g, path); });
  m.def("load_graph", [](const std::string& path) { return load_graph(path); });

  m.def("initial_infection", &initial_infection, py::arg("graph"), py::arg("p"), py::arg("seed"));
  m.def("bootstrap",
        [](const Graph& g, const std::vector<VertexId>& a0, int r) {
          const BootstrapResult res = bootstrap(g, a0, r);
          py::dict d;
          d["initially_infected"] = res.initially_infected;
          d["finally_infected"] = res.finally_infected;
          d["rounds"] = res.rounds;
          d["per_round_new"] = res.per_round_new;
          return d;
        },
        py::arg("graph"), py::arg("a0"), py::arg("r"));
  m.def("r_core", [](const Graph& g, int r) { return r_core(g, r).core_vertices; },
        py::arg("graph"), py::arg("r"));
  m.def("largest_component", [](const Graph& g) { return connected_components(g).largest(); });
  m.def("hill_exponent", [](const Graph& g, double tail) {
    return hill_exponent(degree_sequence(g), tail);
  }, py::arg("graph"), py::arg("tail_fraction") = 0.01);
  m.def("mean_local_clustering", &mean_local_clustering);

  m.def("p_from_multiplier", &p_from_multiplier);
  m.def("run_single",
        [](const Graph& g, double rho, double p, int r, std::uint64_t seed) {
          return record_dict(run_single(g, PercolationConfig{rho, p, r, seed}));
        },
        py::arg("graph"), py::arg("rho"), py::arg("p"), py::arg("r"), py::arg("seed"));
  m.def("csv_header", &csv_header);

  m.def("compute_C",
        [](double alpha, double nu, double eps, double rho, int r, double c_block) {
          return compute_C(CInputs{alpha, nu, eps, rho, r, c_block});
        },
        py::arg("alpha"), py::arg("nu") = 1.0, py::arg("epsilon") = 0.1, py::arg("rho") = 1.0,
        py::arg("r") = 2, py::arg("c_block") = 1.0);
  m.def("solve_band_recurrence",
        [](double n, double alpha, double nu, double eps, double C) {
          const BandDecomposition bd =
              solve_band_recurrence(BandModel::analytic(n, alpha, nu), eps, C);
          py::dict d;
          d["t"] = bd.t;
          d["T"] = bd.T;
          d["C"] = bd.C;
          d["lambda"] = bd.lambda;
          d["theta_i"] = bd.theta;
          d["B_i"] = bd.B;
          d["residuals"] = bd.residual;
          return d;
        },
        py::arg("n"), py::arg("alpha"), py::arg("nu") = 1.0, py::arg("epsilon") = 0.1,
        py::arg("C"));
}
