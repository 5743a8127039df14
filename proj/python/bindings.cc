#include <optional>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pstep/colgen.h"
#include "pstep/formulation.h"
#include "pstep/instance.h"
#include "pstep/oracle.h"
#include "pstep/validation.h"

namespace py = pybind11;
using namespace pstep;

namespace {

std::vector<std::vector<int>> Paths(const std::vector<PStepColumn>& cols) {
  std::vector<std::vector<int>> out;
  out.reserve(cols.size());
  for (const auto& c : cols) out.push_back(c.path);
  return out;
}

}  // namespace

PYBIND11_MODULE(_pstep, m) {
  m.doc() = "p-step vehicle-routing relaxations";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def_readonly("name", &Instance::name)
      .def_readonly("n", &Instance::n)
      .def_readonly("capacity", &Instance::capacity)
      .def_readonly("fleet_size", &Instance::fleet_size)
      .def_readonly("demand", &Instance::demand)
      .def_property_readonly("has_windows", &Instance::has_windows)
      .def("cost", [](const Instance& i, int a, int b) { return i.cost(a, b); })
      .def("to_json", &ToNativeJson)
      .def("__repr__", [](const Instance& i) {
        return "<Instance " + i.name + " n=" + std::to_string(i.n) + ">";
      });

  m.def("load_instance", &LoadInstance, py::arg("path"));
  m.def(
      "parse_instance",
      [](const std::string& text, bool solomon) {
        return ParseInstance(text, solomon ? InstanceFormat::kSolomon
                                           : InstanceFormat::kNative);
      },
      py::arg("text"), py::arg("solomon") = false);
  m.def(
      "generate_random",
      [](int n, std::uint64_t seed, bool tw, double tightness) {
        return GenerateRandom({n, seed, tw, tightness});
      },
      py::arg("n"), py::arg("seed") = 1, py::arg("time_windows") = false,
      py::arg("tightness") = 0.25);
  m.def(
      "generate_short_clusters",
      [](int p, int q, int k, std::optional<double> depot) {
        return GenerateShortClusters({p, q, k, q + 1, 0.0, 1.0, depot});
      },
      py::arg("p"), py::arg("q"), py::arg("k"), py::arg("depot_dist") = py::none());
  m.def(
      "generate_wide_clusters",
      [](int p, int q, int k, int m_, std::optional<double> depot) {
        return GenerateWideClusters({p, q, k, m_, 0.0, 1.0, depot});
      },
      py::arg("p"), py::arg("q"), py::arg("k"), py::arg("m") = 2,
      py::arg("depot_dist") = py::none());

  m.def(
      "check_path",
      [](const Instance& inst, std::vector<int> path, int p, bool tw) {
        return std::string(ToString(CheckPath(inst, path, p, tw)));
      },
      py::arg("instance"), py::arg("path"), py::arg("p"),
      py::arg("time_windows") = false);

  m.def(
      "solve_relaxation_json",
      [](const Instance& inst, int p, bool tw, int workers, int max_iters,
         std::vector<std::pair<int, int>> turning) {
        ColGenConfig cfg;
        cfg.p = p;
        cfg.max_iters = max_iters;
        cfg.pricing.workers = workers;
        cfg.turning_points = std::move(turning);
        ColGenResult r;
        {
          py::gil_scoped_release release;
          r = SolveRelaxation(inst, cfg, tw);
        }
        return ToJson(r).dump();
      },
      py::arg("instance"), py::arg("p"), py::arg("time_windows") = false,
      py::arg("workers") = 1, py::arg("max_iters") = 10000,
      py::arg("turning_points") = std::vector<std::pair<int, int>>{});

  m.def(
      "enumerate_psteps",
      [](const Instance& inst, int p, bool tw) {
        return Paths(EnumeratePSteps(inst, p, tw));
      },
      py::arg("instance"), py::arg("p"), py::arg("time_windows") = false);
  m.def("explicit_bound",
        [](const Instance& inst, int p, bool tw) { return ExplicitBound(inst, p, tw); },
        py::arg("instance"), py::arg("p"), py::arg("time_windows") = false);
  m.def("sp_lp_bound",
        [](const Instance& inst, bool tw) { return SpLpBound(inst, tw); },
        py::arg("instance"), py::arg("time_windows") = false);
  m.def("vf_bound", &VfBound, py::arg("instance"), py::arg("time_windows") = false);
  m.def(
      "integer_optimum",
      [](const Instance& inst, bool tw) {
        const IntegerSolution s = IntegerOptimum(inst, tw);
        return py::make_tuple(s.feasible, s.value, s.routes);
      },
      py::arg("instance"), py::arg("time_windows") = false);

  m.def(
      "run_suite",
      [](const std::string& suite, std::uint64_t seed, int n_max, int instances,
         bool tw) {
        ValidationOptions opt;
        opt.seed = seed;
        opt.n_max = n_max;
        opt.n_min = std::min(opt.n_min, n_max);
        opt.instances = instances;
        opt.time_windows = tw;
        std::vector<py::tuple> out;
        for (const auto& c : RunSuite(suite, opt)) {
          out.push_back(py::make_tuple(c.suite, c.name, c.passed, c.detail));
        }
        return out;
      },
      py::arg("suite"), py::arg("seed") = 1, py::arg("n_max") = 6,
      py::arg("instances") = 5, py::arg("time_windows") = false);
}
