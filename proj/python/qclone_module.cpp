#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qclone/bounds.hpp"
#include "qclone/cli.hpp"
#include "qclone/errors.hpp"
#include "qclone/machine.hpp"
#include "qclone/verify.hpp"

namespace py = pybind11;
using namespace qclone;

namespace {

std::vector<Complex> to_list(const StateVector& v) { return {v.amplitudes().begin(), v.amplitudes().end()}; }

CopyScenario scenario(double z, int n, std::size_t d_in, std::size_t d_x) {
  CopyScenario sc{z, n, d_in, d_x};
  sc.validate();
  return sc;
}

}  // namespace

PYBIND11_MODULE(_qclone, m) {
  m.doc() = "Lower bounds on the noise of quantum copying machines";
  m.attr("__version__") = "0.1.0";

  py::register_exception<BoundViolation>(m, "BoundViolation", PyExc_ArithmeticError);

  py::class_<ErrorPair>(m, "ErrorPair")
      .def(py::init<double, double>(), py::arg("x1"), py::arg("x2"))
      .def_readwrite("x1", &ErrorPair::x1)
      .def_readwrite("x2", &ErrorPair::x2)
      .def("__repr__", [](const ErrorPair& e) {
        std::ostringstream s;
        s << "ErrorPair(x1=" << e.x1 << ", x2=" << e.x2 << ")";
        return s.str();
      });

  py::class_<Peak>(m, "Peak")
      .def_readonly("z_star", &Peak::z_star)
      .def_readonly("value", &Peak::value)
      .def("__repr__", [](const Peak& p) {
        std::ostringstream s;
        s << "Peak(z_star=" << p.z_star << ", value=" << p.value << ")";
        return s.str();
      });

  m.def("rhs_general", &rhs_general, py::arg("z"), py::arg("n"), py::arg("errors"));
  m.def("feasible", &feasible, py::arg("z"), py::arg("n"), py::arg("errors"));
  m.def("region_feasible", &region_feasible, py::arg("z"), py::arg("eta11"), py::arg("eta22"),
        py::arg("eta12_abs"), py::arg("n") = 1);
  m.def("x2_min_perfect", &x2_min_perfect, py::arg("z"), py::arg("n") = 1);
  m.def("x_equal_min_exact", &x_equal_min_exact, py::arg("z"));
  m.def("x_equal_min_simplified", &x_equal_min_simplified, py::arg("z"), py::arg("n") = 1);
  m.def("sum_min", &sum_min, py::arg("z"), py::arg("n") = 1);
  m.def("sum_min_peak", &sum_min_peak, py::arg("n"));
  m.def("weighted_sum_min", &weighted_sum_min, py::arg("z"), py::arg("n"), py::arg("w1"), py::arg("w2"));
  m.def(
      "evaluate_bound",
      [](const std::string& kind, double z, int n) { return evaluate_bound(parse_bound_kind(kind), z, n); },
      py::arg("kind"), py::arg("z"), py::arg("n") = 1);
  m.def(
      "maximize_over_z",
      [](const std::string& kind, int n, double tol) { return maximize_over_z(parse_bound_kind(kind), n, tol); },
      py::arg("kind"), py::arg("n") = 1, py::arg("tol") = 1e-10);

  m.def(
      "sample_pair",
      [](double z, int n, std::size_t d_in, std::size_t d_x, std::uint64_t seed, bool pinned) {
        const auto sc = scenario(z, n, d_in, d_x);
        const auto pair = pinned ? sample_pair_pinned(sc, seed) : sample_pair(sc, seed);
        return py::make_tuple(to_list(pair.psi1), to_list(pair.psi2));
      },
      py::arg("z"), py::arg("n") = 1, py::arg("d_in") = 2, py::arg("d_x") = 2, py::arg("seed") = 0,
      py::arg("pinned") = false, "Random admissible output pair (psi1, psi2) as amplitude lists.");
  m.def(
      "analyze_errors",
      [](std::vector<Complex> psi1, std::vector<Complex> psi2, double z, int n, std::size_t d_in,
         std::size_t d_x) {
        OutputPair pair{StateVector(std::move(psi1)), StateVector(std::move(psi2)), scenario(z, n, d_in, d_x)};
        pair.validate();
        return evaluate_machine(pair);
      },
      py::arg("psi1"), py::arg("psi2"), py::arg("z"), py::arg("n") = 1, py::arg("d_in") = 2, py::arg("d_x") = 2);

  py::class_<MachineResult>(m, "MachineResult")
      .def_readonly("errors", &MachineResult::errors)
      .def_readonly("objective_value", &MachineResult::objective_value)
      .def_readonly("bound_value", &MachineResult::bound_value)
      .def_readonly("gap", &MachineResult::gap)
      .def_readonly("starts", &MachineResult::starts)
      .def_readonly("converged", &MachineResult::converged)
      .def_readonly("best_start", &MachineResult::best_start)
      .def_readonly("evaluations", &MachineResult::evaluations)
      .def_readonly("max_constraint_drift", &MachineResult::max_constraint_drift)
      .def_property_readonly("psi1", [](const MachineResult& r) { return to_list(r.pair.psi1); })
      .def_property_readonly("psi2", [](const MachineResult& r) { return to_list(r.pair.psi2); });

  m.def(
      "optimize_machine",
      [](double z, int n, std::size_t d_in, std::size_t d_x, const std::string& objective, double w1,
         double w2, int starts, std::uint64_t seed, int max_iters, double ftol) {
        Objective obj{parse_objective_kind(objective), w1, w2};
        if (obj.kind != Objective::Kind::weighted) obj.w1 = obj.w2 = 1.0;
        OptimizeOptions opts;
        opts.starts = starts;
        opts.seed = seed;
        opts.max_iters = max_iters;
        opts.ftol = ftol;
        const auto sc = scenario(z, n, d_in, d_x);
        py::gil_scoped_release release;
        return optimize_machine(sc, obj, opts);
      },
      py::arg("z"), py::arg("n") = 1, py::arg("d_in") = 2, py::arg("d_x") = 2, py::arg("objective") = "sum",
      py::arg("w1") = 1.0, py::arg("w2") = 1.0, py::arg("starts") = 16, py::arg("seed") = 0,
      py::arg("max_iters") = 200000, py::arg("ftol") = 1e-12);

  py::class_<verify::SuiteReport>(m, "SuiteReport")
      .def_readonly("cases_run", &verify::SuiteReport::cases_run)
      .def_readonly("passed", &verify::SuiteReport::passed)
      .def_readonly("max_residuals", &verify::SuiteReport::max_residuals)
      .def_property_readonly("violation_count",
                             [](const verify::SuiteReport& r) { return r.violations.size(); });

  m.def(
      "run_suite",
      [](const std::string& profile, std::uint64_t seed) {
        const auto config = cli::suite_profile(profile, seed);
        py::gil_scoped_release release;
        return verify::run_suite(config);
      },
      py::arg("profile") = "quick", py::arg("seed") = 0);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "qclone");
        std::ostringstream out, err;
        const int code = cli::run(args, out, err, std::nullopt);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
