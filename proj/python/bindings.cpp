#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "attopt/error.hpp"
#include "attopt/io.hpp"
#include "attopt/modes.hpp"
#include "attopt/optimality.hpp"
#include "attopt/solver.hpp"

namespace py = pybind11;
using namespace attopt;

namespace {

RotationMatrix to_rotation(const Mat3& m) { return RotationMatrix::from_matrix(m); }

py::dict trajectory_dict(const DiscreteTrajectory& t) {
    const auto n = t.states.size();
    Eigen::MatrixXd R(n, 9), w(n, 3), u(t.controls.size(), 3);
    for (std::size_t k = 0; k < n; ++k) {
        for (int i = 0; i < 9; ++i) R(k, i) = t.states[k].R(i / 3, i % 3);
        w.row(k) = t.states[k].omega.transpose();
    }
    for (std::size_t k = 0; k < t.controls.size(); ++k) u.row(k) = t.controls[k].transpose();
    py::dict d;
    d["h"] = t.h;
    d["R"] = R;
    d["omega"] = w;
    d["u"] = u;
    return d;
}

py::dict extremal_dict(const ExtremalTrajectory& e) {
    py::dict d = trajectory_dict(e.trajectory);
    Eigen::MatrixXd lr(e.multipliers.size(), 3), lw(e.multipliers.size(), 3);
    for (std::size_t k = 0; k < e.multipliers.size(); ++k) {
        lr.row(k) = e.multipliers[k].lamR.transpose();
        lw.row(k) = e.multipliers[k].lamOmega.transpose();
    }
    d["lamR"] = lr;
    d["lamOmega"] = lw;
    d["transversality_residual"] = e.transversality_residual;
    d["boundary_residual_R"] = e.boundary_residual_R;
    d["boundary_residual_omega"] = e.boundary_residual_omega;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Time-optimal rigid-body attitude maneuvers on SO(3)";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

    m.def("hat", &hat, py::arg("v"));
    m.def("vee", &vee, py::arg("m"));
    m.def("exp_so3", [](const Vec3& v) { return exp_so3(v).matrix(); }, py::arg("v"));
    m.def("log_so3", [](const Mat3& r) { return log_so3(to_rotation(r)); }, py::arg("R"));
    m.def("rotation_angle", [](const Mat3& r) { return rotation_angle(to_rotation(r)); }, py::arg("R"));
    m.def("orthogonality_error", &orthogonality_error, py::arg("m"));

    py::class_<InertiaModel>(m, "InertiaModel")
        .def(py::init<const Mat3&>(), py::arg("J"))
        .def_static("diagonal", &InertiaModel::diagonal, py::arg("j1"), py::arg("j2"), py::arg("j3"))
        .def_property_readonly("J", &InertiaModel::J)
        .def_property_readonly("Jd", &InertiaModel::Jd);

    m.def(
        "solve_step",
        [](const Vec3& omega, const InertiaModel& inertia, double h) {
            return solve_step_equation(omega, inertia, h).matrix();
        },
        py::arg("omega"), py::arg("inertia"), py::arg("h"));

    m.def(
        "rollout",
        [](const Mat3& R0, const Vec3& omega0, const std::vector<Vec3>& controls,
           const InertiaModel& inertia, double h) {
            return trajectory_dict(rollout({to_rotation(R0), omega0}, controls, inertia, h));
        },
        py::arg("R0"), py::arg("omega0"), py::arg("controls"), py::arg("inertia"), py::arg("h"));

    m.def(
        "forward_extremal",
        [](const Mat3& R0, const Vec3& omega0, const Vec3& lamR0, const Vec3& lamOmega0,
           const InertiaModel& inertia, double u_max, int steps, double h, const Mat3& Rf,
           const Vec3& omegaf) {
            return extremal_dict(forward_extremal({to_rotation(R0), omega0}, {lamR0, lamOmega0}, inertia,
                                                  u_max, steps, h, {to_rotation(Rf), omegaf}));
        },
        py::arg("R0"), py::arg("omega0"), py::arg("lamR0"), py::arg("lamOmega0"), py::arg("inertia"),
        py::arg("u_max"), py::arg("steps"), py::arg("h"), py::arg("Rf"), py::arg("omegaf"));

    py::class_<ManeuverProblem>(m, "ManeuverProblem")
        .def_readwrite("u_max", &ManeuverProblem::u_max)
        .def_readwrite("steps", &ManeuverProblem::steps)
        .def_readwrite("h_initial", &ManeuverProblem::h_initial)
        .def_readwrite("seed", &ManeuverProblem::seed)
        .def_property(
            "tolerance", [](const ManeuverProblem& p) { return p.solver.tolerance; },
            [](ManeuverProblem& p, double t) { p.solver.tolerance = t; })
        .def_property(
            "restart_budget", [](const ManeuverProblem& p) { return p.solver.restart_budget; },
            [](ManeuverProblem& p, int b) { p.solver.restart_budget = b; })
        .def_property_readonly("inertia", [](const ManeuverProblem& p) { return p.inertia; })
        .def_property_readonly("R_initial", [](const ManeuverProblem& p) { return p.initial.R.matrix(); })
        .def_property_readonly("R_final", [](const ManeuverProblem& p) { return p.target.R.matrix(); })
        .def("to_json", [](const ManeuverProblem& p) { return io::problem_to_json(p).dump(); });

    m.def("parse_problem", [](const std::string& text) { return io::parse_problem(text); }, py::arg("text"));
    m.def("load_problem", [](const std::string& path) { return io::load_problem(path); }, py::arg("path"));

    m.def(
        "optimize",
        [](const ManeuverProblem& p, std::optional<std::uint64_t> seed) {
            SolveResult r;
            {
                py::gil_scoped_release release;
                r = solve(p, seed.value_or(p.seed));
            }
            py::dict d;
            d["report"] = py::module_::import("json").attr("loads")(io::report_to_json(r.report, &r.extremal).dump());
            d["extremal"] = extremal_dict(r.extremal);
            return d;
        },
        py::arg("problem"), py::arg("seed") = py::none());

    m.def(
        "simulate",
        [](const ManeuverProblem& p, const std::vector<Vec3>& controls) {
            const auto r = run_simulate(p, controls);
            py::dict d = trajectory_dict(r.trajectory);
            d["momentum_drift"] = r.metrics.momentum_drift;
            d["energy_deviation"] = r.metrics.energy_deviation;
            d["orthogonality_error"] = r.metrics.orthogonality_error;
            return d;
        },
        py::arg("problem"), py::arg("controls") = std::vector<Vec3>{});
}
