// attopt: time-optimal rigid-body attitude maneuvers from the command line.
//
//   attopt simulate --config p.json [--controls u.csv] [--steps N] [--out dir]
//   attopt optimize --config p.json [--seed S] [--tol T] [--steps N] [--out dir]
//   attopt validate [--seed S] [--out dir]
//   attopt compare  --config p.json [--steps N] [--out dir]
//
// Exit codes: 0 success / converged, 1 not converged or failed checks, 2 input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "attopt/error.hpp"
#include "attopt/io.hpp"
#include "attopt/modes.hpp"
#include "attopt/solver.hpp"

namespace fs = std::filesystem;
using namespace attopt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitInputError = 2;

struct Options {
    std::string config;
    std::string controls;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> steps;
    std::optional<double> tol;
};

ManeuverProblem load(const Options& o) {
    ManeuverProblem p = io::load_problem(o.config);
    if (o.steps) p.steps = *o.steps;
    if (o.tol) p.solver.tolerance = *o.tol;
    if (o.seed) p.seed = *o.seed;
    p.validate();
    return p;
}

std::ofstream open_out(const Options& o, const std::string& name) {
    fs::create_directories(o.out);
    std::ofstream f(fs::path(o.out) / name);
    if (!f) {
        throw Error(ErrorCode::ValidationError, "cannot write " + (fs::path(o.out) / name).string());
    }
    return f;
}

int cmd_simulate(const Options& o) {
    const ManeuverProblem p = load(o);
    std::vector<Vec3> controls;
    if (!o.controls.empty()) {
        std::ifstream in(o.controls);
        if (!in) throw Error(ErrorCode::ParseError, "cannot open " + o.controls);
        controls = io::read_controls_csv(in);
    }
    const SimulationResult r = run_simulate(p, controls);
    auto csv = open_out(o, "trajectory.csv");
    io::write_trajectory_csv(csv, r.trajectory);
    const auto summary = simulation_summary(r);
    open_out(o, "summary.json") << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << '\n';
    return kExitOk;
}

int cmd_optimize(const Options& o) {
    const ManeuverProblem p = load(o);
    const SolveResult r = solve(p, p.seed);
    auto csv = open_out(o, "trajectory.csv");
    io::write_trajectory_csv(csv, r.extremal.trajectory, &r.extremal.multipliers);
    const auto report = io::report_to_json(r.report, &r.extremal);
    open_out(o, "report.json") << report.dump(2) << '\n';
    std::printf("converged=%s  maneuver_time=%.6f s  residual=%.3e  min|lamOmega|=%.3e\n",
                r.report.converged ? "yes" : "no", r.report.maneuver_time,
                r.report.final_residual_norm, r.report.min_lamOmega_norm);
    return r.report.converged ? kExitOk : kExitNotConverged;
}

int cmd_validate(const Options& o) {
    const auto checks = run_validation(o.seed.value_or(0));
    const auto j = validation_to_json(checks);
    open_out(o, "validation.json") << j.dump(2) << '\n';
    for (const auto& c : checks) {
        std::printf("[%s] %-13s %-36s value=%.3e threshold=%.3e\n", c.passed ? "PASS" : "FAIL",
                    c.section.c_str(), c.name.c_str(), c.value, c.threshold);
    }
    return j["all_passed"].get<bool>() ? kExitOk : kExitNotConverged;
}

int cmd_compare(const Options& o) {
    const ManeuverProblem p = load(o);
    const auto rows = run_compare(p, o.steps.value_or(p.steps));
    auto csv = open_out(o, "compare.csv");
    write_compare_csv(csv, rows);
    nlohmann::json summary = {{"steps", rows.empty() ? 0 : rows.back().k}};
    if (!rows.empty()) {
        summary["lgvi_orthogonality"] = rows.back().lgvi_orthogonality;
        summary["rk4_orthogonality"] = rows.back().rk4_orthogonality;
        summary["lgvi_energy_error"] = rows.back().lgvi_energy_error;
        summary["rk4_energy_error"] = rows.back().rk4_energy_error;
        summary["lgvi_momentum_error"] = rows.back().lgvi_momentum_error;
        summary["rk4_momentum_error"] = rows.back().rk4_momentum_error;
    }
    open_out(o, "compare_summary.json") << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-optimal rigid-body attitude maneuvers on SO(3)"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* cfg = sub->add_option("--config", o.config, "Problem JSON file");
        if (needs_config) cfg->required()->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    };

    auto* sim = app.add_subcommand("simulate", "Roll out the integrator with given or zero controls");
    add_common(sim, true);
    sim->add_option("--controls", o.controls, "CSV of controls ux,uy,uz, one row per step");
    sim->add_option_function<int>("--steps", [&](int n) { o.steps = n; }, "Override N");

    auto* opt = app.add_subcommand("optimize", "Solve the time-optimal maneuver by shooting");
    add_common(opt, true);
    opt->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { o.seed = s; }, "Random seed");
    opt->add_option_function<int>("--steps", [&](int n) { o.steps = n; }, "Override N");
    opt->add_option_function<double>("--tol", [&](double t) { o.tol = t; }, "Residual tolerance");

    auto* val = app.add_subcommand("validate", "Run the invariant and convergence checks");
    val->add_option("--out", o.out, "Output directory")->capture_default_str();
    val->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { o.seed = s; }, "Sampling seed");

    auto* cmp = app.add_subcommand("compare", "LGVI against unprojected RK4 on the free body");
    add_common(cmp, true);
    cmp->add_option_function<int>("--steps", [&](int n) { o.steps = n; }, "Number of steps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (sim->parsed()) return cmd_simulate(o);
        if (opt->parsed()) return cmd_optimize(o);
        if (val->parsed()) return cmd_validate(o);
        if (cmp->parsed()) return cmd_compare(o);
    } catch (const Error& e) {
        std::cerr << "attopt: " << e.what() << '\n';
        const bool input = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError;
        return input ? kExitInputError : kExitNotConverged;
    } catch (const std::exception& e) {
        std::cerr << "attopt: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
