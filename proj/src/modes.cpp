#include "attopt/modes.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "attopt/error.hpp"

namespace attopt {

ConservationMetrics conservation_metrics(const DiscreteTrajectory& traj,
                                         const InertiaModel& inertia) {
    ConservationMetrics m;
    if (traj.states.empty()) {
        return m;
    }
    const BodyState& s0 = traj.states.front();
    const Vec3 pi0 = spatial_momentum(s0.R.matrix(), s0.omega, inertia);
    const double e0 = kinetic_energy(s0.omega, inertia);
    for (const auto& s : traj.states) {
        m.momentum_drift =
            std::max(m.momentum_drift, (spatial_momentum(s.R.matrix(), s.omega, inertia) - pi0).norm());
        m.energy_deviation = std::max(m.energy_deviation, std::abs(kinetic_energy(s.omega, inertia) - e0));
        m.orthogonality_error = std::max(m.orthogonality_error, orthogonality_error(s.R.matrix()));
    }
    return m;
}

SimulationResult run_simulate(const ManeuverProblem& problem, std::span<const Vec3> controls) {
    problem.validate();
    std::vector<Vec3> u;
    if (controls.empty()) {
        u.assign(static_cast<std::size_t>(problem.steps), Vec3::Zero());
    } else if (controls.size() != static_cast<std::size_t>(problem.steps)) {
        throw Error(ErrorCode::ValidationError,
                    "controls: expected " + std::to_string(problem.steps) + " rows, got " +
                        std::to_string(controls.size()));
    } else {
        u.assign(controls.begin(), controls.end());
    }
    SimulationResult r;
    r.trajectory = rollout(problem.initial, u, problem.inertia, problem.h_initial);
    r.metrics = conservation_metrics(r.trajectory, problem.inertia);
    return r;
}

nlohmann::json simulation_summary(const SimulationResult& result) {
    return {
        {"steps", result.trajectory.steps()},
        {"h", result.trajectory.h},
        {"final_time", static_cast<double>(result.trajectory.steps()) * result.trajectory.h},
        {"momentum_drift", result.metrics.momentum_drift},
        {"energy_deviation", result.metrics.energy_deviation},
        {"orthogonality_error", result.metrics.orthogonality_error},
    };
}

std::vector<CompareRow> run_compare(const ManeuverProblem& problem, int steps) {
    problem.validate();
    std::vector<CompareRow> rows;
    if (steps <= 0) {
        return rows;
    }
    const InertiaModel& inertia = problem.inertia;
    const double h = problem.h_initial;
    const BodyState& init = problem.initial;
    const Vec3 pi0 = spatial_momentum(init.R.matrix(), init.omega, inertia);
    const double e0 = kinetic_energy(init.omega, inertia);

    BodyState lgvi = init;
    FlatState rk{init.R.matrix(), init.omega};
    rows.reserve(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) {
        if (k > 0) {
            try {
                lgvi = lgvi_step(lgvi, Vec3::Zero(), inertia, h).next;
            } catch (const Error& e) {
                throw e.at_step(static_cast<std::size_t>(k - 1));
            }
            rk = rk4_step(rk, Vec3::Zero(), inertia, h);
        }
        CompareRow row;
        row.k = k;
        row.t = k * h;
        row.lgvi_orthogonality = orthogonality_error(lgvi.R.matrix());
        row.rk4_orthogonality = orthogonality_error(rk.R);
        row.lgvi_energy_error = kinetic_energy(lgvi.omega, inertia) - e0;
        row.rk4_energy_error = kinetic_energy(rk.omega, inertia) - e0;
        row.lgvi_momentum_error = (spatial_momentum(lgvi.R.matrix(), lgvi.omega, inertia) - pi0).norm();
        row.rk4_momentum_error = (spatial_momentum(rk.R, rk.omega, inertia) - pi0).norm();
        row.lgvi_omega_norm = lgvi.omega.norm();
        row.rk4_omega_norm = rk.omega.norm();
        rows.push_back(row);
    }
    return rows;
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
    out << "k,t,lgvi_orthogonality,rk4_orthogonality,lgvi_energy_error,rk4_energy_error,"
           "lgvi_momentum_error,rk4_momentum_error,lgvi_omega_norm,rk4_omega_norm\n";
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.k, r.t, r.lgvi_orthogonality, r.rk4_orthogonality, r.lgvi_energy_error,
                      r.rk4_energy_error, r.lgvi_momentum_error, r.rk4_momentum_error,
                      r.lgvi_omega_norm, r.rk4_omega_norm);
        out << buf;
    }
}

}  // namespace attopt
