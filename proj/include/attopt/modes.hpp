#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "attopt/dynamics.hpp"
#include "attopt/problem.hpp"
#include "attopt/solver.hpp"

namespace attopt {

/// Largest deviations from the initial value along a trajectory.
struct ConservationMetrics {
    double momentum_drift = 0.0;       // max_k ‖R_kJΩ_k − R_0JΩ_0‖
    double energy_deviation = 0.0;     // max_k |E_k − E_0|
    double orthogonality_error = 0.0;  // max_k ‖R_kᵀR_k − I‖_F
};

ConservationMetrics conservation_metrics(const DiscreteTrajectory& traj,
                                         const InertiaModel& inertia);

struct SimulationResult {
    DiscreteTrajectory trajectory;
    ConservationMetrics metrics;
};

/// LGVI rollout of the problem's initial state with step problem.h_initial.
/// An empty control list means zero control for problem.steps steps; otherwise
/// the list must hold exactly problem.steps entries (Error(ValidationError)).
SimulationResult run_simulate(const ManeuverProblem& problem, std::span<const Vec3> controls);

nlohmann::json simulation_summary(const SimulationResult& result);

struct CompareRow {
    int k = 0;
    double t = 0.0;
    double lgvi_orthogonality = 0.0;
    double rk4_orthogonality = 0.0;
    double lgvi_energy_error = 0.0;
    double rk4_energy_error = 0.0;
    double lgvi_momentum_error = 0.0;
    double rk4_momentum_error = 0.0;
    double lgvi_omega_norm = 0.0;
    double rk4_omega_norm = 0.0;
};

/// Free-body LGVI and unprojected RK4 side by side from the problem's initial
/// state, step problem.h_initial. Row 0 is the initial state; zero steps gives no rows.
std::vector<CompareRow> run_compare(const ManeuverProblem& problem, int steps);

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);

struct CheckResult {
    std::string section;
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

/// The invariant suites of all modules: algebra identities, conservation,
/// step-equation residuals, multiplier residuals and the discrete/continuous
/// multiplier convergence study.
std::vector<CheckResult> run_validation(std::uint64_t seed = 0);

nlohmann::json validation_to_json(const std::vector<CheckResult>& checks);

/// Observed order log2(‖a − b‖ / ‖b − c‖) from three solutions at h, h/2, h/4.
double three_point_order(double diff_coarse, double diff_fine);

/// Discrete and continuous multipliers at the end of a fixed-horizon,
/// prescribed-control run. Used by the multiplier convergence study.
struct MultiplierStudyPoint {
    double h = 0.0;
    Multipliers discrete;
    Multipliers continuous;
};
MultiplierStudyPoint multiplier_study_point(double h);

}  // namespace attopt
