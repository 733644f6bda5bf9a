#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "attopt/optimality.hpp"
#include "attopt/problem.hpp"

namespace attopt {

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

/// The seven shooting unknowns: initial multipliers and the step size.
struct ShootingVariables {
    Multipliers lam0;
    double h = 0.002;

    Vec7 to_vector() const;  // [λ^R_0, λ^Ω_0, h]
    static ShootingVariables from_vector(const Vec7& x);
};

/// Terminal boundary conditions as a 7-vector: attitude (3), angular velocity (3),
/// transversality (1). Infeasible points (the forward pass threw) carry a
/// large penalty value in every component and feasible = false.
struct ShootingResidual {
    Vec3 attitude = Vec3::Zero();
    Vec3 omega = Vec3::Zero();
    double transversality = 0.0;
    bool feasible = true;

    Vec7 to_vector() const;
    double norm() const { return to_vector().norm(); }
};

inline constexpr double kInfeasiblePenalty = 1e6;

struct SolverReport {
    bool converged = false;
    int iterations = 0;  // LM iterations summed over all draws
    double final_residual_norm = 0.0;
    double maneuver_time = 0.0;  // N·h
    double min_lamOmega_norm = 0.0;
    int restarts_used = 0;  // draws after the first
    ShootingResidual final_residual;
    ShootingVariables variables;
};

struct SolveResult {
    ExtremalTrajectory extremal;
    SolverReport report;
};

ShootingResidual residual(const ShootingVariables& vars, const ManeuverProblem& problem);

/// Forward-difference Jacobian of the residual, step max(1e-7·|x_i|, 1e-9) per column.
Mat7 jacobian_fd(const ShootingVariables& vars, const ManeuverProblem& problem);

/// Central-difference variant, used to cross-check jacobian_fd.
Mat7 jacobian_central(const ShootingVariables& vars, const ManeuverProblem& problem);

/// Runs the full extremal at the given shooting point against the problem target.
ExtremalTrajectory evaluate_extremal(const ShootingVariables& vars, const ManeuverProblem& problem);

/**
 * Indirect shooting by Levenberg–Marquardt on the 7-vector residual.
 *
 * Each draw starts from λ_0 with components uniform in [−1, 1] (seeded) and
 * h = problem.h_initial. Damping starts at settings.initial_damping and is
 * scaled ×10 on rejection, ÷10 on acceptance; steps leaving [h_min, h_max]
 * are rejected. A draw that stalls is replaced by a fresh one until the
 * restart budget is spent. When nothing converges the report carries the
 * best point found and converged = false.
 */
SolveResult solve(const ManeuverProblem& problem, std::uint64_t seed);

}  // namespace attopt
