#include "attopt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "attopt/error.hpp"

namespace attopt {

namespace {

double fd_step(double x) { return std::max(1e-7 * std::abs(x), 1e-9); }

ShootingResidual penalty_residual() {
    ShootingResidual r;
    r.attitude = Vec3::Constant(kInfeasiblePenalty);
    r.omega = Vec3::Constant(kInfeasiblePenalty);
    r.transversality = kInfeasiblePenalty;
    r.feasible = false;
    return r;
}

ShootingResidual residual_from_extremal(const ExtremalTrajectory& ext) {
    ShootingResidual r;
    r.attitude = ext.boundary_residual_R;
    r.omega = ext.boundary_residual_omega;
    r.transversality = ext.transversality_residual;
    return r;
}

// Residual the LM iteration works on. The skew-part attitude residual is also
// zero on the whole set of half-turn errors, and random draws are reliably
// attracted there. Dividing by (1 + tr Q)/2 gives 2·tan(θ/2)·n instead, which
// agrees with the skew form to first order at the target and is unbounded
// towards a half-turn.
ShootingResidual steering_residual(const ShootingVariables& vars, const ManeuverProblem& problem) {
    if (!(vars.h > 0.0) || !vars.to_vector().allFinite()) {
        return penalty_residual();
    }
    try {
        const ExtremalTrajectory ext = evaluate_extremal(vars, problem);
        ShootingResidual r = residual_from_extremal(ext);
        const Mat3 q = ext.trajectory.states.back().R.matrix().transpose() * problem.target.R.matrix();
        const double half_trace = 0.5 * (1.0 + q.trace());
        if (!(half_trace > 1e-8)) {
            return penalty_residual();
        }
        r.attitude *= 2.0 / half_trace;
        if (!r.to_vector().allFinite()) {
            return penalty_residual();
        }
        return r;
    } catch (const Error&) {
        return penalty_residual();
    }
}

Mat7 steering_jacobian(const ShootingVariables& vars, const ManeuverProblem& problem,
                       const Vec7& r0) {
    const Vec7 x = vars.to_vector();
    Mat7 jac;
    for (int i = 0; i < 7; ++i) {
        Vec7 xp = x;
        const double dx = fd_step(x[i]);
        xp[i] += dx;
        jac.col(i) =
            (steering_residual(ShootingVariables::from_vector(xp), problem).to_vector() - r0) / dx;
    }
    return jac;
}

bool h_admissible(double h, const SolverSettings& s) { return h >= s.h_min && h <= s.h_max; }

// The skew-part attitude residual also vanishes for a half-turn error; only a
// terminal attitude within a quarter turn of the target counts.
bool on_target_branch(const ExtremalTrajectory& ext, const RotationMatrix& target) {
    return rotation_angle(ext.trajectory.states.back().R.transpose() * target) <
           std::numbers::pi / 2;
}

struct DrawOutcome {
    ShootingVariables vars;
    ShootingResidual res;
    int iterations = 0;
};

DrawOutcome run_draw(ShootingVariables start, const ManeuverProblem& problem) {
    const SolverSettings& s = problem.solver;
    DrawOutcome out{start, steering_residual(start, problem), 0};
    if (!out.res.feasible) {
        return out;
    }
    Vec7 x = start.to_vector();
    Vec7 r = out.res.to_vector();
    double damping = s.initial_damping;

    // Iterate past the tolerance while progress continues, so the reported
    // residual sits near rounding level rather than just under the threshold.
    const double polish_target = 1e-3 * s.tolerance;
    while (out.iterations < s.max_iterations && r.norm() >= polish_target) {
        ++out.iterations;
        const Mat7 jac = steering_jacobian(ShootingVariables::from_vector(x), problem, r);
        const Mat7 normal = jac.transpose() * jac;
        const Vec7 gradient = jac.transpose() * r;
        Vec7 scale = normal.diagonal();
        const double floor = 1e-12 * std::max(scale.maxCoeff(), 1e-300);
        scale = scale.cwiseMax(floor);

        bool accepted = false;
        while (damping <= s.max_damping) {
            Mat7 lhs = normal;
            lhs.diagonal() += damping * scale;
            const Vec7 step = -lhs.ldlt().solve(gradient);
            const Vec7 x_new = x + step;
            if (step.allFinite() && h_admissible(x_new[6], s)) {
                const auto cand = ShootingVariables::from_vector(x_new);
                const ShootingResidual res_new = steering_residual(cand, problem);
                if (res_new.feasible && res_new.norm() < r.norm()) {
                    x = x_new;
                    r = res_new.to_vector();
                    out.vars = cand;
                    out.res = res_new;
                    damping = std::max(damping / 10.0, 1e-15);
                    accepted = true;
                    break;
                }
            }
            damping *= 10.0;
        }
        if (!accepted || (r.norm() < s.tolerance && damping > 1e3)) {
            break;
        }
    }
    return out;
}

}  // namespace

Vec7 ShootingVariables::to_vector() const {
    Vec7 x;
    x << lam0.lamR, lam0.lamOmega, h;
    return x;
}

ShootingVariables ShootingVariables::from_vector(const Vec7& x) {
    ShootingVariables v;
    v.lam0.lamR = x.segment<3>(0);
    v.lam0.lamOmega = x.segment<3>(3);
    v.h = x[6];
    return v;
}

Vec7 ShootingResidual::to_vector() const {
    Vec7 r;
    r << attitude, omega, transversality;
    return r;
}

ExtremalTrajectory evaluate_extremal(const ShootingVariables& vars, const ManeuverProblem& problem) {
    return forward_extremal(problem.initial, vars.lam0, problem.inertia, problem.u_max,
                            problem.steps, vars.h, problem.target);
}

ShootingResidual residual(const ShootingVariables& vars, const ManeuverProblem& problem) {
    if (!(vars.h > 0.0) || !vars.to_vector().allFinite()) {
        return penalty_residual();
    }
    try {
        ShootingResidual r = residual_from_extremal(evaluate_extremal(vars, problem));
        if (!r.to_vector().allFinite()) {
            return penalty_residual();
        }
        return r;
    } catch (const Error&) {
        return penalty_residual();
    }
}

Mat7 jacobian_fd(const ShootingVariables& vars, const ManeuverProblem& problem) {
    const Vec7 x = vars.to_vector();
    const Vec7 r0 = residual(vars, problem).to_vector();
    Mat7 jac;
    for (int i = 0; i < 7; ++i) {
        Vec7 xp = x;
        const double dx = fd_step(x[i]);
        xp[i] += dx;
        jac.col(i) = (residual(ShootingVariables::from_vector(xp), problem).to_vector() - r0) / dx;
    }
    return jac;
}

Mat7 jacobian_central(const ShootingVariables& vars, const ManeuverProblem& problem) {
    const Vec7 x = vars.to_vector();
    Mat7 jac;
    for (int i = 0; i < 7; ++i) {
        Vec7 xp = x;
        Vec7 xm = x;
        const double dx = fd_step(x[i]);
        xp[i] += dx;
        xm[i] -= dx;
        jac.col(i) = (residual(ShootingVariables::from_vector(xp), problem).to_vector() -
                      residual(ShootingVariables::from_vector(xm), problem).to_vector()) /
                     (2.0 * dx);
    }
    return jac;
}

SolveResult solve(const ManeuverProblem& problem, std::uint64_t seed) {
    problem.validate();
    const SolverSettings& s = problem.solver;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);

    SolverReport report;
    DrawOutcome best;
    bool have_best = false;
    for (int draw = 0; draw < s.restart_budget; ++draw) {
        ShootingVariables start;
        for (int i = 0; i < 3; ++i) start.lam0.lamR[i] = uniform(rng);
        for (int i = 0; i < 3; ++i) start.lam0.lamOmega[i] = uniform(rng);
        start.h = problem.h_initial;

        DrawOutcome out = run_draw(start, problem);
        out.res = residual(out.vars, problem);
        report.iterations += out.iterations;
        report.restarts_used = draw;

        bool converged = out.res.feasible && out.res.norm() < s.tolerance;
        if (converged) {
            converged = on_target_branch(evaluate_extremal(out.vars, problem), problem.target.R);
        }
        if (!have_best || converged || (out.res.feasible && out.res.norm() < best.res.norm())) {
            best = out;
            have_best = true;
        }
        if (converged) {
            report.converged = true;
            break;
        }
    }

    report.variables = best.vars;
    report.final_residual = best.res;
    report.final_residual_norm = best.res.norm();
    report.maneuver_time = problem.steps * best.vars.h;

    SolveResult result;
    if (best.res.feasible) {
        result.extremal = evaluate_extremal(best.vars, problem);
        report.min_lamOmega_norm = result.extremal.min_lamOmega_norm();
    }
    result.report = report;
    return result;
}

}  // namespace attopt
