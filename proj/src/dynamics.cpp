#include "attopt/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "attopt/error.hpp"

namespace attopt {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

Vec3 step_function(const Vec3& f, const Mat3& j, const Vec3& target) {
    const auto c = rodrigues_coefficients(f.norm());
    const Vec3 jf = j * f;
    return c.a * jf + c.b * f.cross(jf) - target;
}

Mat3 step_jacobian_analytic(const Vec3& f, const Mat3& j) {
    const auto c = rodrigues_coefficients(f.norm());
    const Vec3 jf = j * f;
    return c.a * j + c.da_over_theta * jf * f.transpose() + c.b * (hat(f) * j - hat(jf)) +
           c.db_over_theta * f.cross(jf) * f.transpose();
}

Mat3 step_jacobian_fd(const Vec3& f, const Mat3& j, const Vec3& target) {
    const Vec3 g0 = step_function(f, j, target);
    const double delta = 1e-7 * std::max(f.norm(), 1e-10);
    Mat3 jac;
    for (int i = 0; i < 3; ++i) {
        Vec3 fp = f;
        fp[i] += delta;
        jac.col(i) = (step_function(fp, j, target) - g0) / delta;
    }
    return jac;
}

}  // namespace

InertiaModel::InertiaModel(const Mat3& j) : j_(j) {
    if (!j.allFinite()) {
        throw Error(ErrorCode::ValidationError, "inertia has non-finite entries");
    }
    if ((j - j.transpose()).norm() > kSymmetryTolerance) {
        throw Error(ErrorCode::ValidationError, "inertia matrix is not symmetric");
    }
    const Eigen::SelfAdjointEigenSolver<Mat3> eig(j, Eigen::EigenvaluesOnly);
    if (!(eig.eigenvalues().minCoeff() > 0.0)) {
        throw Error(ErrorCode::ValidationError, "inertia matrix is not positive definite");
    }
    jd_ = 0.5 * j.trace() * Mat3::Identity() - j;
    j_inv_ = inverse3(j);
}

InertiaModel InertiaModel::diagonal(double j1, double j2, double j3) {
    return InertiaModel(Vec3(j1, j2, j3).asDiagonal().toDenseMatrix());
}

StateDerivative continuous_rhs(const Mat3& R, const Vec3& omega, const Vec3& u,
                               const InertiaModel& inertia) {
    return {R * hat(omega), inertia.J_inverse() * (u - omega.cross(inertia.J() * omega))};
}

StateDerivative continuous_rhs(const BodyState& state, const Vec3& u,
                               const InertiaModel& inertia) {
    return continuous_rhs(state.R.matrix(), state.omega, u, inertia);
}

FlatState rk4_step(const FlatState& s, const Vec3& u, const InertiaModel& inertia, double h) {
    const auto k1 = continuous_rhs(s.R, s.omega, u, inertia);
    const auto k2 = continuous_rhs(s.R + 0.5 * h * k1.R_dot, s.omega + 0.5 * h * k1.omega_dot, u,
                                   inertia);
    const auto k3 = continuous_rhs(s.R + 0.5 * h * k2.R_dot, s.omega + 0.5 * h * k2.omega_dot, u,
                                   inertia);
    const auto k4 = continuous_rhs(s.R + h * k3.R_dot, s.omega + h * k3.omega_dot, u, inertia);
    FlatState next;
    next.R = s.R + (h / 6.0) * (k1.R_dot + 2.0 * k2.R_dot + 2.0 * k3.R_dot + k4.R_dot);
    next.omega = s.omega +
                 (h / 6.0) * (k1.omega_dot + 2.0 * k2.omega_dot + 2.0 * k3.omega_dot + k4.omega_dot);
    return next;
}

StepSolution solve_step_vector(const Vec3& omega, const InertiaModel& inertia, double h,
                               const StepSolveOptions& options) {
    const Mat3& j = inertia.J();
    const Vec3 target = h * (j * omega);
    const double tol = options.tolerance * std::max(1.0, target.norm());

    Vec3 f = h * omega;
    Vec3 g = step_function(f, j, target);
    int iter = 0;
    while (!(g.norm() <= tol)) {
        if (iter >= options.max_iterations || !g.allFinite()) {
            throw Error(ErrorCode::NoConvergence,
                        "step equation did not converge (|g| = " + std::to_string(g.norm()) +
                            ", h = " + std::to_string(h) + ")");
        }
        const Mat3 jac = options.jacobian == StepJacobian::Analytic
                             ? step_jacobian_analytic(f, j)
                             : step_jacobian_fd(f, j, target);
        f -= jac.partialPivLu().solve(g);
        g = step_function(f, j, target);
        ++iter;
    }
    if (f.norm() >= std::numbers::pi / 2) {
        throw Error(ErrorCode::StepTooLarge,
                    "relative rotation " + std::to_string(f.norm()) + " rad exceeds pi/2");
    }
    return {f, exp_so3(f), iter};
}

RotationMatrix solve_step_equation(const Vec3& omega, const InertiaModel& inertia, double h) {
    return solve_step_vector(omega, inertia, h).F;
}

double step_equation_residual(const RotationMatrix& f, const Vec3& omega,
                              const InertiaModel& inertia, double h) {
    const Mat3& F = f.matrix();
    const Mat3& jd = inertia.Jd();
    return (h * hat(inertia.J() * omega) - (F * jd - jd * F.transpose())).norm();
}

LgviStep lgvi_step(const BodyState& state, const Vec3& u_next, const InertiaModel& inertia,
                   double h) {
    const RotationMatrix F = solve_step_equation(state.omega, inertia, h);
    BodyState next;
    next.R = state.R * F;
    next.omega =
        inertia.J_inverse() * (F.matrix().transpose() * (inertia.J() * state.omega) + h * u_next);
    return {next, F};
}

DiscreteTrajectory rollout(const BodyState& initial, std::span<const Vec3> controls,
                           const InertiaModel& inertia, double h) {
    if (controls.empty()) {
        throw Error(ErrorCode::ValidationError, "rollout needs at least one control");
    }
    DiscreteTrajectory traj;
    traj.h = h;
    traj.states.reserve(controls.size() + 1);
    traj.relative_rotations.reserve(controls.size());
    traj.controls.assign(controls.begin(), controls.end());
    traj.states.push_back(initial);
    for (std::size_t k = 0; k < controls.size(); ++k) {
        try {
            auto step = lgvi_step(traj.states.back(), controls[k], inertia, h);
            traj.states.push_back(step.next);
            traj.relative_rotations.push_back(step.F);
        } catch (const Error& e) {
            throw e.at_step(k);
        }
    }
    return traj;
}

double kinetic_energy(const Vec3& omega, const InertiaModel& inertia) {
    return 0.5 * omega.dot(inertia.J() * omega);
}

Vec3 spatial_momentum(const Mat3& R, const Vec3& omega, const InertiaModel& inertia) {
    return R * (inertia.J() * omega);
}

}  // namespace attopt
