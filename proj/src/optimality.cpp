#include "attopt/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "attopt/error.hpp"

namespace attopt {

namespace {

constexpr double kSingularArcFloor = 1e-12;
constexpr double kNearPiMargin = 1e-6;

Vec3 skew_vector(const Mat3& m) {
    return Vec3(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1)));
}

// J·(F − Bᵀ·(FᵀJΩ)^), the matrix multiplying λ^Ω_k in the λ^Ω recursion.
Mat3 lamOmega_system(const Mat3& F, const Mat3& B, const Vec3& omega, const InertiaModel& inertia) {
    return inertia.J() * (F - B.transpose() * hat(F.transpose() * (inertia.J() * omega)));
}

}  // namespace

double ExtremalTrajectory::min_lamOmega_norm() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& lam : multipliers) {
        m = std::min(m, lam.lamOmega.norm());
    }
    return m;
}

Mat3 trace_complement(const Mat3& F) { return F.trace() * Mat3::Identity() - F; }

Mat3 bk_matrix(const RotationMatrix& F, const InertiaModel& inertia, double h) {
    const Mat3 fjd = F.matrix() * inertia.Jd();
    return h * F.matrix().transpose() * inverse3(trace_complement(fjd));
}

Multipliers propagate_multipliers(const Multipliers& lam_prev, const RotationMatrix& F_prev,
                                  const RotationMatrix& F_curr, const Vec3& omega_curr,
                                  const InertiaModel& inertia, double h) {
    const Mat3& Fp = F_prev.matrix();
    const Mat3& Fc = F_curr.matrix();
    const Mat3 tc_curr = trace_complement(Fc);

    Multipliers lam;
    lam.lamR = inverse3(tc_curr) * (Fc.transpose() * (trace_complement(Fp) * lam_prev.lamR));

    const Mat3 B = bk_matrix(F_curr, inertia, h);
    const Mat3 A = lamOmega_system(Fc, B, omega_curr, inertia);
    const Vec3 rhs = inertia.J() * lam_prev.lamOmega -
                     0.5 * inertia.J() * (B.transpose() * (tc_curr * lam.lamR));
    lam.lamOmega = inverse3(A) * rhs;
    return lam;
}

MultiplierEquationResidual multiplier_equation_residual(
    const Multipliers& lam_prev, const Multipliers& lam_curr, const RotationMatrix& F_prev,
    const RotationMatrix& F_curr, const Vec3& omega_curr, const InertiaModel& inertia, double h) {
    const Mat3& Fp = F_prev.matrix();
    const Mat3& Fc = F_curr.matrix();
    const Mat3 B = bk_matrix(F_curr, inertia, h);
    const Mat3& J = inertia.J();

    MultiplierEquationResidual r;
    r.omega_equation = -J * lam_prev.lamOmega +
                       lamOmega_system(Fc, B, omega_curr, inertia) * lam_curr.lamOmega +
                       0.5 * J * B.transpose() * trace_complement(Fc) * lam_curr.lamR;
    r.attitude_equation =
        trace_complement(Fp) * lam_prev.lamR - Fc * trace_complement(Fc) * lam_curr.lamR;
    return r;
}

Vec3 control_law(const Vec3& lamOmega, double u_max) {
    const double n = lamOmega.norm();
    if (!(n >= kSingularArcFloor)) {
        throw Error(ErrorCode::SingularArcSuspected,
                    "|lamOmega| = " + std::to_string(n) + " is below the singular-arc floor");
    }
    return (-u_max / n) * lamOmega;
}

double transversality_residual(const Multipliers& lam_last, const RotationMatrix& F_last,
                               const Vec3& omega_prev, const Vec3& u_last,
                               const InertiaModel& inertia, double h) {
    const Mat3& F = F_last.matrix();
    const Vec3 jw = inertia.J() * omega_prev;
    const Vec3 momentum_term = -jw + F.transpose() * jw + h * u_last;
    const Mat3 ft = F.transpose();
    const Vec3 attitude_term = 0.25 * skew_vector(F * F - ft * ft);
    return 1.0 + lam_last.lamOmega.dot(momentum_term) + lam_last.lamR.dot(attitude_term);
}

Vec3 skew_attitude_difference(const RotationMatrix& R_final, const RotationMatrix& R_target) {
    return skew_vector(R_final.matrix().transpose() * R_target.matrix());
}

Vec3 attitude_boundary_residual(const RotationMatrix& R_final, const RotationMatrix& R_target) {
    const double angle = rotation_angle(R_final.transpose() * R_target);
    if (angle >= std::numbers::pi - kNearPiMargin) {
        throw Error(ErrorCode::NearPiRotation,
                    "relative attitude angle " + std::to_string(angle) + " rad is too close to pi");
    }
    return skew_attitude_difference(R_final, R_target);
}

MultiplierRates continuous_multiplier_rhs(const Multipliers& lam, const Vec3& omega,
                                          const InertiaModel& inertia) {
    const Mat3& J = inertia.J();
    MultiplierRates rates;
    rates.lamOmega_dot = inertia.J_inverse() * ((J * omega).cross(lam.lamOmega) -
                                                J * omega.cross(lam.lamOmega) - lam.lamR);
    rates.lamR_dot = -omega.cross(lam.lamR);
    return rates;
}

double continuous_transversality(const Multipliers& lam, const Vec3& omega, const Vec3& u,
                                 const InertiaModel& inertia) {
    return 1.0 + lam.lamOmega.dot(u - omega.cross(inertia.J() * omega)) + lam.lamR.dot(omega);
}

ExtremalTrajectory forward_extremal(const BodyState& initial, const Multipliers& lam0,
                                    const InertiaModel& inertia, double u_max, int N, double h,
                                    const BodyState& target) {
    if (N < 1) {
        throw Error(ErrorCode::ValidationError, "forward_extremal needs N >= 1");
    }
    const auto n = static_cast<std::size_t>(N);
    ExtremalTrajectory ext;
    auto& traj = ext.trajectory;
    traj.h = h;
    traj.states.reserve(n + 1);
    traj.relative_rotations.reserve(n);
    traj.controls.reserve(n);
    ext.multipliers.reserve(n);

    traj.states.push_back(initial);
    ext.multipliers.push_back(lam0);

    const Mat3& J = inertia.J();
    std::size_t k = 0;
    try {
        traj.relative_rotations.push_back(solve_step_equation(initial.omega, inertia, h));
        for (k = 0; k < n; ++k) {
            const BodyState& s = traj.states[k];
            const RotationMatrix& F = traj.relative_rotations[k];
            const Vec3 u = control_law(ext.multipliers[k].lamOmega, u_max);
            traj.controls.push_back(u);

            BodyState next;
            next.R = s.R * F;
            next.omega = inertia.J_inverse() * (F.matrix().transpose() * (J * s.omega) + h * u);
            traj.states.push_back(next);

            if (k + 1 < n) {
                const RotationMatrix F_next = solve_step_equation(next.omega, inertia, h);
                traj.relative_rotations.push_back(F_next);
                const Multipliers lam = propagate_multipliers(ext.multipliers[k], F, F_next,
                                                              next.omega, inertia, h);
                const Mat3 B = bk_matrix(F_next, inertia, h);
                ext.max_condition_estimate =
                    std::max(ext.max_condition_estimate,
                             condition_estimate(lamOmega_system(F_next.matrix(), B, next.omega,
                                                                inertia)));
                ext.multipliers.push_back(lam);
            }
        }
    } catch (const Error& e) {
        throw e.at_step(k);
    }

    ext.transversality_residual =
        transversality_residual(ext.multipliers[n - 1], traj.relative_rotations[n - 1],
                                traj.states[n - 1].omega, traj.controls[n - 1], inertia, h);
    ext.boundary_residual_R = skew_attitude_difference(traj.states[n].R, target.R);
    ext.boundary_residual_omega = traj.states[n].omega - target.omega;
    return ext;
}

}  // namespace attopt
