#pragma once

#include <vector>

#include "attopt/dynamics.hpp"

namespace attopt {

/// Lagrange multipliers adjoining the kinematics (lamR) and the dynamics (lamOmega).
struct Multipliers {
    Vec3 lamR = Vec3::Zero();
    Vec3 lamOmega = Vec3::Zero();
};

struct ExtremalTrajectory {
    DiscreteTrajectory trajectory;
    std::vector<Multipliers> multipliers;  // λ_0 … λ_{N−1}
    double transversality_residual = 0.0;
    Vec3 boundary_residual_R = Vec3::Zero();
    Vec3 boundary_residual_omega = Vec3::Zero();
    double max_condition_estimate = 0.0;  // of the λ^Ω system matrix over all steps

    double min_lamOmega_norm() const;
};

/// B_k = h·Fᵀ·{tr(F·Jd)·I − F·Jd}⁻¹, mapping J·δΩ_k to the variation ξ_k of F_k.
Mat3 bk_matrix(const RotationMatrix& F, const InertiaModel& inertia, double h);

/// tr(F)·I − F.
Mat3 trace_complement(const Mat3& F);

/**
 * Advances the discrete multipliers from step k−1 to step k.
 *
 * λ^R_k solves (tr F_{k−1}·I − F_{k−1})·λ^R_{k−1} = F_k·(tr F_k·I − F_k)·λ^R_k, then λ^Ω_k solves
 *   J·(F_k − B_kᵀ·(F_kᵀJΩ_k)^)·λ^Ω_k = J·λ^Ω_{k−1} − ½·J·B_kᵀ·(tr F_k·I − F_k)·λ^R_k.
 * Both 3×3 systems are solved directly. Throws Error(SingularMatrix) if either is degenerate.
 */
Multipliers propagate_multipliers(const Multipliers& lam_prev, const RotationMatrix& F_prev,
                                  const RotationMatrix& F_curr, const Vec3& omega_curr,
                                  const InertiaModel& inertia, double h);

struct MultiplierEquationResidual {
    Vec3 omega_equation;  // left side of the λ^Ω recursion
    Vec3 attitude_equation;  // left side of the λ^R recursion
};

/// Substitutes a (λ_{k−1}, λ_k) pair back into both multiplier recursions.
MultiplierEquationResidual multiplier_equation_residual(
    const Multipliers& lam_prev, const Multipliers& lam_curr, const RotationMatrix& F_prev,
    const RotationMatrix& F_curr, const Vec3& omega_curr, const InertiaModel& inertia, double h);

/// Bang-bang law u = −ū·λ^Ω/‖λ^Ω‖. Throws Error(SingularArcSuspected) when ‖λ^Ω‖ < 1e-12.
Vec3 control_law(const Vec3& lamOmega, double u_max);

/// Discrete terminal-time condition, zero at an extremal:
/// 1 + λ^Ω_{N−1}·(−JΩ_{N−1} + F_{N−1}ᵀJΩ_{N−1} + h·u_N) + λ^R_{N−1}·¼·(F² − (Fᵀ)²)^∨.
double transversality_residual(const Multipliers& lam_last, const RotationMatrix& F_last,
                               const Vec3& omega_prev, const Vec3& u_last,
                               const InertiaModel& inertia, double h);

/// ½·(R_finalᵀR_target − R_targetᵀR_final)^∨ with no angle check. Also vanishes
/// at a relative angle of π, so callers must rule that branch out separately.
Vec3 skew_attitude_difference(const RotationMatrix& R_final, const RotationMatrix& R_target);

/// ½·(R_finalᵀR_target − R_targetᵀR_final)^∨. Zero iff the attitudes agree,
/// provided their relative angle is below π − 1e-6 (Error(NearPiRotation) otherwise).
Vec3 attitude_boundary_residual(const RotationMatrix& R_final, const RotationMatrix& R_target);

struct MultiplierRates {
    Vec3 lamOmega_dot;
    Vec3 lamR_dot;
};

/// Continuous-time multiplier equations, used only as an oracle for the discrete recursion:
/// λ̇^Ω = J⁻¹(JΩ × λ^Ω − J(Ω × λ^Ω) − λ^R),  λ̇^R = −Ω × λ^R.
MultiplierRates continuous_multiplier_rhs(const Multipliers& lam, const Vec3& omega,
                                          const InertiaModel& inertia);

/// Continuous terminal-time condition 1 + λ^Ω·(u − Ω×JΩ) + λ^R·Ω.
double continuous_transversality(const Multipliers& lam, const Vec3& omega, const Vec3& u,
                                 const InertiaModel& inertia);

/**
 * Runs the coupled state/multiplier recursion for N steps from (initial, lam0):
 * F_k from Ω_k, u_{k+1} from λ^Ω_k, then (R_{k+1}, Ω_{k+1}), then λ_{k+1}.
 * Residuals are taken against `target`. Errors carry the failing step index.
 */
ExtremalTrajectory forward_extremal(const BodyState& initial, const Multipliers& lam0,
                                    const InertiaModel& inertia, double u_max, int N, double h,
                                    const BodyState& target);

}  // namespace attopt
