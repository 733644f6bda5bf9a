#pragma once

#include <span>
#include <vector>

#include "attopt/so3.hpp"

namespace attopt {

/// Moment of inertia J together with the nonstandard inertia
/// Jd = ½tr(J)·I − J that appears in the discrete step equation.
class InertiaModel {
public:
    /// Throws Error(ValidationError) unless J is symmetric (1e-12) and positive definite.
    explicit InertiaModel(const Mat3& j);
    InertiaModel() : InertiaModel(Mat3::Identity()) {}

    static InertiaModel diagonal(double j1, double j2, double j3);

    const Mat3& J() const { return j_; }
    const Mat3& Jd() const { return jd_; }
    const Mat3& J_inverse() const { return j_inv_; }

private:
    Mat3 j_;
    Mat3 jd_;
    Mat3 j_inv_;
};

struct BodyState {
    RotationMatrix R;
    Vec3 omega = Vec3::Zero();
};

/// Unconstrained (R, Ω) pair. The explicit Runge–Kutta reference integrator
/// works on the 9 entries of R as flat coordinates and leaves SO(3), so its
/// state cannot be a BodyState.
struct FlatState {
    Mat3 R = Mat3::Identity();
    Vec3 omega = Vec3::Zero();
};

struct DiscreteTrajectory {
    double h = 0.0;
    std::vector<BodyState> states;                   // R_0 … R_N
    std::vector<RotationMatrix> relative_rotations;  // F_0 … F_{N−1}
    std::vector<Vec3> controls;                      // u_1 … u_N

    std::size_t steps() const { return relative_rotations.size(); }
};

struct StateDerivative {
    Mat3 R_dot;
    Vec3 omega_dot;
};

/// Ṙ = R·Ω̂ and Ω̇ = J⁻¹(u − Ω × JΩ).
StateDerivative continuous_rhs(const Mat3& R, const Vec3& omega, const Vec3& u,
                               const InertiaModel& inertia);
StateDerivative continuous_rhs(const BodyState& state, const Vec3& u, const InertiaModel& inertia);

/// Classical RK4 on the flat coordinates with u held constant over the step.
/// No re-projection onto SO(3).
FlatState rk4_step(const FlatState& state, const Vec3& u, const InertiaModel& inertia, double h);

enum class StepJacobian { Analytic, FiniteDifference };

struct StepSolveOptions {
    double tolerance = 1e-14;  // on ‖g(f)‖, relative to max(1, ‖h·JΩ‖)
    int max_iterations = 50;
    StepJacobian jacobian = StepJacobian::Analytic;
};

struct StepSolution {
    Vec3 f;            // F = exp(f̂)
    RotationMatrix F;
    int iterations = 0;
};

/**
 * Solves h·(JΩ)^ = F·Jd − Jd·Fᵀ for F ∈ SO(3).
 *
 * With F = exp(f̂) the matrix equation is equivalent to the 3-vector equation
 *   g(f) = (sinθ/θ)·Jf + ((1 − cosθ)/θ²)·(f × Jf) − h·JΩ = 0,   θ = ‖f‖,
 * which is solved by Newton iteration from f⁰ = h·Ω.
 *
 * Throws Error(NoConvergence) if Newton does not converge and
 * Error(StepTooLarge) if the root has ‖f‖ ≥ π/2.
 */
StepSolution solve_step_vector(const Vec3& omega, const InertiaModel& inertia, double h,
                               const StepSolveOptions& options = {});

RotationMatrix solve_step_equation(const Vec3& omega, const InertiaModel& inertia, double h);

/// ‖h·(JΩ)^ − (F·Jd − Jd·Fᵀ)‖_F, evaluated directly on the matrix form.
double step_equation_residual(const RotationMatrix& f, const Vec3& omega,
                              const InertiaModel& inertia, double h);

struct LgviStep {
    BodyState next;
    RotationMatrix F;
};

/// One step of the Lie group variational integrator:
/// F_k from the step equation, R_{k+1} = R_k·F_k, JΩ_{k+1} = F_kᵀ·JΩ_k + h·u_{k+1}.
LgviStep lgvi_step(const BodyState& state, const Vec3& u_next, const InertiaModel& inertia,
                   double h);

/// Iterates lgvi_step over the control sequence u_1 … u_N.
/// Step errors are rethrown with the failing step index attached.
DiscreteTrajectory rollout(const BodyState& initial, std::span<const Vec3> controls,
                           const InertiaModel& inertia, double h);

double kinetic_energy(const Vec3& omega, const InertiaModel& inertia);

/// Spatial angular momentum R·J·Ω.
Vec3 spatial_momentum(const Mat3& R, const Vec3& omega, const InertiaModel& inertia);

}  // namespace attopt
