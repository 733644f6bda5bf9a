#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "attopt/error.hpp"
#include "attopt/modes.hpp"
#include "attopt/optimality.hpp"

namespace attopt {

namespace {

// Prescribed smooth control and initial data for the multiplier study.
constexpr double kStudyHorizon = 0.8;

Vec3 study_control(double t) {
    return 0.1 * Vec3(std::cos(3.0 * t), std::sin(2.0 * t), 0.5);
}

Multipliers study_initial_multipliers() {
    return {Vec3(0.3, -0.2, 0.5), Vec3(1.0, -0.5, 0.2)};
}

const Vec3 kStudyOmega0(1.0, 0.5, -0.3);

InertiaModel reference_inertia() { return InertiaModel::diagonal(0.04, 0.19, 0.17); }

Vec3 random_vec(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return Vec3(d(rng), d(rng), d(rng));
}

Mat3 random_mat(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Mat3 m;
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = d(rng);
    return m;
}

// Principal moments satisfying the triangle inequality, in a random frame.
InertiaModel random_inertia(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(0.02, 1.0);
    Vec3 p;
    do {
        p = Vec3(d(rng), d(rng), d(rng));
    } while (p[0] > p[1] + p[2] || p[1] > p[0] + p[2] || p[2] > p[0] + p[1]);
    const RotationMatrix q = exp_so3(random_vec(rng, -2.0, 2.0));
    Mat3 j = q.matrix() * p.asDiagonal() * q.matrix().transpose();
    j = 0.5 * (j + j.transpose());
    return InertiaModel(j);
}

CheckResult check_max(std::string section, std::string name, double value, double threshold,
                      std::string detail = {}) {
    return {std::move(section), std::move(name), value < threshold, value, threshold,
            std::move(detail)};
}

CheckResult check_min(std::string section, std::string name, double value, double threshold,
                      std::string detail = {}) {
    return {std::move(section), std::move(name), value >= threshold, value, threshold,
            std::move(detail)};
}

void algebra_checks(std::mt19937_64& rng, std::vector<CheckResult>& out) {
    constexpr int kSamples = 10000;
    double hat_vee = 0.0, cross = 0.0, ortho = 0.0, det = 0.0, log_rt = 0.0;
    double trace_id = 0.0, conj_id = 0.0, exp_neg = 0.0;
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi - 1e-6);
    for (int i = 0; i < kSamples; ++i) {
        const Vec3 v = random_vec(rng, -3.0, 3.0);
        const Vec3 w = random_vec(rng, -3.0, 3.0);
        hat_vee = std::max(hat_vee, (vee(hat(v)) - v).cwiseAbs().maxCoeff());
        cross = std::max(cross, (hat(v) * w - v.cross(w)).cwiseAbs().maxCoeff());

        const RotationMatrix r = exp_so3(v);
        ortho = std::max(ortho, orthogonality_error(r.matrix()));
        det = std::max(det, std::abs(r.matrix().determinant() - 1.0));
        exp_neg = std::max(exp_neg, (exp_so3(-v).matrix() - r.matrix().transpose()).cwiseAbs().maxCoeff());

        const Vec3 u = random_vec(rng, -1.0, 1.0).normalized() * angle(rng);
        log_rt = std::max(log_rt, (log_so3(exp_so3(u)) - u).norm());

        const Mat3 a = random_mat(rng);
        const Vec3 x = random_vec(rng, -1.0, 1.0);
        trace_id = std::max(trace_id, (trace_identity(a, x) - hat((a.trace() * Mat3::Identity() - a) * x))
                                          .cwiseAbs().maxCoeff());
        conj_id = std::max(conj_id, (conjugation_identity(r, x) - hat(r.matrix().transpose() * x))
                                        .cwiseAbs().maxCoeff());
    }
    const std::string n = std::to_string(kSamples) + " random samples";
    out.push_back({"algebra", "hat_vee_roundtrip", hat_vee == 0.0, hat_vee, 0.0, n + ", exact"});
    out.push_back(check_max("algebra", "hat_is_cross_product", cross, 1e-14, n));
    out.push_back(check_max("algebra", "exp_orthonormality", ortho, 1e-14, n));
    out.push_back(check_max("algebra", "exp_determinant", det, 1e-14, n));
    out.push_back(check_max("algebra", "exp_negation_is_transpose", exp_neg, 1e-14, n));
    out.push_back(check_max("algebra", "exp_log_roundtrip", log_rt, 1e-11, n));
    out.push_back(check_max("algebra", "trace_identity", trace_id, 1e-13, n));
    out.push_back(check_max("algebra", "conjugation_identity", conj_id, 1e-13, n));
}

void step_equation_checks(std::mt19937_64& rng, std::vector<CheckResult>& out) {
    constexpr int kSamples = 1000;
    std::uniform_real_distribution<double> hd(1e-4, 1e-2);
    double worst = 0.0;
    int failures = 0;
    for (int i = 0; i < kSamples; ++i) {
        const InertiaModel inertia = random_inertia(rng);
        const Vec3 omega = random_vec(rng, -20.0, 20.0);
        const double h = hd(rng);
        try {
            const RotationMatrix f = solve_step_equation(omega, inertia, h);
            worst = std::max(worst, step_equation_residual(f, omega, inertia, h));
        } catch (const Error&) {
            ++failures;
        }
    }
    out.push_back(check_max("step_equation", "matrix_residual", worst, 1e-13,
                            std::to_string(kSamples) + " random (omega, h, J)"));
    out.push_back({"step_equation", "solver_failures", failures == 0, double(failures), 0.0, ""});
}

void conservation_checks(std::vector<CheckResult>& out) {
    const InertiaModel inertia = reference_inertia();
    constexpr int kSteps = 10000;
    constexpr double kH = 0.002;
    const BodyState init{RotationMatrix::identity(), kStudyOmega0};
    const std::vector<Vec3> zero(kSteps, Vec3::Zero());
    const DiscreteTrajectory traj = rollout(init, zero, inertia, kH);
    const ConservationMetrics m = conservation_metrics(traj, inertia);

    const double e0 = kinetic_energy(init.omega, inertia);
    double first = 0.0, second = 0.0;
    for (int k = 0; k <= kSteps; ++k) {
        const double de = std::abs(kinetic_energy(traj.states[k].omega, inertia) - e0);
        double& half = k <= kSteps / 2 ? first : second;
        half = std::max(half, de);
    }

    FlatState rk{Mat3::Identity(), kStudyOmega0};
    for (int k = 0; k < kSteps; ++k) rk = rk4_step(rk, Vec3::Zero(), inertia, kH);
    const double rk_ortho = orthogonality_error(rk.R);
    const double lgvi_ortho = std::max(orthogonality_error(traj.states.back().R.matrix()), 1e-16);

    out.push_back(check_max("conservation", "lgvi_momentum_drift", m.momentum_drift, 1e-11,
                            "10^4 free steps, h = 0.002"));
    out.push_back(check_max("conservation", "lgvi_orthogonality", m.orthogonality_error, 1e-12));
    out.push_back(check_max("conservation", "lgvi_energy_error_over_h2", m.energy_deviation / (kH * kH),
                            10.0 * e0, "max |E_k - E_0| / h^2 against 10 E_0"));
    out.push_back(check_max("conservation", "lgvi_energy_secular_ratio", second / first, 1.1,
                            "second-half max over first-half max"));
    out.push_back(check_min("conservation", "rk4_over_lgvi_orthogonality", rk_ortho / lgvi_ortho, 100.0,
                            "unprojected RK4 drift relative to LGVI at step 10^4"));
}

void multiplier_checks(std::mt19937_64& rng, std::vector<CheckResult>& out) {
    const InertiaModel inertia = reference_inertia();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double h = 0.002;
        const Vec3 omega_prev = random_vec(rng, -3.0, 3.0);
        const RotationMatrix f_prev = solve_step_equation(omega_prev, inertia, h);
        const Vec3 omega = random_vec(rng, -3.0, 3.0);
        const RotationMatrix f = solve_step_equation(omega, inertia, h);
        const Multipliers lam_prev{random_vec(rng, -1.0, 1.0), random_vec(rng, -1.0, 1.0)};
        const Multipliers lam = propagate_multipliers(lam_prev, f_prev, f, omega, inertia, h);
        const auto r = multiplier_equation_residual(lam_prev, lam, f_prev, f, omega, inertia, h);
        worst = std::max({worst, r.omega_equation.norm(), r.attitude_equation.norm()});
    }
    out.push_back(check_max("multipliers", "recursion_residual", worst, 1e-12,
                            "1000 random substitutions"));

    const auto p1 = multiplier_study_point(4e-3);
    const auto p2 = multiplier_study_point(2e-3);
    const auto p3 = multiplier_study_point(1e-3);
    auto stack = [](const Multipliers& m) {
        Eigen::Matrix<double, 6, 1> v;
        v << m.lamR, m.lamOmega;
        return v;
    };
    const double e1 = (stack(p1.discrete) - stack(p1.continuous)).norm();
    const double e2 = (stack(p2.discrete) - stack(p2.continuous)).norm();
    const double e3 = (stack(p3.discrete) - stack(p3.continuous)).norm();
    const double order = three_point_order((stack(p1.discrete) - stack(p2.discrete)).norm(),
                                           (stack(p2.discrete) - stack(p3.discrete)).norm());
    out.push_back(check_min("multipliers", "discrete_continuous_order", order, 1.0,
                            "three-point estimate over h = 4e-3, 2e-3, 1e-3; errors " +
                                std::to_string(e1) + ", " + std::to_string(e2) + ", " +
                                std::to_string(e3)));
    out.push_back({"multipliers", "discrete_continuous_error_shrinks", e1 > e2 && e2 > e3, e3, e2,
                   "error at h = 1e-3 against error at h = 2e-3"});
}

}  // namespace

double three_point_order(double diff_coarse, double diff_fine) {
    return std::log2(diff_coarse / diff_fine);
}

MultiplierStudyPoint multiplier_study_point(double h) {
    const InertiaModel inertia = reference_inertia();
    const int n = static_cast<int>(std::lround(kStudyHorizon / h));

    // Discrete: N + 1 steps so that F_N exists and λ_N sits at t = T.
    std::vector<Vec3> controls;
    for (int k = 0; k <= n; ++k) controls.push_back(study_control((k + 0.5) * h));
    const DiscreteTrajectory traj =
        rollout({RotationMatrix::identity(), kStudyOmega0}, controls, inertia, h);
    Multipliers lam = study_initial_multipliers();
    for (int k = 1; k <= n; ++k) {
        lam = propagate_multipliers(lam, traj.relative_rotations[k - 1], traj.relative_rotations[k],
                                    traj.states[k].omega, inertia, h);
    }

    // Continuous reference: RK4 on (Ω, λ) with a fine step.
    constexpr int kSub = 200000;
    const double dt = kStudyHorizon / kSub;
    Vec3 w = kStudyOmega0;
    Multipliers c = study_initial_multipliers();
    auto rates = [&](const Vec3& wv, const Multipliers& l, double t) {
        const Vec3 wdot = inertia.J_inverse() * (study_control(t) - wv.cross(inertia.J() * wv));
        const MultiplierRates r = continuous_multiplier_rhs(l, wv, inertia);
        return std::make_tuple(wdot, r.lamR_dot, r.lamOmega_dot);
    };
    for (int i = 0; i < kSub; ++i) {
        const double t = i * dt;
        auto advance = [&](const std::tuple<Vec3, Vec3, Vec3>& d, double s) {
            return std::make_pair(Vec3(w + s * std::get<0>(d)),
                                  Multipliers{c.lamR + s * std::get<1>(d), c.lamOmega + s * std::get<2>(d)});
        };
        const auto k1 = rates(w, c, t);
        const auto [w2, c2] = advance(k1, 0.5 * dt);
        const auto k2 = rates(w2, c2, t + 0.5 * dt);
        const auto [w3, c3] = advance(k2, 0.5 * dt);
        const auto k3 = rates(w3, c3, t + 0.5 * dt);
        const auto [w4, c4] = advance(k3, dt);
        const auto k4 = rates(w4, c4, t + dt);
        w += dt / 6.0 * (std::get<0>(k1) + 2 * std::get<0>(k2) + 2 * std::get<0>(k3) + std::get<0>(k4));
        c.lamR += dt / 6.0 * (std::get<1>(k1) + 2 * std::get<1>(k2) + 2 * std::get<1>(k3) + std::get<1>(k4));
        c.lamOmega +=
            dt / 6.0 * (std::get<2>(k1) + 2 * std::get<2>(k2) + 2 * std::get<2>(k3) + std::get<2>(k4));
    }
    return {h, lam, c};
}

std::vector<CheckResult> run_validation(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CheckResult> out;
    algebra_checks(rng, out);
    step_equation_checks(rng, out);
    conservation_checks(out);
    multiplier_checks(rng, out);
    return out;
}

nlohmann::json validation_to_json(const std::vector<CheckResult>& checks) {
    nlohmann::json j;
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.passed;
        j["checks"].push_back({{"section", c.section},
                               {"name", c.name},
                               {"passed", c.passed},
                               {"value", c.value},
                               {"threshold", c.threshold},
                               {"detail", c.detail}});
    }
    j["all_passed"] = all;
    return j;
}

}  // namespace attopt
