#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "attopt/dynamics.hpp"
#include "attopt/error.hpp"
#include "attopt/problem.hpp"
#include "attopt/so3.hpp"

namespace testing {

using attopt::Mat3;
using attopt::Vec3;

inline Vec3 uniform_vec(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return {d(rng), d(rng), d(rng)};
}

inline Mat3 uniform_mat(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = d(rng);
    return m;
}

inline Vec3 unit_vec(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Vec3 v(n(rng), n(rng), n(rng));
    return v.normalized();
}

// Rotation angle drawn in [0, max_angle] about a random axis.
inline attopt::RotationMatrix random_rotation(std::mt19937_64& rng, double max_angle) {
    std::uniform_real_distribution<double> a(0.0, max_angle);
    return attopt::exp_so3(unit_vec(rng) * a(rng));
}

// Principal moments satisfying the triangle inequality, with a random orientation.
inline attopt::InertiaModel random_inertia(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(0.02, 0.3);
    double j1, j2, j3;
    do {
        j1 = d(rng);
        j2 = d(rng);
        j3 = d(rng);
    } while (j1 + j2 <= j3 || j2 + j3 <= j1 || j1 + j3 <= j2);
    const Mat3 q = random_rotation(rng, std::numbers::pi).matrix();
    Mat3 j = q * Vec3(j1, j2, j3).asDiagonal() * q.transpose();
    j = 0.5 * (j + j.transpose()).eval();
    return attopt::InertiaModel(j);
}

// Rotation from axis (1,1,1)/sqrt(3) by the given angle in degrees, built by hand.
inline Mat3 diagonal_axis_rotation(double deg) {
    const double t = deg * std::numbers::pi / 180.0;
    const double c = std::cos(t), s = std::sin(t), k = 1.0 / std::sqrt(3.0);
    const double off = (1.0 - c) / 3.0;
    Mat3 r;
    r << c + off, off - s * k, off + s * k,
         off + s * k, c + off, off - s * k,
         off - s * k, off + s * k, c + off;
    return r;
}

inline attopt::ManeuverProblem paper_problem(double deg, int steps = 1000) {
    attopt::ManeuverProblem p;
    p.inertia = attopt::InertiaModel::diagonal(0.04, 0.19, 0.17);
    p.target.R = attopt::RotationMatrix::from_matrix(diagonal_axis_rotation(deg));
    p.u_max = 0.1;
    p.steps = steps;
    p.h_initial = 0.002;
    return p;
}

// Code of the attopt::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<attopt::ErrorCode> error_code_of(F&& f) {
    try {
        f();
    } catch (const attopt::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace testing
