#pragma once

#include <Eigen/Dense>

namespace attopt {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/**
 * Element of SO(3): the attitude of the body, mapping body-frame vectors to
 * the inertial frame.
 *
 * Orthonormality and det = +1 are checked once when a matrix enters from
 * outside (from_matrix). Products, transposes and exp_so3 results are closed
 * under the group and are not re-checked; nothing here ever re-projects.
 */
class RotationMatrix {
public:
    static constexpr double kOrthonormalityTolerance = 1e-12;

    RotationMatrix() : m_(Mat3::Identity()) {}

    static RotationMatrix identity() { return RotationMatrix(); }

    /// Validated construction. Throws Error(ValidationError) if m is not a proper rotation.
    static RotationMatrix from_matrix(const Mat3& m);

    const Mat3& matrix() const { return m_; }
    double operator()(int row, int col) const { return m_(row, col); }

    RotationMatrix transpose() const { return RotationMatrix(m_.transpose(), Trusted{}); }
    RotationMatrix operator*(const RotationMatrix& other) const {
        return RotationMatrix(m_ * other.m_, Trusted{});
    }
    Vec3 operator*(const Vec3& v) const { return m_ * v; }

private:
    struct Trusted {};
    RotationMatrix(const Mat3& m, Trusted) : m_(m) {}

    friend RotationMatrix exp_so3(const Vec3& v);

    Mat3 m_;
};

/// ‖MᵀM − I‖_F, the drift-off-the-group measure used throughout.
double orthogonality_error(const Mat3& m);

Mat3 hat(const Vec3& v);

/// Inverse of hat. Accepts near-skew input (symmetric part within 1e-10 in
/// Frobenius norm) and extracts ½(m − mᵀ); throws Error(NotSkew) otherwise.
Vec3 vee(const Mat3& m);

/// Rodrigues' formula. Small angles use Taylor series for the coefficients.
RotationMatrix exp_so3(const Vec3& v);

/// Rotation angle in [0, π], computed robustly from the skew and trace parts.
double rotation_angle(const RotationMatrix& r);

/// Principal logarithm, ‖result‖ < π. Throws Error(NearPiRotation) when the
/// angle is within 1e-6 of π.
Vec3 log_so3(const RotationMatrix& r);

/// x̂A + Aᵀx̂, which equals hat((tr(A)·I − A)·x).
Mat3 trace_identity(const Mat3& a, const Vec3& x);

/// Fᵀx̂F, which equals hat(Fᵀx).
Mat3 conjugation_identity(const RotationMatrix& f, const Vec3& x);

/// sin(θ)/θ and (1 − cos θ)/θ², the Rodrigues coefficients, with their
/// derivatives divided by θ (so that d(coef)/dv = deriv_over_theta · v).
struct RodriguesCoefficients {
    double a;
    double b;
    double da_over_theta;
    double db_over_theta;
};
RodriguesCoefficients rodrigues_coefficients(double theta);

/// Closed-form 3×3 inverse by adjugate / determinant.
/// Throws Error(SingularMatrix) when |det| < 1e-14.
Mat3 inverse3(const Mat3& m);

/// Frobenius condition estimate ‖M‖_F·‖M⁻¹‖_F (≥ 3 for any invertible 3×3).
double condition_estimate(const Mat3& m);

}  // namespace attopt
