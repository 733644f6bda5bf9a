#include "attopt/so3.hpp"

#include <cmath>
#include <numbers>

#include "attopt/error.hpp"

namespace attopt {

namespace {

constexpr double kSkewTolerance = 1e-10;
constexpr double kSmallAngle = 1e-4;
constexpr double kSmallAngleDerivative = 1e-2;
constexpr double kNearPiMargin = 1e-6;
constexpr double kDeterminantFloor = 1e-14;

Mat3 adjugate(const Mat3& m) {
    Mat3 adj;
    adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return adj;
}

}  // namespace

RotationMatrix RotationMatrix::from_matrix(const Mat3& m) {
    if (!m.allFinite()) {
        throw Error(ErrorCode::ValidationError, "rotation matrix has non-finite entries");
    }
    const double ortho = orthogonality_error(m);
    if (ortho > kOrthonormalityTolerance) {
        throw Error(ErrorCode::ValidationError,
                    "rotation matrix violates orthonormality: |R^T R - I|_F = " +
                        std::to_string(ortho));
    }
    const double det = m.determinant();
    if (std::abs(det - 1.0) > kOrthonormalityTolerance) {
        throw Error(ErrorCode::ValidationError,
                    "rotation matrix is not proper: det = " + std::to_string(det));
    }
    return RotationMatrix(m, Trusted{});
}

double orthogonality_error(const Mat3& m) {
    return (m.transpose() * m - Mat3::Identity()).norm();
}

Mat3 hat(const Vec3& v) {
    Mat3 m;
    m << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
    return m;
}

Vec3 vee(const Mat3& m) {
    const Mat3 sym = 0.5 * (m + m.transpose());
    if (!(sym.norm() <= kSkewTolerance)) {
        throw Error(ErrorCode::NotSkew,
                    "matrix is not skew-symmetric: |sym part|_F = " + std::to_string(sym.norm()));
    }
    const Mat3 skew = 0.5 * (m - m.transpose());
    return Vec3(skew(2, 1), skew(0, 2), skew(1, 0));
}

RodriguesCoefficients rodrigues_coefficients(double theta) {
    RodriguesCoefficients c{};
    const double t2 = theta * theta;
    if (theta < kSmallAngle) {
        c.a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
        c.b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
    } else {
        c.a = std::sin(theta) / theta;
        const double s = std::sin(0.5 * theta) / (0.5 * theta);  // no cancellation at small theta
        c.b = 0.5 * s * s;
    }
    if (theta < kSmallAngleDerivative) {
        const double t4 = t2 * t2;
        c.da_over_theta = -1.0 / 3.0 + t2 / 30.0 - t4 / 840.0 + t4 * t2 / 45360.0;
        c.db_over_theta = -1.0 / 12.0 + t2 / 180.0 - t4 / 6720.0 + t4 * t2 / 453600.0;
    } else {
        const double s = std::sin(theta);
        const double co = std::cos(theta);
        c.da_over_theta = (theta * co - s) / (t2 * theta);
        c.db_over_theta = (theta * s - 2.0 * (1.0 - co)) / (t2 * t2);
    }
    return c;
}

RotationMatrix exp_so3(const Vec3& v) {
    const auto c = rodrigues_coefficients(v.norm());
    const Mat3 vh = hat(v);
    return RotationMatrix(Mat3::Identity() + c.a * vh + c.b * vh * vh, RotationMatrix::Trusted{});
}

double rotation_angle(const RotationMatrix& r) {
    const Mat3& m = r.matrix();
    const Vec3 s(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1)));
    const double c = 0.5 * (m.trace() - 1.0);
    return std::atan2(s.norm(), c);
}

Vec3 log_so3(const RotationMatrix& r) {
    const Mat3& m = r.matrix();
    const Vec3 s(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1)));
    const double sin_theta = s.norm();
    const double cos_theta = 0.5 * (m.trace() - 1.0);
    const double theta = std::atan2(sin_theta, cos_theta);

    if (theta >= std::numbers::pi - kNearPiMargin) {
        throw Error(ErrorCode::NearPiRotation,
                    "rotation angle " + std::to_string(theta) + " rad is too close to pi");
    }
    if (theta < std::numbers::pi / 2) {
        // s = sin(θ)·n, so v = s·θ/sin(θ)
        const double scale = theta < kSmallAngle ? 1.0 + theta * theta / 6.0 : theta / sin_theta;
        return scale * s;
    }
    // Large angles: the axis is better conditioned from the symmetric part,
    // (R + Rᵀ)/2 − cosθ·I = (1 − cosθ)·n·nᵀ.
    const Mat3 outer = 0.5 * (m + m.transpose()) - cos_theta * Mat3::Identity();
    int col = 0;
    outer.diagonal().maxCoeff(&col);
    Vec3 axis = outer.col(col) / std::sqrt(outer(col, col) * (1.0 - cos_theta));
    if (axis.dot(s) < 0.0) {
        axis = -axis;
    }
    return theta * axis.normalized();
}

Mat3 trace_identity(const Mat3& a, const Vec3& x) {
    const Mat3 xh = hat(x);
    return xh * a + a.transpose() * xh;
}

Mat3 conjugation_identity(const RotationMatrix& f, const Vec3& x) {
    return f.matrix().transpose() * hat(x) * f.matrix();
}

Mat3 inverse3(const Mat3& m) {
    const Mat3 adj = adjugate(m);
    const double det = m(0, 0) * adj(0, 0) + m(0, 1) * adj(1, 0) + m(0, 2) * adj(2, 0);
    if (!(std::abs(det) >= kDeterminantFloor)) {
        throw Error(ErrorCode::SingularMatrix,
                    "3x3 matrix is singular: |det| = " + std::to_string(std::abs(det)));
    }
    return adj / det;
}

double condition_estimate(const Mat3& m) { return m.norm() * inverse3(m).norm(); }

}  // namespace attopt
