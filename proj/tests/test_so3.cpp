#include "doctest.h"
#include "support.hpp"

using namespace attopt;
using testing::error_code_of;

TEST_CASE("hat of a known vector") {
    const Mat3 m = hat(Vec3(1.0, 2.0, 3.0));
    Mat3 expected;
    expected << 0, -3, 2,
                3, 0, -1,
                -2, 1, 0;
    CHECK((m - expected).norm() == 0.0);
}

TEST_CASE("hat times vector is the cross product") {
    // (1,2,3) x (4,5,6) worked by hand
    const Vec3 c = hat(Vec3(1, 2, 3)) * Vec3(4, 5, 6);
    CHECK(c.x() == -3.0);
    CHECK(c.y() == 6.0);
    CHECK(c.z() == -3.0);
}

TEST_CASE("vee rejects a matrix with a symmetric part") {
    Mat3 m = hat(Vec3(1, 2, 3));
    m(0, 1) += 1e-6;
    CHECK(error_code_of([&] { (void)vee(m); }) == ErrorCode::NotSkew);
}

TEST_CASE("vee inverts hat exactly") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 v = testing::uniform_vec(rng, -10, 10);
        CHECK(vee(hat(v)) == v);
    }
}

TEST_CASE("quarter turn about z") {
    const RotationMatrix r = exp_so3(Vec3(0, 0, std::numbers::pi / 2));
    Mat3 expected;
    expected << 0, -1, 0,
                1, 0, 0,
                0, 0, 1;
    CHECK((r.matrix() - expected).norm() < 1e-15);
}

TEST_CASE("exp of zero is the identity") {
    CHECK(exp_so3(Vec3::Zero()).matrix() == Mat3::Identity());
}

TEST_CASE("small-angle exp agrees with the truncated series") {
    const Vec3 v = Vec3(1, -2, 0.5).normalized() * 3e-5;
    const Mat3 w = hat(v);
    const Mat3 series = Mat3::Identity() + w + w * w / 2.0 + w * w * w / 6.0;
    CHECK((exp_so3(v).matrix() - series).norm() < 1e-18);
}

TEST_CASE("Rodrigues coefficients on both sides of the series switch") {
    for (double t : {0.5e-4, 0.99999e-4, 1.00001e-4, 2e-4, 0.5e-2, 2e-2}) {
        const long double lt = t;
        const double a = static_cast<double>(std::sin(lt) / lt);
        const long double half = std::sin(lt / 2) / (lt / 2);
        const double b = static_cast<double>(half * half / 2);
        const auto c = rodrigues_coefficients(t);
        CHECK(c.a == doctest::Approx(a).epsilon(1e-15));
        CHECK(c.b == doctest::Approx(b).epsilon(1e-15));
    }
    const auto d_below = rodrigues_coefficients(0.99999e-2);
    const auto d_above = rodrigues_coefficients(1.00001e-2);
    CHECK(d_below.da_over_theta == doctest::Approx(d_above.da_over_theta).epsilon(1e-8));
    CHECK(d_below.db_over_theta == doctest::Approx(d_above.db_over_theta).epsilon(1e-8));
}

TEST_CASE("Rodrigues derivative coefficients match finite differences") {
    for (double t : {0.3, 1.0, 2.5}) {
        const double d = 1e-6;
        const auto c = rodrigues_coefficients(t);
        const double da = (rodrigues_coefficients(t + d).a - rodrigues_coefficients(t - d).a) / (2 * d);
        const double db = (rodrigues_coefficients(t + d).b - rodrigues_coefficients(t - d).b) / (2 * d);
        CHECK(c.da_over_theta * t == doctest::Approx(da).epsilon(1e-7));
        CHECK(c.db_over_theta * t == doctest::Approx(db).epsilon(1e-7));
    }
}

TEST_CASE("exp produces proper rotations") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 v = testing::uniform_vec(rng, -4, 4);
        const Mat3 r = exp_so3(v).matrix();
        CHECK(orthogonality_error(r) < 1e-14);
        CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK((exp_so3(-v).matrix() - r.transpose()).norm() < 1e-14);
    }
}

TEST_CASE("log inverts exp away from a half turn") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 v = testing::unit_vec(rng) * std::uniform_real_distribution<>(0, 3.1)(rng);
        CHECK((log_so3(exp_so3(v)) - v).norm() < 1e-11);
    }
}

TEST_CASE("log near the identity and near a half turn") {
    const Vec3 tiny(1e-9, -2e-9, 3e-9);
    CHECK((log_so3(exp_so3(tiny)) - tiny).norm() < 1e-22);
    const Vec3 wide = Vec3(1, 2, 2).normalized() * (std::numbers::pi - 1e-5);
    CHECK((log_so3(exp_so3(wide)) - wide).norm() < 1e-9);
    const Vec3 half = Vec3(0, 1, 0) * (std::numbers::pi - 1e-8);
    CHECK(error_code_of([&] { (void)log_so3(exp_so3(half)); }) == ErrorCode::NearPiRotation);
}

TEST_CASE("rotation angle of a known rotation") {
    const RotationMatrix r = RotationMatrix::from_matrix(testing::diagonal_axis_rotation(120));
    CHECK(rotation_angle(r) == doctest::Approx(2 * std::numbers::pi / 3).epsilon(1e-14));
}

TEST_CASE("from_matrix rejects non-rotations") {
    Mat3 m = Mat3::Identity();
    m(0, 0) = 1.0 + 1e-9;
    CHECK(error_code_of([&] { (void)RotationMatrix::from_matrix(m); }) == ErrorCode::ValidationError);
    Mat3 reflection = Mat3::Identity();
    reflection(2, 2) = -1.0;
    CHECK(error_code_of([&] { (void)RotationMatrix::from_matrix(reflection); }) ==
          ErrorCode::ValidationError);
}

TEST_CASE("trace identity against the direct left side") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const Mat3 a = testing::uniform_mat(rng, -3, 3);
        const Vec3 x = testing::uniform_vec(rng, -3, 3);
        const Mat3 lhs = hat(x) * a + a.transpose() * hat(x);
        CHECK((lhs - trace_identity(a, x)).norm() < 1e-13);
    }
}

TEST_CASE("conjugation identity against the direct left side") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        const RotationMatrix f = testing::random_rotation(rng, std::numbers::pi);
        const Vec3 x = testing::uniform_vec(rng, -3, 3);
        const Mat3 lhs = f.matrix().transpose() * hat(x) * f.matrix();
        CHECK((lhs - conjugation_identity(f, x)).norm() < 1e-13);
    }
}

TEST_CASE("inverse3 matches a general inverse and rejects singular input") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        const Mat3 m = testing::uniform_mat(rng, -1, 1) + 3.0 * Mat3::Identity();
        CHECK((inverse3(m) * m - Mat3::Identity()).norm() < 1e-13);
    }
    Mat3 s;
    s << 1, 2, 3, 2, 4, 6, 0, 1, 1;
    CHECK(error_code_of([&] { (void)inverse3(s); }) == ErrorCode::SingularMatrix);
}
