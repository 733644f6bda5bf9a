#include <algorithm>
#include <sstream>
#include <string>

#include "doctest.h"
#include "support.hpp"

#include "attopt/modes.hpp"

using namespace attopt;

TEST_CASE("simulate with zero controls conserves everything") {
    auto p = testing::paper_problem(120, 500);
    p.initial.omega = Vec3(1, 0.5, -0.3);
    const auto r = run_simulate(p, {});
    CHECK(r.trajectory.steps() == 500);
    CHECK(r.metrics.momentum_drift < 1e-13);
    CHECK(r.metrics.orthogonality_error < 1e-13);
    CHECK(r.metrics.energy_deviation < 1e-12);
    const auto j = simulation_summary(r);
    CHECK(j["steps"] == 500);
    CHECK(j["final_time"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("simulate checks the control count") {
    const auto p = testing::paper_problem(120, 10);
    const std::vector<Vec3> u(9, Vec3::Zero());
    CHECK(testing::error_code_of([&] { (void)run_simulate(p, u); }) == ErrorCode::ValidationError);
}

TEST_CASE("compare emits one row per step plus the start") {
    auto p = testing::paper_problem(120, 10);
    p.initial.omega = Vec3(1, 0.5, -0.3);
    p.h_initial = 0.05;
    const auto rows = run_compare(p, 200);
    REQUIRE(rows.size() == 201);
    CHECK(rows.front().rk4_orthogonality < 1e-15);
    CHECK(rows.back().rk4_orthogonality > rows.back().lgvi_orthogonality);
    CHECK(run_compare(p, 0).empty());
    std::ostringstream out;
    write_compare_csv(out, rows);
    const std::string text = out.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 202);
}

TEST_CASE("three-point order") {
    CHECK(three_point_order(4.0, 2.0) == 1.0);
    CHECK(three_point_order(16.0, 1.0) == 4.0);
}

TEST_CASE("discrete multipliers approach the continuous ones") {
    const auto a = multiplier_study_point(4e-3);
    const auto b = multiplier_study_point(2e-3);
    auto err = [](const MultiplierStudyPoint& s) {
        return std::hypot((s.discrete.lamR - s.continuous.lamR).norm(),
                          (s.discrete.lamOmega - s.continuous.lamOmega).norm());
    };
    CHECK(err(b) < err(a));
    CHECK(err(a) / err(b) > 1.9);
}
