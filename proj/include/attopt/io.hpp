#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "attopt/optimality.hpp"
#include "attopt/problem.hpp"
#include "attopt/solver.hpp"

namespace attopt::io {

/// Builds and validates a problem from its JSON form. `source` names the
/// origin in error messages. Throws Error(ParseError) or Error(ValidationError).
ManeuverProblem parse_problem(const std::string& text, const std::string& source = "<string>");
ManeuverProblem load_problem(const std::filesystem::path& path);

/// Canonical JSON form (matrices as 9 row-major entries). Reloading it
/// reproduces every numeric field bitwise.
nlohmann::json problem_to_json(const ManeuverProblem& problem);
void write_problem(const std::filesystem::path& path, const ManeuverProblem& problem);

/// Header: k,t,R11..R33,wx,wy,wz,ux,uy,uz,lamR_x..z,lamOmega_x..z.
/// Row k carries state k, control u_k (k ≥ 1) and multiplier λ_k (k < N);
/// absent values are left empty.
std::string trajectory_csv_header();
void write_trajectory_csv(std::ostream& out, const DiscreteTrajectory& traj,
                          const std::vector<Multipliers>* multipliers = nullptr);

struct TrajectoryRow {
    int k = 0;
    double t = 0.0;
    Mat3 R = Mat3::Identity();
    Vec3 omega = Vec3::Zero();
    std::optional<Vec3> u;
    std::optional<Vec3> lamR;
    std::optional<Vec3> lamOmega;
};

/// Parses a trajectory CSV written by write_trajectory_csv. Throws Error(ParseError).
std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in);

/// One control per line as "ux,uy,uz"; a non-numeric first line is treated as a header.
std::vector<Vec3> read_controls_csv(std::istream& in);

nlohmann::json report_to_json(const SolverReport& report, const ExtremalTrajectory* extremal);

}  // namespace attopt::io
