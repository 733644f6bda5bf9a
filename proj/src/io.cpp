#include "attopt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "attopt/error.hpp"

namespace attopt::io {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
    throw Error(ErrorCode::ValidationError, field + ": " + what);
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) {
        invalid(field, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        invalid(field, "must be finite");
    }
    return v;
}

template <int N>
Eigen::Matrix<double, N, 1> number_array(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != N) {
        invalid(field, "expected an array of " + std::to_string(N) + " numbers");
    }
    Eigen::Matrix<double, N, 1> v;
    for (int i = 0; i < N; ++i) {
        v[i] = number(j[i], field + "[" + std::to_string(i) + "]");
    }
    return v;
}

Mat3 row_major(const Eigen::Matrix<double, 9, 1>& v) {
    Mat3 m;
    m << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
    return m;
}

json row_major_json(const Mat3& m) {
    json arr = json::array();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) arr.push_back(m(r, c));
    return arr;
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

RotationMatrix parse_attitude(const json& j, const std::string& field) {
    if (j.is_object()) {
        if (!j.contains("axis") || !j.contains("angle_deg")) {
            invalid(field, "axis-angle form needs 'axis' and 'angle_deg'");
        }
        const Vec3 axis = number_array<3>(j.at("axis"), field + ".axis");
        const double angle = number(j.at("angle_deg"), field + ".angle_deg");
        if (axis.norm() == 0.0) {
            if (angle != 0.0) {
                invalid(field, "axis must be nonzero");
            }
            return RotationMatrix::identity();
        }
        return exp_so3(axis.normalized() * (angle * std::numbers::pi / 180.0));
    }
    const Mat3 m = row_major(number_array<9>(j, field));
    try {
        return RotationMatrix::from_matrix(m);
    } catch (const Error& e) {
        invalid(field, e.what());
    }
}

InertiaModel parse_inertia(const json& j) {
    Mat3 m;
    if (j.contains("inertia_diag")) {
        const Vec3 d = number_array<3>(j.at("inertia_diag"), "inertia_diag");
        m = d.asDiagonal();
    } else if (j.contains("inertia_matrix")) {
        m = row_major(number_array<9>(j.at("inertia_matrix"), "inertia_matrix"));
    } else {
        invalid("inertia_diag", "required (or inertia_matrix)");
    }
    try {
        return InertiaModel(m);
    } catch (const Error& e) {
        invalid("inertia", e.what());
    }
}

int integer(const json& j, const std::string& field) {
    if (!j.is_number_integer()) {
        invalid(field, "expected an integer");
    }
    return j.get<int>();
}

std::string line_info(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n');
    const auto last_nl = text.rfind('\n', byte == 0 ? 0 : byte - 1);
    const auto column = last_nl == std::string::npos ? byte : byte - last_nl - 1;
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void put_vec(std::ostream& out, const Vec3* v) {
    for (int i = 0; i < 3; ++i) {
        out << ',';
        if (v) out << fmt((*v)[i]);
    }
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double cell_number(const std::string& s, std::size_t line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ": '" + s + "' is not a number");
    }
}

std::optional<Vec3> optional_vec(const std::vector<std::string>& cells, std::size_t at,
                                 std::size_t line) {
    if (cells[at].empty() && cells[at + 1].empty() && cells[at + 2].empty()) {
        return std::nullopt;
    }
    return Vec3(cell_number(cells[at], line), cell_number(cells[at + 1], line),
                cell_number(cells[at + 2], line));
}

}  // namespace

ManeuverProblem parse_problem(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError,
                    source + ": " + line_info(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    if (!j.is_object()) {
        throw Error(ErrorCode::ParseError, source + ": top level must be a JSON object");
    }

    ManeuverProblem p;
    p.inertia = parse_inertia(j);
    if (j.contains("attitude_initial")) {
        p.initial.R = parse_attitude(j.at("attitude_initial"), "attitude_initial");
    }
    if (!j.contains("attitude_final")) {
        invalid("attitude_final", "required");
    }
    p.target.R = parse_attitude(j.at("attitude_final"), "attitude_final");
    if (j.contains("omega_initial")) {
        p.initial.omega = number_array<3>(j.at("omega_initial"), "omega_initial");
    }
    if (j.contains("omega_final")) {
        p.target.omega = number_array<3>(j.at("omega_final"), "omega_final");
    }
    if (!j.contains("u_max")) {
        invalid("u_max", "required");
    }
    p.u_max = number(j.at("u_max"), "u_max");
    if (j.contains("steps")) p.steps = integer(j.at("steps"), "steps");
    if (j.contains("h_initial")) p.h_initial = number(j.at("h_initial"), "h_initial");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) invalid("seed", "expected a non-negative integer");
        p.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("tolerance")) p.solver.tolerance = number(j.at("tolerance"), "tolerance");
    if (j.contains("restart_budget")) {
        p.solver.restart_budget = integer(j.at("restart_budget"), "restart_budget");
    }
    if (j.contains("max_iterations")) {
        p.solver.max_iterations = integer(j.at("max_iterations"), "max_iterations");
    }
    p.validate();
    return p;
}

ManeuverProblem load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str(), path.string());
}

json problem_to_json(const ManeuverProblem& p) {
    json j;
    j["inertia_matrix"] = row_major_json(p.inertia.J());
    j["attitude_initial"] = row_major_json(p.initial.R.matrix());
    j["attitude_final"] = row_major_json(p.target.R.matrix());
    j["omega_initial"] = vec_json(p.initial.omega);
    j["omega_final"] = vec_json(p.target.omega);
    j["u_max"] = p.u_max;
    j["steps"] = p.steps;
    j["h_initial"] = p.h_initial;
    j["seed"] = p.seed;
    j["tolerance"] = p.solver.tolerance;
    j["restart_budget"] = p.solver.restart_budget;
    j["max_iterations"] = p.solver.max_iterations;
    return j;
}

void write_problem(const std::filesystem::path& path, const ManeuverProblem& problem) {
    std::ofstream out(path);
    out << problem_to_json(problem).dump(2) << '\n';
}

std::string trajectory_csv_header() {
    return "k,t,R11,R12,R13,R21,R22,R23,R31,R32,R33,wx,wy,wz,ux,uy,uz,"
           "lamR_x,lamR_y,lamR_z,lamOmega_x,lamOmega_y,lamOmega_z";
}

void write_trajectory_csv(std::ostream& out, const DiscreteTrajectory& traj,
                          const std::vector<Multipliers>* multipliers) {
    out << trajectory_csv_header() << '\n';
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const BodyState& s = traj.states[k];
        out << k << ',' << fmt(static_cast<double>(k) * traj.h);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) out << ',' << fmt(s.R(r, c));
        put_vec(out, &s.omega);
        put_vec(out, k >= 1 && k - 1 < traj.controls.size() ? &traj.controls[k - 1] : nullptr);
        const bool has_lam = multipliers && k < multipliers->size();
        put_vec(out, has_lam ? &(*multipliers)[k].lamR : nullptr);
        put_vec(out, has_lam ? &(*multipliers)[k].lamOmega : nullptr);
        out << '\n';
    }
}

std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != trajectory_csv_header()) {
        throw Error(ErrorCode::ParseError, "line 1: unexpected trajectory header");
    }
    std::vector<TrajectoryRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != 23) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 23 columns, got " +
                                                   std::to_string(cells.size()));
        }
        TrajectoryRow row;
        row.k = static_cast<int>(cell_number(cells[0], line_no));
        row.t = cell_number(cells[1], line_no);
        for (int i = 0; i < 9; ++i) row.R(i / 3, i % 3) = cell_number(cells[2 + i], line_no);
        row.omega = Vec3(cell_number(cells[11], line_no), cell_number(cells[12], line_no),
                         cell_number(cells[13], line_no));
        row.u = optional_vec(cells, 14, line_no);
        row.lamR = optional_vec(cells, 17, line_no);
        row.lamOmega = optional_vec(cells, 20, line_no);
        rows.push_back(row);
    }
    return rows;
}

std::vector<Vec3> read_controls_csv(std::istream& in) {
    std::vector<Vec3> controls;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line);
        if (line_no == 1 && !cells.empty() && !cells[0].empty() &&
            std::isalpha(static_cast<unsigned char>(cells[0][0]))) {
            continue;
        }
        if (cells.size() != 3) {
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(line_no) + ": expected 3 columns (ux,uy,uz)");
        }
        controls.emplace_back(cell_number(cells[0], line_no), cell_number(cells[1], line_no),
                              cell_number(cells[2], line_no));
    }
    return controls;
}

json report_to_json(const SolverReport& report, const ExtremalTrajectory* extremal) {
    json j;
    j["converged"] = report.converged;
    j["iterations"] = report.iterations;
    j["final_residual_norm"] = report.final_residual_norm;
    j["maneuver_time"] = report.maneuver_time;
    j["min_lamOmega_norm"] = report.min_lamOmega_norm;
    j["restarts_used"] = report.restarts_used;
    j["residual"] = {
        {"attitude", vec_json(report.final_residual.attitude)},
        {"omega", vec_json(report.final_residual.omega)},
        {"transversality", report.final_residual.transversality},
        {"feasible", report.final_residual.feasible},
    };
    j["variables"] = {
        {"lamR0", vec_json(report.variables.lam0.lamR)},
        {"lamOmega0", vec_json(report.variables.lam0.lamOmega)},
        {"h", report.variables.h},
    };
    if (extremal && !extremal->trajectory.controls.empty()) {
        j["steps"] = extremal->trajectory.steps();
        j["max_condition_estimate"] = extremal->max_condition_estimate;
    }
    return j;
}

}  // namespace attopt::io
