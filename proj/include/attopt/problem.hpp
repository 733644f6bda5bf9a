#pragma once

#include <cstdint>

#include "attopt/dynamics.hpp"

namespace attopt {

struct SolverSettings {
    double tolerance = 1e-10;      // on the 7-vector residual norm
    int restart_budget = 20;       // random draws, including the first
    int max_iterations = 200;      // LM iterations per draw
    double h_min = 1e-5;
    double h_max = 0.1;
    double initial_damping = 1e-3;
    double max_damping = 1e12;     // a draw is abandoned once damping exceeds this
};

/// Time-optimal transfer from `initial` to `target` with ‖u‖ ≤ u_max in a fixed
/// number of steps; the maneuver time varies through the step size.
struct ManeuverProblem {
    InertiaModel inertia;
    BodyState initial;
    BodyState target;
    double u_max = 0.0;
    int steps = 1000;
    double h_initial = 0.002;
    std::uint64_t seed = 0;
    SolverSettings solver;

    /// Throws Error(ValidationError) naming the offending field.
    void validate() const;
};

}  // namespace attopt
