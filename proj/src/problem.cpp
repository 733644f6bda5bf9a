#include "attopt/problem.hpp"

#include <cmath>
#include <string>

#include "attopt/error.hpp"

namespace attopt {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) {
        throw Error(ErrorCode::ValidationError, field + ": " + what);
    }
}

}  // namespace

void ManeuverProblem::validate() const {
    require(std::isfinite(u_max) && u_max > 0.0, "u_max", "must be positive");
    require(steps >= 2, "steps", "must be at least 2");
    require(std::isfinite(h_initial) && h_initial > 0.0, "h_initial", "must be positive");
    require(initial.omega.allFinite(), "omega_initial", "must be finite");
    require(target.omega.allFinite(), "omega_final", "must be finite");
    require(solver.tolerance > 0.0, "tolerance", "must be positive");
    require(solver.restart_budget >= 1, "restart_budget", "must be at least 1");
    require(solver.max_iterations >= 1, "max_iterations", "must be at least 1");
    require(solver.h_min > 0.0 && solver.h_min < solver.h_max, "h_min/h_max",
            "need 0 < h_min < h_max");
    require(h_initial >= solver.h_min && h_initial <= solver.h_max, "h_initial",
            "must lie in [h_min, h_max]");
    // Boundary rotations are RotationMatrix values and were checked on construction.
    RotationMatrix::from_matrix(initial.R.matrix());
    RotationMatrix::from_matrix(target.R.matrix());
}

}  // namespace attopt
