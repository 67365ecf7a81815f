#pragma once

#include <string>
#include <vector>

#include "ivs/map_dsl.hpp"

namespace ivs {

enum class LiftStatus {
    Completed,        // reached t_max with drift within tolerance
    LeftBox,          // the lift exited the box at t_end
    StepCollapse,     // step size fell below 1e-12 x t_max
    SingularJacobian  // |det Df| < 1e-12 at an evaluation point
};

std::string to_string(LiftStatus status);

struct LiftSample {
    double t = 0.0;
    Vec point;
};

struct LiftResult {
    std::vector<LiftSample> path;  // t strictly increasing
    LiftStatus status = LiftStatus::Completed;
    double t_end = 0.0;            // t_max, t_exit or t_star depending on status
    double drift = 0.0;            // max over samples of |f(gamma(t)) - (p0 + t w)|
};

struct LiftOptions {
    double tol = 1e-9;
    double initial_step = 0.0;  // <= 0 selects t_max / 1024
};

// Integrates the maximal lift gamma of the line t -> f(x0) + t w, i.e.
// gamma' = Df(gamma)^-1 w by adaptive RK4, with up to 3 Newton corrections
// per step pinning f(gamma(t)) to the line within tol. Requires w != 0 and
// |det Df(x0)| > 1e-12.
LiftResult lift_line(const MapSpec& m, const Vec& x0, const Vec& w, double t_max, const Box& box,
                     const LiftOptions& options = {});

std::string lift_path_csv(const LiftResult& result);

}  // namespace ivs
