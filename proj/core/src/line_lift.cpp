#include "ivs/line_lift.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ivs {

namespace {

constexpr double kSingularDet = 1e-12;
constexpr int kNewtonIterations = 3;

struct StepOutcome {
    enum class Kind { Accepted, TooInaccurate, Singular } kind;
    Vec point;
    double residual = 0.0;
};

// One RK4 step of gamma' = Df(gamma)^-1 w from (t, x) to t + h, followed by
// Newton corrections pinning f(x) to the line point p0 + (t+h) w.
StepOutcome take_step(const MapSpec& m, const Vec& p0, const Vec& w, const Vec& x, double t,
                      double h, double tol) {
    auto velocity = [&](const Vec& at) -> std::optional<Vec> {
        const Mat j = jacobian(m, at);
        if (std::abs(j.det()) < kSingularDet) return std::nullopt;
        return j.solve(w);
    };
    const auto k1 = velocity(x);
    if (!k1) return {StepOutcome::Kind::Singular, x};
    const auto k2 = velocity(x + *k1 * (h / 2));
    if (!k2) return {StepOutcome::Kind::Singular, x};
    const auto k3 = velocity(x + *k2 * (h / 2));
    if (!k3) return {StepOutcome::Kind::Singular, x};
    const auto k4 = velocity(x + *k3 * h);
    if (!k4) return {StepOutcome::Kind::Singular, x};
    Vec next = x + (*k1 + *k2 * 2.0 + *k3 * 2.0 + *k4) * (h / 6.0);

    const Vec target = p0 + w * (t + h);
    double residual = (eval(m, next) - target).norm();
    for (int it = 0; it < kNewtonIterations && residual > tol; ++it) {
        const Mat j = jacobian(m, next);
        if (std::abs(j.det()) < kSingularDet) return {StepOutcome::Kind::Singular, next};
        const auto delta = j.solve(target - eval(m, next));
        if (!delta) return {StepOutcome::Kind::Singular, next};
        next = next + *delta;
        residual = (eval(m, next) - target).norm();
    }
    if (residual > tol) return {StepOutcome::Kind::TooInaccurate, next, residual};
    return {StepOutcome::Kind::Accepted, next, residual};
}

}  // namespace

std::string to_string(LiftStatus status) {
    switch (status) {
        case LiftStatus::Completed: return "Completed";
        case LiftStatus::LeftBox: return "LeftBox";
        case LiftStatus::StepCollapse: return "StepCollapse";
        case LiftStatus::SingularJacobian: return "SingularJacobian";
    }
    return "?";
}

LiftResult lift_line(const MapSpec& m, const Vec& x0, const Vec& w, double t_max, const Box& box,
                     const LiftOptions& options) {
    if (w.dim() != m.n || x0.dim() != m.n) throw std::invalid_argument("dimension mismatch");
    if (w.norm() == 0.0) throw std::invalid_argument("direction must be nonzero");
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    if (!box.nondegenerate() || box.dim() != m.n) throw std::invalid_argument("degenerate box");
    if (std::abs(jacobian_det(m, x0)) <= kSingularDet)
        throw std::invalid_argument("Jacobian singular at the start point");

    const double tol = options.tol > 0.0 ? options.tol : 1e-9;
    const double h_init = options.initial_step > 0.0 ? options.initial_step : t_max / 1024.0;
    const double h_min = 1e-12 * t_max;
    const double h_cap = t_max / 32.0;
    const Vec p0 = eval(m, x0);

    LiftResult result;
    result.path.push_back({0.0, x0});
    double t = 0.0;
    Vec x = x0;
    double h = h_init;

    while (t < t_max * (1.0 - 1e-15)) {
        h = std::min(h, t_max - t);
        const StepOutcome step = take_step(m, p0, w, x, t, h, tol);
        if (step.kind == StepOutcome::Kind::Singular) {
            result.status = LiftStatus::SingularJacobian;
            result.t_end = t;
            return result;
        }
        if (step.kind == StepOutcome::Kind::TooInaccurate) {
            h *= 0.5;
            if (h < h_min) {
                result.status = LiftStatus::StepCollapse;
                result.t_end = t;
                return result;
            }
            continue;
        }
        if (!box.contains(step.point)) {
            // Bisect the step fraction to land on the box boundary.
            double lo = 0.0, hi = 1.0;
            Vec inside_point = x;
            double inside_residual = 0.0;
            for (int it = 0; it < 80 && h * (hi - lo) > 1e-9 * t_max; ++it) {
                const double mid = 0.5 * (lo + hi);
                const StepOutcome probe = take_step(m, p0, w, x, t, h * mid, tol);
                if (probe.kind == StepOutcome::Kind::Singular) {
                    result.status = LiftStatus::SingularJacobian;
                    result.t_end = t + h * lo;
                    return result;
                }
                if (probe.kind == StepOutcome::Kind::Accepted && box.contains(probe.point)) {
                    lo = mid;
                    inside_point = probe.point;
                    inside_residual = probe.residual;
                } else {
                    hi = mid;
                }
            }
            result.status = LiftStatus::LeftBox;
            result.t_end = t + h * lo;
            if (lo > 0.0) {
                result.path.push_back({result.t_end, inside_point});
                result.drift = std::max(result.drift, inside_residual);
            }
            return result;
        }
        t += h;
        x = step.point;
        result.path.push_back({t, x});
        result.drift = std::max(result.drift, step.residual);
        h = std::min(h * 1.25, h_cap);
    }
    result.status = LiftStatus::Completed;
    result.t_end = t_max;
    return result;
}

std::string lift_path_csv(const LiftResult& result) {
    std::ostringstream os;
    const int n = result.path.empty() ? 0 : result.path.front().point.dim();
    os << "t";
    for (int i = 1; i <= n; ++i) os << ",x" << i;
    os << "\n";
    char buf[32];
    for (const LiftSample& s : result.path) {
        std::snprintf(buf, sizeof buf, "%.17g", s.t);
        os << buf;
        for (int i = 0; i < n; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", s.point[i]);
            os << "," << buf;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace ivs
