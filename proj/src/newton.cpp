#include "otreg/newton.hpp"

#include <limits>

namespace otreg {

namespace {

constexpr int kMaxHalvings = 20;

// Residual norm at x, or +inf when x is outside the field's domain.
double try_residual(const VectorField& F, const Vec& x, Vec& out) {
    try {
        out = F(x);
    } catch (const DomainError&) {
        return std::numeric_limits<double>::infinity();
    }
    if (!out.all_finite()) return std::numeric_limits<double>::infinity();
    return out.norm();
}

// One damped step from x. Returns false when no step size lowers the residual.
bool damped_step(const VectorField& F, Vec& x, Vec& fx, double& res, const DiffConfig& cfg) {
    Mat J;
    try {
        J = jacobian(F, x, cfg);
    } catch (const DomainError&) {
        return false;
    } catch (const NonFiniteSample&) {
        return false;
    }
    Vec dx;
    try {
        dx = J.solve(-fx, 0.0);
    } catch (const SingularMatrix&) {
        return false;
    }
    if (!dx.all_finite()) return false;
    double lambda = 1.0;
    for (int k = 0; k <= kMaxHalvings; ++k, lambda *= 0.5) {
        const Vec trial = x + dx * lambda;
        Vec ftrial;
        const double r = try_residual(F, trial, ftrial);
        if (r < res) {
            x = trial;
            fx = ftrial;
            res = r;
            return true;
        }
    }
    return false;
}

}  // namespace

NewtonResult newton_solve(const VectorField& F, const Vec& x_init, const DiffConfig& cfg) {
    Vec x = x_init;
    Vec fx;
    double res = try_residual(F, x, fx);
    if (!std::isfinite(res)) {
        throw NoConvergence(0, res, "newton: initial point outside domain " + to_string(x_init));
    }
    require_dim(fx, x.size(), "newton_solve");
    if (res == 0.0) return {x, 0, 0.0};

    int it = 0;
    while (res > cfg.newton_tol) {
        if (it >= cfg.newton_max_iter) {
            throw NoConvergence(it, res, "newton: iteration limit reached");
        }
        if (!damped_step(F, x, fx, res, cfg)) {
            throw NoConvergence(it, res, "newton: residual stagnated at " + std::to_string(res));
        }
        ++it;
    }
    if (res > 0.0) {
        Vec xp = x, fp = fx;
        double rp = res;
        if (damped_step(F, xp, fp, rp, cfg)) {
            x = xp;
            res = rp;
        }
    }
    return {x, it, res};
}

}  // namespace otreg
