#pragma once

// Finite-difference derivative engine.
//
// Central stencils with step h_i = step * max(1, |x_i|). With Richardson on,
// results combine steps h and h/2 as (4 D(h/2) - D(h)) / 3.

#include "otreg/cost.hpp"
#include "otreg/linalg.hpp"

namespace otreg {

struct DiffConfig {
    double step = 1e-4;
    bool richardson = true;
    double newton_tol = 1e-12;
    int newton_max_iter = 50;

    // Throws ConfigError when step <= 0, newton_tol <= 0 or newton_max_iter < 1.
    void validate() const;
};

Vec grad(const ScalarField& f, const Vec& x, const DiffConfig& cfg = {});
Mat hessian(const ScalarField& f, const Vec& x, const DiffConfig& cfg = {});
// J(i, j) = dF_i / dx_j.
Mat jacobian(const VectorField& F, const Vec& x, const DiffConfig& cfg = {});

// Cost derivatives: analytic closure when present, finite differences otherwise.
// hess_mixed(i, j) = d2c / dx_i dy_j. Without an analytic mixed Hessian it
// differentiates an analytic grad_x when one exists, else takes mixed
// second differences of c.
Vec cost_grad_x(const CostFunction& c, const Vec& x, const Vec& y, const DiffConfig& cfg = {});
Vec cost_grad_y(const CostFunction& c, const Vec& x, const Vec& y, const DiffConfig& cfg = {});
Mat hess_mixed(const CostFunction& c, const Vec& x, const Vec& y, const DiffConfig& cfg = {});
Mat hess_xx(const CostFunction& c, const Vec& x, const Vec& y, const DiffConfig& cfg = {});

}  // namespace otreg
