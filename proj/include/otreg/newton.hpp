#pragma once

#include "otreg/cost.hpp"
#include "otreg/diff.hpp"

namespace otreg {

struct NewtonResult {
    Vec x;
    int iterations = 0;
    double residual = 0.0;
};

// Damped Newton for F(x) = 0 with a finite-difference Jacobian.
//
// A full step is halved (up to 20 times) until the residual norm decreases;
// evaluations that raise DomainError count as "no decrease". Converges when
// |F(x)| <= cfg.newton_tol, then takes one polishing step if it lowers the
// residual further. Returns x_init untouched if F(x_init) == 0 exactly.
// Throws NoConvergence on stagnation, singular Jacobian or iteration limit.
NewtonResult newton_solve(const VectorField& F, const Vec& x_init, const DiffConfig& cfg = {});

}  // namespace otreg
