#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "otreg/linalg.hpp"

namespace otreg {

using ScalarField = std::function<double(const Vec&)>;
using VectorField = std::function<Vec(const Vec&)>;

using CostEval = std::function<double(const Vec& x, const Vec& y)>;
using CostGrad = std::function<Vec(const Vec& x, const Vec& y)>;
using CostHess = std::function<Mat(const Vec& x, const Vec& y)>;
using CostDomain = std::function<bool(const Vec& x, const Vec& y)>;

// A transport cost c(x, y) on R^n x R^n with optional analytic derivatives.
//
// All public evaluation goes through the checked accessors: a point outside
// valid() raises DomainError, and a non-finite result raises NonFiniteSample.
// Instances are immutable and cheap to copy (shared implementation).
class CostFunction {
public:
    struct Closures {
        CostEval eval;
        CostDomain valid;               // empty: valid everywhere
        CostGrad grad_x;                // dc/dx
        CostGrad grad_y;                // dc/dy
        CostHess hess_xy;               // (i, j) -> d2c / dx_i dy_j
        CostHess hess_xx;               // (i, j) -> d2c / dx_i dx_j
    };

    CostFunction(std::string name, Closures closures);

    const std::string& name() const noexcept { return impl_->name; }

    bool valid(const Vec& x, const Vec& y) const;
    double operator()(const Vec& x, const Vec& y) const;

    bool has_grad_x() const noexcept { return static_cast<bool>(impl_->c.grad_x); }
    bool has_grad_y() const noexcept { return static_cast<bool>(impl_->c.grad_y); }
    bool has_hess_xy() const noexcept { return static_cast<bool>(impl_->c.hess_xy); }
    bool has_hess_xx() const noexcept { return static_cast<bool>(impl_->c.hess_xx); }

    // Analytic closures, checked. Calling one that is absent throws Error;
    // use the derivative engine (diff.hpp) for the analytic-or-FD dispatch.
    Vec analytic_grad_x(const Vec& x, const Vec& y) const;
    Vec analytic_grad_y(const Vec& x, const Vec& y) const;
    Mat analytic_hess_xy(const Vec& x, const Vec& y) const;
    Mat analytic_hess_xx(const Vec& x, const Vec& y) const;

    // Same cost with all analytic closures dropped; forces the finite-
    // difference path everywhere. Used to cross-check the closures.
    CostFunction without_derivatives() const;

    // Throws DomainError unless valid(x, y).
    void require_valid(const Vec& x, const Vec& y) const;

private:
    struct Impl {
        std::string name;
        Closures c;
    };
    std::shared_ptr<const Impl> impl_;
};

using ParamMap = std::map<std::string, std::string>;

// Radius around the diagonal excluded for the singular log/power costs.
inline constexpr double kSingularExclusion = 1e-6;

// Built-in costs: quadratic, bilinear, log, power(p), sqrt_plus,
// riemannian(manifold). Throws UnknownCost / BadParam.
CostFunction builtin(const std::string& name, const ParamMap& params = {});

}  // namespace otreg
