#include "otreg/cost.hpp"

#include <cstdlib>
#include <sstream>

#include "otreg/manifold.hpp"

namespace otreg {

CostFunction::CostFunction(std::string name, Closures closures)
    : impl_(std::make_shared<const Impl>(Impl{std::move(name), std::move(closures)})) {
    if (!impl_->c.eval) throw Error("CostFunction '" + impl_->name + "' has no eval closure");
}

bool CostFunction::valid(const Vec& x, const Vec& y) const {
    if (x.size() != y.size() || !x.all_finite() || !y.all_finite()) return false;
    return !impl_->c.valid || impl_->c.valid(x, y);
}

void CostFunction::require_valid(const Vec& x, const Vec& y) const {
    if (!valid(x, y)) {
        throw DomainError(name() + ": (" + to_string(x) + ", " + to_string(y) + ") outside valid region");
    }
}

double CostFunction::operator()(const Vec& x, const Vec& y) const {
    require_valid(x, y);
    const double v = impl_->c.eval(x, y);
    if (!std::isfinite(v)) {
        throw NonFiniteSample(name() + ": non-finite value at (" + to_string(x) + ", " + to_string(y) + ")");
    }
    return v;
}

namespace {

template <typename T>
T checked(const std::string& name, const char* what, const T& v) {
    if (!v.all_finite()) throw NonFiniteSample(name + ": non-finite " + what);
    return v;
}

}  // namespace

Vec CostFunction::analytic_grad_x(const Vec& x, const Vec& y) const {
    if (!has_grad_x()) throw Error(name() + ": no analytic grad_x");
    require_valid(x, y);
    return checked(name(), "grad_x", impl_->c.grad_x(x, y));
}

Vec CostFunction::analytic_grad_y(const Vec& x, const Vec& y) const {
    if (!has_grad_y()) throw Error(name() + ": no analytic grad_y");
    require_valid(x, y);
    return checked(name(), "grad_y", impl_->c.grad_y(x, y));
}

Mat CostFunction::analytic_hess_xy(const Vec& x, const Vec& y) const {
    if (!has_hess_xy()) throw Error(name() + ": no analytic hess_xy");
    require_valid(x, y);
    return checked(name(), "hess_xy", impl_->c.hess_xy(x, y));
}

Mat CostFunction::analytic_hess_xx(const Vec& x, const Vec& y) const {
    if (!has_hess_xx()) throw Error(name() + ": no analytic hess_xx");
    require_valid(x, y);
    return checked(name(), "hess_xx", impl_->c.hess_xx(x, y));
}

CostFunction CostFunction::without_derivatives() const {
    return CostFunction(name() + "[fd]", Closures{impl_->c.eval, impl_->c.valid, {}, {}, {}, {}});
}

namespace {

double number_param(const ParamMap& params, const std::string& cost, const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) throw BadParam(cost + ": missing parameter '" + key + "'");
    const char* begin = it->second.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        throw BadParam(cost + ": parameter '" + key + "' is not a number: '" + it->second + "'");
    }
    return v;
}

void allow_only(const ParamMap& params, const std::string& cost, std::initializer_list<const char*> keys) {
    for (const auto& [k, _] : params) {
        bool ok = false;
        for (const char* allowed : keys) ok = ok || k == allowed;
        if (!ok) throw BadParam(cost + ": unexpected parameter '" + k + "'");
    }
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

bool off_diagonal(const Vec& x, const Vec& y) { return distance(x, y) >= kSingularExclusion; }

// Costs of the form f(|x - y|) share c_y = -c_x and c_xy = -c_xx.
CostFunction radial(std::string name, CostEval eval, CostGrad grad_x, CostHess hess_xx, CostDomain valid) {
    CostFunction::Closures cl;
    cl.eval = std::move(eval);
    cl.valid = std::move(valid);
    cl.grad_x = grad_x;
    cl.grad_y = [grad_x](const Vec& x, const Vec& y) { return -grad_x(x, y); };
    cl.hess_xx = hess_xx;
    cl.hess_xy = [hess_xx](const Vec& x, const Vec& y) { return hess_xx(x, y) * -1.0; };
    return CostFunction(std::move(name), std::move(cl));
}

CostFunction quadratic() {
    return radial(
        "quadratic", [](const Vec& x, const Vec& y) { return 0.5 * (x - y).squared_norm(); },
        [](const Vec& x, const Vec& y) { return x - y; },
        [](const Vec& x, const Vec&) { return Mat::identity(x.size()); }, {});
}

CostFunction bilinear() {
    CostFunction::Closures cl;
    cl.eval = [](const Vec& x, const Vec& y) { return -dot(x, y); };
    cl.grad_x = [](const Vec&, const Vec& y) { return -y; };
    cl.grad_y = [](const Vec& x, const Vec&) { return -x; };
    cl.hess_xy = [](const Vec& x, const Vec&) { return Mat::identity(x.size()) * -1.0; };
    cl.hess_xx = [](const Vec& x, const Vec&) { return Mat::zero(x.size()); };
    return CostFunction("bilinear", std::move(cl));
}

CostFunction log_cost() {
    return radial(
        "log", [](const Vec& x, const Vec& y) { return -std::log(distance(x, y)); },
        [](const Vec& x, const Vec& y) {
            const Vec w = x - y;
            return w * (-1.0 / w.squared_norm());
        },
        [](const Vec& x, const Vec& y) {
            // -(I - 2 w w^T / |w|^2) / |w|^2
            const Vec w = x - y;
            const double r2 = w.squared_norm();
            return (Mat::outer(w, w) * (2.0 / r2) - Mat::identity(x.size())) * (1.0 / r2);
        },
        off_diagonal);
}

CostFunction power_cost(double p) {
    return radial(
        "power(p=" + format_number(p) + ")",
        [p](const Vec& x, const Vec& y) { return std::pow(distance(x, y), p) / p; },
        [p](const Vec& x, const Vec& y) {
            const Vec w = x - y;
            return w * std::pow(w.norm(), p - 2.0);
        },
        [p](const Vec& x, const Vec& y) {
            // |w|^(p-2) (I + (p-2) w w^T / |w|^2)
            const Vec w = x - y;
            const double r2 = w.squared_norm();
            return (Mat::identity(x.size()) + Mat::outer(w, w) * ((p - 2.0) / r2)) *
                   std::pow(r2, 0.5 * p - 1.0);
        },
        off_diagonal);
}

CostFunction sqrt_plus() {
    return radial(
        "sqrt_plus", [](const Vec& x, const Vec& y) { return std::sqrt(1.0 + (x - y).squared_norm()); },
        [](const Vec& x, const Vec& y) {
            const Vec w = x - y;
            return w / std::sqrt(1.0 + w.squared_norm());
        },
        [](const Vec& x, const Vec& y) {
            const Vec w = x - y;
            const double s = std::sqrt(1.0 + w.squared_norm());
            return Mat::identity(x.size()) * (1.0 / s) - Mat::outer(w, w) * (1.0 / (s * s * s));
        },
        {});
}

CostFunction riemannian(const Manifold& m) {
    // Half squared distance; analytic gradients, Hessians by differencing them.
    CostFunction::Closures cl;
    cl.eval = [m](const Vec& x, const Vec& y) {
        const double d = m.distance(x, y);
        return 0.5 * d * d;
    };
    cl.valid = [m](const Vec& x, const Vec& y) {
        if (!m.in_chart(x) || !m.in_chart(y)) return false;
        try {
            m.distance(x, y);
        } catch (const DomainError&) {
            return false;
        }
        return true;
    };
    cl.grad_x = [m](const Vec& x, const Vec& y) { return m.half_sq_distance_grad(x, y); };
    cl.grad_y = [m](const Vec& x, const Vec& y) { return m.half_sq_distance_grad(y, x); };
    return CostFunction("riemannian(manifold=" + m.id() + ")", std::move(cl));
}

}  // namespace

CostFunction builtin(const std::string& name, const ParamMap& params) {
    if (name == "quadratic" || name == "bilinear" || name == "log" || name == "sqrt_plus") {
        allow_only(params, name, {});
        if (name == "quadratic") return quadratic();
        if (name == "bilinear") return bilinear();
        if (name == "log") return log_cost();
        return sqrt_plus();
    }
    if (name == "power") {
        allow_only(params, name, {"p"});
        const double p = number_param(params, name, "p");
        if (p == 0.0) throw BadParam("power: exponent p must be nonzero (use 'log' for the p = 0 limit)");
        return power_cost(p);
    }
    if (name == "riemannian") {
        allow_only(params, name, {"manifold"});
        const auto it = params.find("manifold");
        if (it == params.end()) throw BadParam("riemannian: missing parameter 'manifold'");
        return riemannian(Manifold::from_id(it->second));
    }
    throw UnknownCost("unknown cost '" + name + "'");
}

}  // namespace otreg
