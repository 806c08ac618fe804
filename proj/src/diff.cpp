#include "otreg/diff.hpp"

namespace otreg {

void DiffConfig::validate() const {
    if (!(step > 0.0)) throw ConfigError("DiffConfig: step must be > 0");
    if (!(newton_tol > 0.0)) throw ConfigError("DiffConfig: newton_tol must be > 0");
    if (newton_max_iter < 1) throw ConfigError("DiffConfig: newton_max_iter must be >= 1");
}

namespace {

double sample(const ScalarField& f, const Vec& x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw NonFiniteSample("non-finite sample at " + to_string(x));
    return v;
}

Vec sample(const VectorField& F, const Vec& x) {
    Vec v = F(x);
    if (!v.all_finite()) throw NonFiniteSample("non-finite vector sample at " + to_string(x));
    return v;
}

double step_for(const DiffConfig& cfg, double coord) { return cfg.step * std::max(1.0, std::abs(coord)); }

Vec grad_at_scale(const ScalarField& f, const Vec& x, const DiffConfig& cfg, double scale) {
    const int n = x.size();
    Vec g(n);
    for (int i = 0; i < n; ++i) {
        const double h = scale * step_for(cfg, x[i]);
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (sample(f, xp) - sample(f, xm)) / (2.0 * h);
    }
    return g;
}

Mat hessian_at_scale(const ScalarField& f, const Vec& x, const DiffConfig& cfg, double scale) {
    const int n = x.size();
    Mat H(n);
    const double f0 = sample(f, x);
    for (int i = 0; i < n; ++i) {
        const double hi = scale * step_for(cfg, x[i]);
        Vec xp = x, xm = x;
        xp[i] += hi;
        xm[i] -= hi;
        H(i, i) = (sample(f, xp) - 2.0 * f0 + sample(f, xm)) / (hi * hi);
        for (int j = i + 1; j < n; ++j) {
            const double hj = scale * step_for(cfg, x[j]);
            Vec pp = x, pm = x, mp = x, mm = x;
            pp[i] += hi; pp[j] += hj;
            pm[i] += hi; pm[j] -= hj;
            mp[i] -= hi; mp[j] += hj;
            mm[i] -= hi; mm[j] -= hj;
            const double v =
                (sample(f, pp) - sample(f, pm) - sample(f, mp) + sample(f, mm)) / (4.0 * hi * hj);
            H(i, j) = v;
            H(j, i) = v;
        }
    }
    return H;
}

Mat jacobian_at_scale(const VectorField& F, const Vec& x, const DiffConfig& cfg, double scale) {
    const int n = x.size();
    Mat J(n);
    for (int j = 0; j < n; ++j) {
        const double h = scale * step_for(cfg, x[j]);
        Vec xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        const Vec fp = sample(F, xp);
        const Vec fm = sample(F, xm);
        require_dim(fp, n, "jacobian");
        for (int i = 0; i < n; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    }
    return J;
}

template <typename T>
T extrapolate(const T& coarse, const T& fine) {
    return (fine * 4.0 - coarse) * (1.0 / 3.0);
}

// Mixed second differences of c in (x_i, y_j).
Mat mixed_at_scale(const CostFunction& c, const Vec& x, const Vec& y, const DiffConfig& cfg,
                   double scale) {
    const int n = x.size();
    Mat H(n);
    auto eval = [&](const Vec& a, const Vec& b) {
        const double v = c(a, b);
        if (!std::isfinite(v)) throw NonFiniteSample("non-finite cost at " + to_string(a) + ", " + to_string(b));
        return v;
    };
    for (int i = 0; i < n; ++i) {
        const double hi = scale * step_for(cfg, x[i]);
        Vec xp = x, xm = x;
        xp[i] += hi;
        xm[i] -= hi;
        for (int j = 0; j < n; ++j) {
            const double kj = scale * step_for(cfg, y[j]);
            Vec yp = y, ym = y;
            yp[j] += kj;
            ym[j] -= kj;
            H(i, j) = (eval(xp, yp) - eval(xp, ym) - eval(xm, yp) + eval(xm, ym)) / (4.0 * hi * kj);
        }
    }
    return H;
}

}  // namespace

Vec grad(const ScalarField& f, const Vec& x, const DiffConfig& cfg) {
    const Vec coarse = grad_at_scale(f, x, cfg, 1.0);
    if (!cfg.richardson) return coarse;
    return extrapolate(coarse, grad_at_scale(f, x, cfg, 0.5));
}

Mat hessian(const ScalarField& f, const Vec& x, const DiffConfig& cfg) {
    const Mat coarse = hessian_at_scale(f, x, cfg, 1.0);
    if (!cfg.richardson) return coarse;
    return extrapolate(coarse, hessian_at_scale(f, x, cfg, 0.5));
}

Mat jacobian(const VectorField& F, const Vec& x, const DiffConfig& cfg) {
    const Mat coarse = jacobian_at_scale(F, x, cfg, 1.0);
    if (!cfg.richardson) return coarse;
    return extrapolate(coarse, jacobian_at_scale(F, x, cfg, 0.5));
}

Vec cost_grad_x(const CostFunction& c, const Vec& x, const Vec& y, const DiffConfig& cfg) {
    if (c.has_grad_x()) return c.analytic_grad_x(x, y);
    c.require_valid(x, y);
    return grad([&](const Vec& a) { return c(a, y); }, x, cfg);
}

Vec cost_grad_y(const CostFunction& c, const Vec& x, const Vec& y, const DiffConfig& cfg) {
    if (c.has_grad_y()) return c.analytic_grad_y(x, y);
    c.require_valid(x, y);
    return grad([&](const Vec& b) { return c(x, b); }, y, cfg);
}

Mat hess_mixed(const CostFunction& c, const Vec& x, const Vec& y, const DiffConfig& cfg) {
    if (c.has_hess_xy()) return c.analytic_hess_xy(x, y);
    c.require_valid(x, y);
    if (c.has_grad_x()) {
        // Column j is d(grad_x)/dy_j.
        return jacobian([&](const Vec& b) { return c.analytic_grad_x(x, b); }, y, cfg);
    }
    const Mat coarse = mixed_at_scale(c, x, y, cfg, 1.0);
    if (!cfg.richardson) return coarse;
    return extrapolate(coarse, mixed_at_scale(c, x, y, cfg, 0.5));
}

Mat hess_xx(const CostFunction& c, const Vec& x, const Vec& y, const DiffConfig& cfg) {
    if (c.has_hess_xx()) return c.analytic_hess_xx(x, y);
    c.require_valid(x, y);
    if (c.has_grad_x()) {
        Mat J = jacobian([&](const Vec& a) { return c.analytic_grad_x(a, y); }, x, cfg);
        return (J + J.transpose()) * 0.5;
    }
    return hessian([&](const Vec& a) { return c(a, y); }, x, cfg);
}

}  // namespace otreg
