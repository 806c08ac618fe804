#include "otreg/frame.hpp"

#include <array>

#include "otreg/newton.hpp"

namespace otreg {

namespace {

constexpr std::array<int, 3> kContinuationSegments{1, 4, 16};

// Solves residual(v) = target along the segment start_target -> target,
// Newton warm-started at each node from the previous solution.
Vec continue_solve(const std::function<Vec(const Vec&)>& map, const Vec& v0, const Vec& start_target,
                   const Vec& target, const DiffConfig& cfg) {
    NoConvergence last(0, std::numeric_limits<double>::infinity(), "continuation failed");
    for (int segments : kContinuationSegments) {
        try {
            Vec v = v0;
            for (int k = 1; k <= segments; ++k) {
                const Vec node = k == segments
                                     ? target
                                     : start_target + (target - start_target) * (static_cast<double>(k) / segments);
                v = newton_solve([&](const Vec& z) { return map(z) - node; }, v, cfg).x;
            }
            return v;
        } catch (const NoConvergence& e) {
            last = e;
        } catch (const DomainError& e) {
            last = NoConvergence(0, std::numeric_limits<double>::infinity(), e.what());
        }
    }
    throw NoConvergence(last.iterations(), last.last_residual(),
                        std::string("inversion left the reachable region: ") + last.what());
}

}  // namespace

Frame::Frame(CostFunction cost, CostFunction normalized, Vec x0, Vec y0, Mat M, Mat M_inv, DiffConfig cfg)
    : cost_(std::move(cost)),
      normalized_(std::move(normalized)),
      x0_(x0),
      y0_(y0),
      M_(M),
      M_inv_(M_inv),
      cfg_(cfg) {
    const Vec zero(dim());
    q_offset_ = cost_grad_y(normalized_, x0_, zero, cfg_);
    p_offset_ = cost_grad_x(normalized_, x0_, zero, cfg_);
}

Frame make_frame(const CostFunction& c, const Vec& x0, const Vec& y0, const DiffConfig& cfg) {
    cfg.validate();
    require_dim(y0, x0.size(), "make_frame y0");
    c.require_valid(x0, y0);
    const Mat M = hess_mixed(c, x0, y0, cfg);
    const double det = M.det();
    if (!(std::abs(det) > kSingularBaseThreshold)) {
        throw SingularBasePair(c.name() + ": |det c_xy| = " + std::to_string(std::abs(det)) + " at base pair " +
                               to_string(x0) + ", " + to_string(y0));
    }
    const Mat M_inv = M.inverse(0.0);
    const Mat M_inv_t = M_inv.transpose();

    auto lift = [y0, M_inv](const Vec& yt) { return y0 - M_inv * yt; };
    CostFunction::Closures cl;
    cl.eval = [c, lift](const Vec& x, const Vec& yt) { return c(x, lift(yt)); };
    cl.valid = [c, lift](const Vec& x, const Vec& yt) { return c.valid(x, lift(yt)); };
    cl.grad_x = [c, lift, cfg](const Vec& x, const Vec& yt) { return cost_grad_x(c, x, lift(yt), cfg); };
    cl.grad_y = [c, lift, cfg, M_inv_t](const Vec& x, const Vec& yt) {
        return -(M_inv_t * cost_grad_y(c, x, lift(yt), cfg));
    };
    cl.hess_xx = [c, lift, cfg](const Vec& x, const Vec& yt) { return hess_xx(c, x, lift(yt), cfg); };
    cl.hess_xy = [c, lift, cfg, M_inv](const Vec& x, const Vec& yt) {
        return (hess_mixed(c, x, lift(yt), cfg) * M_inv) * -1.0;
    };
    CostFunction normalized(c.name() + "[frame]", std::move(cl));
    return Frame(c, std::move(normalized), x0, y0, M, M_inv, cfg);
}

Vec Frame::to_tilde(const Vec& y) const { return -(M_ * (y - y0_)); }

Vec Frame::from_tilde(const Vec& yt) const { return y0_ - M_inv_ * yt; }

Vec Frame::q_coord(const Vec& x) const {
    require_dim(x, dim(), "q_coord");
    return q_offset_ - cost_grad_y(normalized_, x, Vec(dim()), cfg_);
}

Vec Frame::p_coord_tilde(const Vec& yt) const {
    require_dim(yt, dim(), "p_coord");
    return p_offset_ - cost_grad_x(normalized_, x0_, yt, cfg_);
}

Vec Frame::p_coord(const Vec& y) const {
    require_dim(y, dim(), "p_coord");
    if (y == y0_) return Vec(dim());
    return p_coord_tilde(to_tilde(y));
}

Vec Frame::x_of_q(const Vec& q) const {
    require_dim(q, dim(), "x_of_q");
    return continue_solve([this](const Vec& x) { return q_coord(x); }, x0_, Vec(dim()), q, cfg_);
}

Vec Frame::y_tilde_of_p(const Vec& p) const {
    require_dim(p, dim(), "y_of_p");
    const Vec zero(dim());
    return continue_solve([this](const Vec& yt) { return p_coord_tilde(yt); }, zero, zero, p, cfg_);
}

Vec Frame::y_of_p(const Vec& p) const {
    const Vec yt = y_tilde_of_p(p);
    return yt == Vec(dim()) ? y0_ : from_tilde(yt);
}

Vec Frame::base_gradient(const Vec& x) const {
    require_dim(x, dim(), "base_gradient");
    return cost_grad_x(normalized_, x, Vec(dim()), cfg_);
}

Vec Frame::y_map(const Vec& x, const Vec& p) const {
    require_dim(p, dim(), "y_map");
    const Vec start = base_gradient(x);
    return continue_solve([this, &x](const Vec& yt) { return cost_grad_x(normalized_, x, yt, cfg_); }, Vec(dim()),
                          start, p, cfg_);
}

double Frame::c_tilde(const Vec& x, const Vec& yt) const {
    const Vec zero(dim());
    return (normalized_(x, yt) - normalized_(x0_, yt)) - (normalized_(x, zero) - normalized_(x0_, zero));
}

double Frame::c_bar(const Vec& q, const Vec& p) const { return c_tilde(x_of_q(q), y_tilde_of_p(p)); }

Vec Frame::c_bar_grad_q(const Vec& q, const Vec& p) const {
    const Vec x = x_of_q(q);
    const Vec yt = y_tilde_of_p(p);
    const Vec zero(dim());
    const Vec gx = cost_grad_x(normalized_, x, yt, cfg_) - cost_grad_x(normalized_, x, zero, cfg_);
    if (gx == zero) return zero;
    // grad_q = (dq/dx)^{-T} grad_x ctilde, with dq/dx = -chat_xy(x, 0)^T.
    const Mat H = hess_mixed(normalized_, x, zero, cfg_);
    return (H * -1.0).solve(gx, 0.0);
}

Mat Frame::c_bar_hess_q(const Vec& q, const Vec& p) const {
    const Mat J = jacobian([this, &p](const Vec& qq) { return c_bar_grad_q(qq, p); }, q, cfg_);
    return (J + J.transpose()) * 0.5;
}

}  // namespace otreg
