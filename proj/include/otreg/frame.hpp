#pragma once

// Normalized frame at a base pair (x0, y0).
//
// With M = c_xy(x0, y0), the target variable is renormalized as
//     y = y0 - M^{-1} yt,        yt = -M (y - y0),
// so that chat(x, yt) := c(x, y(yt)) has mixed Hessian -I at (x0, 0).
// In these variables
//     q(x)  = chat_y(x0, 0) - chat_y(x, 0)      (q(x0) = 0, dq/dx(x0) = I)
//     p(yt) = chat_x(x0, 0) - chat_x(x0, yt)    (p(0)  = 0, dp/dyt(0) = I)
// and the doubly centered cost is
//     ctilde(x, yt) = [chat(x, yt) - chat(x0, yt)] - [chat(x, 0) - chat(x0, 0)],
//     cbar(q, p)   = ctilde(x(q), yt(p)).
//
// Inverses run damped Newton with straight-line continuation from the base
// point (1, 4 then 16 segments). NoConvergence means the point is treated as
// outside the region where the transformations exist.

#include "otreg/cost.hpp"
#include "otreg/diff.hpp"
#include "otreg/linalg.hpp"

namespace otreg {

inline constexpr double kSingularBaseThreshold = 1e-8;

class Frame {
public:
    const CostFunction& cost() const noexcept { return cost_; }
    // chat(x, yt); a regular CostFunction with closures delegating to cost().
    const CostFunction& normalized_cost() const noexcept { return normalized_; }
    const DiffConfig& config() const noexcept { return cfg_; }

    int dim() const noexcept { return x0_.size(); }
    const Vec& x0() const noexcept { return x0_; }
    const Vec& y0() const noexcept { return y0_; }
    const Mat& M() const noexcept { return M_; }
    const Mat& M_inv() const noexcept { return M_inv_; }

    Vec to_tilde(const Vec& y) const;    // yt = -M (y - y0)
    Vec from_tilde(const Vec& yt) const; // y = y0 - M^{-1} yt

    Vec q_coord(const Vec& x) const;
    Vec p_coord(const Vec& y) const;           // y in original coordinates
    Vec p_coord_tilde(const Vec& yt) const;

    Vec x_of_q(const Vec& q) const;
    Vec y_of_p(const Vec& p) const;            // original coordinates
    Vec y_tilde_of_p(const Vec& p) const;

    // Y(x, p): the yt with chat_x(x, yt) = p, continued from yt = 0.
    Vec y_map(const Vec& x, const Vec& p) const;
    // chat_x(x, 0), the p for which y_map returns the base target.
    Vec base_gradient(const Vec& x) const;

    double c_tilde(const Vec& x, const Vec& yt) const;
    double c_bar(const Vec& q, const Vec& p) const;
    // Gradient of q -> cbar(q, p) through dq/dx = -chat_xy(x, 0)^T.
    Vec c_bar_grad_q(const Vec& q, const Vec& p) const;
    Mat c_bar_hess_q(const Vec& q, const Vec& p) const;

private:
    friend Frame make_frame(const CostFunction&, const Vec&, const Vec&, const DiffConfig&);
    Frame(CostFunction cost, CostFunction normalized, Vec x0, Vec y0, Mat M, Mat M_inv, DiffConfig cfg);

    CostFunction cost_;
    CostFunction normalized_;
    Vec x0_, y0_;
    Mat M_, M_inv_;
    DiffConfig cfg_;
    Vec q_offset_;  // chat_y(x0, 0)
    Vec p_offset_;  // chat_x(x0, 0)
};

// Throws SingularBasePair when |det c_xy(x0, y0)| <= kSingularBaseThreshold,
// DomainError when (x0, y0) is outside the cost's valid region.
Frame make_frame(const CostFunction& c, const Vec& x0, const Vec& y0, const DiffConfig& cfg = {});

}  // namespace otreg
