#pragma once

// Constant-curvature model manifolds in a single working chart.
//
//   euclidean   R^n, identity chart.
//   sphere      unit S^n, stereographic chart from the south pole: the chart
//               origin is the north pole, |x| = 1 is the equator.
//   hyperbolic  Poincare ball |x| < 1.
//
// All three metrics are conformal, g = lambda(x)^2 * I, so Euclidean and
// metric orthogonality of tangent vectors coincide.

#include <string>
#include <vector>

#include "otreg/linalg.hpp"
#include "otreg/sampling.hpp"

namespace otreg {

enum class ManifoldKind { euclidean, sphere, hyperbolic };

class Manifold {
public:
    static Manifold euclidean() { return Manifold(ManifoldKind::euclidean); }
    static Manifold sphere() { return Manifold(ManifoldKind::sphere); }
    static Manifold hyperbolic() { return Manifold(ManifoldKind::hyperbolic); }
    // "euclidean" | "sphere" | "hyperbolic"; throws BadParam otherwise.
    static Manifold from_id(const std::string& id);

    ManifoldKind kind() const noexcept { return kind_; }
    std::string id() const;
    double curvature() const noexcept;

    // Throws OutOfChart when x is outside the working chart.
    void require_in_chart(const Vec& x) const;
    bool in_chart(const Vec& x) const noexcept;

    double conformal_factor(const Vec& x) const;
    double metric_norm(const Vec& x, const Vec& u) const { return conformal_factor(x) * u.norm(); }
    double metric_inner(const Vec& x, const Vec& u, const Vec& v) const;

    // Sphere: throws CutLocus when the points are within 1e-3 of antipodal.
    double distance(const Vec& x, const Vec& y) const;
    // Gradient in x of d(x, y)^2 / 2, in chart coordinates.
    Vec half_sq_distance_grad(const Vec& x, const Vec& y) const;
    // Geodesic from x with initial chart velocity u, evaluated at time t.
    Vec exp_map(const Vec& x, const Vec& u, double t) const;

private:
    explicit Manifold(ManifoldKind kind) : kind_(kind) {}
    ManifoldKind kind_;
};

inline constexpr double kCutLocusMargin = 1e-3;
inline constexpr double kChartMargin = 1e-6;

// Base point with two metric-orthonormal tangent vectors.
struct TangentPair {
    Vec base;
    Vec u;
    Vec v;

    // Throws DomainError unless |u| = |v| = 1 and u.v = 0 (metric, 1e-12).
    void validate(const Manifold& m) const;
};

// Seeded pair with base drawn uniformly from the cube of half-width base_radius.
TangentPair random_tangent_pair(const Manifold& m, int dim, Rng& rng, double base_radius = 0.3);

// Fits kappa in d_t = sqrt(2) t (1 - kappa t^2 / 12) by weighted least
// squares (weights 1/t^2) on d_t / (sqrt(2) t) - 1 against -t^2 / 12.
double curvature_fit(const Manifold& m, const TangentPair& pair, const std::vector<double>& t_values);

struct OrthogonalInequality {
    double lhs = 0.0;   // d(exp(t u), exp(t v))^2
    double rhs = 0.0;   // 2 t^2
    bool holds = false; // lhs <= rhs + 1e-9
};

OrthogonalInequality orthogonal_inequality_check(const Manifold& m, const TangentPair& pair, double t);

}  // namespace otreg
