#include "otreg/manifold.hpp"

#include <numbers>

namespace otreg {

namespace {

// d / sin(d) and d / sinh(d), continuous at 0.
double d_over_sin(double d) { return d < 1e-8 ? 1.0 + d * d / 6.0 : d / std::sin(d); }
double d_over_sinh(double d) { return d < 1e-8 ? 1.0 - d * d / 6.0 : d / std::sinh(d); }

// Ambient vectors have n + 1 entries, which can exceed kMaxDim.
using Ambient = std::vector<double>;

double amb_dot(const Ambient& a, const Ambient& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Minkowski form with the time coordinate at index 0.
double mink_dot(const Ambient& a, const Ambient& b) { return amb_dot(a, b) - 2.0 * a[0] * b[0]; }

Ambient amb_sub(const Ambient& a, const Ambient& b) {
    Ambient r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Ambient amb_add(const Ambient& a, const Ambient& b) {
    Ambient r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

double amb_norm(const Ambient& a) { return std::sqrt(amb_dot(a, a)); }

// Stereographic embedding into S^n: last coordinate is the polar axis.
Ambient sphere_embed(const Vec& x) {
    const int n = x.size();
    const double r2 = x.squared_norm();
    Ambient X(static_cast<std::size_t>(n + 1));
    for (int i = 0; i < n; ++i) X[i] = 2.0 * x[i] / (1.0 + r2);
    X[n] = (1.0 - r2) / (1.0 + r2);
    return X;
}

Ambient sphere_push(const Vec& x, const Vec& u) {
    const int n = x.size();
    const double r2 = x.squared_norm();
    const double xu = dot(x, u);
    const double s = 1.0 + r2;
    Ambient U(static_cast<std::size_t>(n + 1));
    for (int i = 0; i < n; ++i) U[i] = 2.0 * u[i] / s - 4.0 * x[i] * xu / (s * s);
    U[n] = -4.0 * xu / (s * s);
    return U;
}

Vec sphere_chart(const Ambient& X) {
    const int n = static_cast<int>(X.size()) - 1;
    const double denom = 1.0 + X[n];
    if (!(denom > 1e-12)) throw OutOfChart("sphere: point at the chart pole");
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = X[i] / denom;
    return x;
}

// Poincare ball to hyperboloid, time coordinate first.
Ambient hyper_embed(const Vec& x) {
    const int n = x.size();
    const double r2 = x.squared_norm();
    Ambient X(static_cast<std::size_t>(n + 1));
    X[0] = (1.0 + r2) / (1.0 - r2);
    for (int i = 0; i < n; ++i) X[i + 1] = 2.0 * x[i] / (1.0 - r2);
    return X;
}

Ambient hyper_push(const Vec& x, const Vec& u) {
    const int n = x.size();
    const double r2 = x.squared_norm();
    const double xu = dot(x, u);
    const double s = 1.0 - r2;
    Ambient U(static_cast<std::size_t>(n + 1));
    U[0] = 4.0 * xu / (s * s);
    for (int i = 0; i < n; ++i) U[i + 1] = 2.0 * u[i] / s + 4.0 * x[i] * xu / (s * s);
    return U;
}

Vec hyper_chart(const Ambient& X) {
    const int n = static_cast<int>(X.size()) - 1;
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = X[i + 1] / (1.0 + X[0]);
    return x;
}

void require_same_dim(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DomainError("manifold: dimension mismatch");
}

}  // namespace

Manifold Manifold::from_id(const std::string& id) {
    if (id == "euclidean") return euclidean();
    if (id == "sphere") return sphere();
    if (id == "hyperbolic") return hyperbolic();
    throw BadParam("unknown manifold '" + id + "' (expected euclidean, sphere or hyperbolic)");
}

std::string Manifold::id() const {
    switch (kind_) {
        case ManifoldKind::euclidean: return "euclidean";
        case ManifoldKind::sphere: return "sphere";
        case ManifoldKind::hyperbolic: return "hyperbolic";
    }
    return "?";
}

double Manifold::curvature() const noexcept {
    switch (kind_) {
        case ManifoldKind::euclidean: return 0.0;
        case ManifoldKind::sphere: return 1.0;
        case ManifoldKind::hyperbolic: return -1.0;
    }
    return 0.0;
}

bool Manifold::in_chart(const Vec& x) const noexcept {
    if (!x.all_finite()) return false;
    if (kind_ == ManifoldKind::hyperbolic) return x.norm() < 1.0 - kChartMargin;
    return true;
}

void Manifold::require_in_chart(const Vec& x) const {
    if (!in_chart(x)) throw OutOfChart(id() + ": point " + to_string(x) + " outside chart");
}

double Manifold::conformal_factor(const Vec& x) const {
    require_in_chart(x);
    switch (kind_) {
        case ManifoldKind::euclidean: return 1.0;
        case ManifoldKind::sphere: return 2.0 / (1.0 + x.squared_norm());
        case ManifoldKind::hyperbolic: return 2.0 / (1.0 - x.squared_norm());
    }
    return 1.0;
}

double Manifold::metric_inner(const Vec& x, const Vec& u, const Vec& v) const {
    const double l = conformal_factor(x);
    return l * l * dot(u, v);
}

double Manifold::distance(const Vec& x, const Vec& y) const {
    require_same_dim(x, y);
    require_in_chart(x);
    require_in_chart(y);
    switch (kind_) {
        case ManifoldKind::euclidean: return otreg::distance(x, y);
        case ManifoldKind::sphere: {
            // Angle between unit vectors, stable near 0 and pi.
            const Ambient X = sphere_embed(x), Y = sphere_embed(y);
            const double d = 2.0 * std::atan2(amb_norm(amb_sub(X, Y)), amb_norm(amb_add(X, Y)));
            if (d > std::numbers::pi - kCutLocusMargin) {
                throw CutLocus("sphere: points " + to_string(x) + ", " + to_string(y) + " near antipodal");
            }
            return d;
        }
        case ManifoldKind::hyperbolic: {
            const double s = (1.0 - x.squared_norm()) * (1.0 - y.squared_norm());
            return 2.0 * std::asinh(otreg::distance(x, y) / std::sqrt(s));
        }
    }
    return 0.0;
}

Vec Manifold::half_sq_distance_grad(const Vec& x, const Vec& y) const {
    const double d = distance(x, y);
    const int n = x.size();
    Vec g(n);
    switch (kind_) {
        case ManifoldKind::euclidean: return x - y;
        case ManifoldKind::sphere: {
            const Ambient diff = amb_sub(sphere_embed(y), sphere_embed(x));
            const double k = d_over_sin(d);
            for (int i = 0; i < n; ++i) g[i] = -k * amb_dot(sphere_push(x, Vec::unit(n, i)), diff);
            return g;
        }
        case ManifoldKind::hyperbolic: {
            const Ambient diff = amb_sub(hyper_embed(y), hyper_embed(x));
            const double k = d_over_sinh(d);
            for (int i = 0; i < n; ++i) g[i] = -k * mink_dot(hyper_push(x, Vec::unit(n, i)), diff);
            return g;
        }
    }
    return g;
}

Vec Manifold::exp_map(const Vec& x, const Vec& u, double t) const {
    require_same_dim(x, u);
    require_in_chart(x);
    const double speed = metric_norm(x, u);
    const double s = t * speed;
    if (kind_ == ManifoldKind::euclidean) return x + u * t;
    if (speed == 0.0 || s == 0.0) return x;
    if (kind_ == ManifoldKind::sphere) {
        if (std::abs(s) >= std::numbers::pi - kCutLocusMargin) {
            throw OutOfChart("sphere: geodesic length " + std::to_string(s) + " reaches the cut locus");
        }
        const Ambient X = sphere_embed(x);
        const Ambient U = sphere_push(x, u);
        Ambient Z(X.size());
        for (std::size_t i = 0; i < X.size(); ++i) Z[i] = std::cos(s) * X[i] + std::sin(s) * U[i] / speed;
        return sphere_chart(Z);
    }
    const Ambient X = hyper_embed(x);
    const Ambient U = hyper_push(x, u);
    Ambient Z(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) Z[i] = std::cosh(s) * X[i] + std::sinh(s) * U[i] / speed;
    Vec out = hyper_chart(Z);
    require_in_chart(out);
    return out;
}

void TangentPair::validate(const Manifold& m) const {
    require_same_dim(base, u);
    require_same_dim(base, v);
    const double uu = m.metric_inner(base, u, u);
    const double vv = m.metric_inner(base, v, v);
    const double uv = m.metric_inner(base, u, v);
    if (std::abs(uu - 1.0) > 1e-12 || std::abs(vv - 1.0) > 1e-12 || std::abs(uv) > 1e-12) {
        throw DomainError("tangent pair is not orthonormal at " + to_string(base));
    }
}

TangentPair random_tangent_pair(const Manifold& m, int dim, Rng& rng, double base_radius) {
    if (dim < 2) throw DomainError("tangent pair needs dimension >= 2");
    const Vec base = DomainBox::cube(Vec(dim), base_radius).uniform(rng);
    const double l = m.conformal_factor(base);
    const Vec u = rng.unit_vector(dim);
    Vec w = rng.unit_vector(dim);
    w -= u * dot(w, u);
    while (w.norm() < 1e-6) {
        w = rng.unit_vector(dim);
        w -= u * dot(w, u);
    }
    w /= w.norm();
    w -= u * dot(w, u);  // second Gram-Schmidt pass
    TangentPair pair{base, u / l, w / (w.norm() * l)};
    pair.validate(m);
    return pair;
}

double curvature_fit(const Manifold& m, const TangentPair& pair, const std::vector<double>& t_values) {
    if (t_values.size() < 3) throw DomainError("curvature_fit: need at least 3 t values");
    pair.validate(m);
    double sxy = 0.0, sxx = 0.0;
    for (double t : t_values) {
        if (!(t > 0.0 && t < 0.5)) throw DomainError("curvature_fit: t values must lie in (0, 0.5)");
        const double d = m.distance(m.exp_map(pair.base, pair.u, t), m.exp_map(pair.base, pair.v, t));
        const double y = d / (std::numbers::sqrt2 * t) - 1.0;
        const double x = -t * t / 12.0;
        const double w = 1.0 / (t * t);
        sxy += w * x * y;
        sxx += w * x * x;
    }
    return sxy / sxx;
}

OrthogonalInequality orthogonal_inequality_check(const Manifold& m, const TangentPair& pair, double t) {
    pair.validate(m);
    const double d = m.distance(m.exp_map(pair.base, pair.u, t), m.exp_map(pair.base, pair.v, t));
    OrthogonalInequality r;
    r.lhs = d * d;
    r.rhs = 2.0 * t * t;
    r.holds = r.lhs <= r.rhs + 1e-9;
    return r;
}

}  // namespace otreg
