#include "otreg/a3w.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace otreg {

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "PASS";
        case Status::fail: return "FAIL";
        case Status::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::string to_string(CounterexampleKind k) {
    switch (k) {
        case CounterexampleKind::midpoint: return "midpoint";
        case CounterexampleKind::implication: return "implication";
        case CounterexampleKind::section: return "section";
    }
    return "?";
}

const Vec& Counterexample::coordinate(const std::string& name) const {
    for (const auto& [k, v] : coordinates)
        if (k == name) return v;
    throw Error("counterexample has no coordinate '" + name + "'");
}

double Verdict::skipped_fraction() const noexcept {
    const long total = points_checked + points_skipped;
    return total == 0 ? 0.0 : static_cast<double>(points_skipped) / static_cast<double>(total);
}

Verdict aggregate(const std::vector<SampleOutcome>& outcomes, double tolerance) {
    Verdict v;
    v.tolerance = tolerance;
    bool any = false;
    std::vector<const Counterexample*> bad;
    for (const auto& o : outcomes) {
        if (!o.evaluated) {
            ++v.points_skipped;
            continue;
        }
        ++v.points_checked;
        v.max_measured = any ? std::max(v.max_measured, o.measured) : o.measured;
        any = true;
        if (o.measured > tolerance) bad.push_back(&o.example);
    }
    v.violations = static_cast<long>(bad.size());
    std::stable_sort(bad.begin(), bad.end(),
                     [](const Counterexample* a, const Counterexample* b) { return a->measured > b->measured; });
    for (std::size_t i = 0; i < bad.size() && i < kMaxStoredCounterexamples; ++i) {
        v.counterexamples.push_back(*bad[i]);
    }
    if (v.skipped_fraction() > kMaxSkippedFraction) {
        v.status = Status::inconclusive;
    } else {
        v.status = v.violations > 0 ? Status::fail : Status::pass;
    }
    return v;
}

namespace {

constexpr double kOrthoTol = 1e-12;

double xi_form(const Frame& f, const Vec& x, const Vec& yt, const Vec& xi) {
    return hess_xx(f.normalized_cost(), x, yt, f.config()).form(xi, xi);
}

// Evaluates `measure` and converts skip-class failures into an unevaluated outcome.
template <typename F>
SampleOutcome guarded(F&& measure) {
    SampleOutcome o;
    try {
        o = measure();
    } catch (const NoConvergence&) {
        o.evaluated = false;
    } catch (const DomainError&) {
        o.evaluated = false;
    } catch (const NonFiniteSample&) {
        o.evaluated = false;
    }
    return o;
}

// Largest s in (0, 1] with s * v inside the box (which must contain 0).
std::optional<Vec> shrink_into(const DomainBox& box, const Vec& v) {
    if (!box.contains(Vec(v.size()))) return std::nullopt;
    double s = 1.0;
    for (int i = 0; i < v.size(); ++i) {
        if (v[i] > 0.0 && v[i] * s > box.upper[i]) s = box.upper[i] / v[i];
        if (v[i] < 0.0 && v[i] * s < box.lower[i]) s = box.lower[i] / v[i];
    }
    return v * s;
}

constexpr double kSectionInset = 1e-6;

// Parameter range {t : start + t dir in box}, or nullopt when empty.
std::optional<std::pair<double, double>> box_span(const DomainBox& box, const Vec& start, const Vec& dir) {
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < start.size(); ++i) {
        if (dir[i] == 0.0) {
            if (start[i] < box.lower[i] || start[i] > box.upper[i]) return std::nullopt;
            continue;
        }
        double a = (box.lower[i] - start[i]) / dir[i], b = (box.upper[i] - start[i]) / dir[i];
        if (a > b) std::swap(a, b);
        lo = std::max(lo, a);
        hi = std::min(hi, b);
    }
    if (!(lo < hi)) return std::nullopt;
    return std::make_pair(lo, hi);
}

}  // namespace

double midpoint_defect(const Frame& f, const Vec& x, const Vec& p, const Vec& xi, const Vec& eta) {
    require_dim(x, f.dim(), "midpoint_defect x");
    require_dim(p, f.dim(), "midpoint_defect p");
    require_dim(xi, f.dim(), "midpoint_defect xi");
    require_dim(eta, f.dim(), "midpoint_defect eta");
    if (std::abs(xi.norm() - 1.0) > kOrthoTol) throw OrthogonalityError("midpoint_defect: |xi| != 1");
    if (std::abs(dot(xi, eta)) > kOrthoTol) {
        throw OrthogonalityError("midpoint_defect: xi . eta = " + std::to_string(dot(xi, eta)));
    }
    const double mid = xi_form(f, x, f.y_map(x, p), xi);
    const double plus = xi_form(f, x, f.y_map(x, p + eta), xi);
    const double minus = xi_form(f, x, f.y_map(x, p - eta), xi);
    return (plus + minus) - 2.0 * mid;
}

Verdict check_midpoint(const Frame& f, const SamplePlan& plan, const DomainBox& box_x, const DomainBox& box_p,
                       double tol) {
    plan.validate();
    box_x.validate();
    box_p.validate();
    require_dim(box_x.lower, f.dim(), "check_midpoint box_x");
    require_dim(box_p.lower, f.dim(), "check_midpoint box_p");
    const int n = f.dim();
    const int k = plan.grid_per_axis;
    const long gx = box_x.grid_size(k);
    const long n_grid = gx * box_p.grid_size(k);
    const long total = n_grid + plan.random_samples;

    const auto outcomes = parallel_map<SampleOutcome>(total, [&](long i) {
        Rng rng = Rng::stream(plan.seed, static_cast<std::uint64_t>(i), 0x3D);
        Vec x, offset;
        if (i < n_grid) {
            x = box_x.grid_point(k, i % gx);
            offset = box_p.grid_point(k, i / gx);
        } else {
            x = box_x.uniform(rng);
            offset = box_p.uniform(rng);
        }
        const Vec xi = rng.unit_vector(n);
        Vec eta(n);
        if (n > 1) {
            Vec r = rng.unit_vector(n);
            r -= xi * dot(r, xi);
            while (r.norm() < 1e-6) {
                r = rng.unit_vector(n);
                r -= xi * dot(r, xi);
            }
            eta = r * (plan.eta_scale / r.norm());
            eta -= xi * dot(eta, xi);
        }
        return guarded([&] {
            const Vec p = f.base_gradient(x) - offset;
            SampleOutcome o;
            o.measured = midpoint_defect(f, x, p, xi, eta);
            o.evaluated = true;
            o.example = {CounterexampleKind::midpoint, {{"x", x}, {"p", p}, {"xi", xi}, {"eta", eta}}, o.measured,
                         tol, i};
            return o;
        });
    });
    return aggregate(outcomes, tol);
}

double implication_defect(const Frame& f, const Vec& q, const Vec& p) {
    require_dim(q, f.dim(), "implication_defect q");
    require_dim(p, f.dim(), "implication_defect p");
    if (dot(q, p) < -kOrthoTol * std::max(1.0, q.norm() * p.norm())) {
        throw DomainError("implication_defect: requires q . p >= 0");
    }
    return f.c_bar(q, p);
}

Verdict check_implication(const Frame& f, const SamplePlan& plan, const DomainBox& box_q, const DomainBox& box_p,
                          double tol) {
    plan.validate();
    box_q.validate();
    box_p.validate();
    require_dim(box_q.lower, f.dim(), "check_implication box_q");
    require_dim(box_p.lower, f.dim(), "check_implication box_p");
    const int k = plan.grid_per_axis;

    std::vector<std::pair<Vec, Vec>> pairs;
    const long gq = box_q.grid_size(k), gp = box_p.grid_size(k);
    for (long j = 0; j < gp; ++j) {
        const Vec p = box_p.grid_point(k, j);
        for (long i = 0; i < gq; ++i) {
            const Vec q = box_q.grid_point(k, i);
            if (dot(q, p) >= 0.0) pairs.emplace_back(q, p);
        }
    }
    for (int i = 0; i < plan.random_samples; ++i) {
        Rng rng = Rng::stream(plan.seed, static_cast<std::uint64_t>(i), 0x1B);
        for (int attempt = 0; attempt < 100; ++attempt) {
            const Vec q = box_q.uniform(rng);
            const Vec p = box_p.uniform(rng);
            if (dot(q, p) >= 0.0) {
                pairs.emplace_back(q, p);
                break;
            }
        }
    }
    // Boundary set q . p = 0, which the reverse direction of the equivalence lives on.
    for (int i = 0; i < plan.random_samples && f.dim() > 1; ++i) {
        Rng rng = Rng::stream(plan.seed, static_cast<std::uint64_t>(i), 0x0B);
        const Vec q = box_q.uniform(rng);
        Vec p = box_p.uniform(rng);
        if (q.squared_norm() == 0.0) continue;
        p -= q * (dot(p, q) / q.squared_norm());
        const auto shrunk = shrink_into(box_p, p);
        if (!shrunk) continue;
        pairs.emplace_back(q, *shrunk);
    }

    const auto outcomes = parallel_map<SampleOutcome>(static_cast<long>(pairs.size()), [&](long i) {
        const auto& [q, p] = pairs[static_cast<std::size_t>(i)];
        return guarded([&] {
            SampleOutcome o;
            o.measured = implication_defect(f, q, p);
            o.evaluated = true;
            o.example = {CounterexampleKind::implication, {{"q", q}, {"p", p}}, o.measured, tol, i};
            return o;
        });
    });
    return aggregate(outcomes, tol);
}

Verdict section_convexity_probe(const Frame& f, const Vec& y, const SamplePlan& plan, const DomainBox& box,
                                double tol) {
    plan.validate();
    box.validate();
    require_dim(box.lower, f.dim(), "section_convexity_probe box");
    const Vec p = f.p_coord(y);
    Verdict empty;
    empty.tolerance = tol;
    if (p == Vec(f.dim())) return empty;  // y = y0: the section is empty

    const int k = plan.grid_per_axis;
    std::vector<Vec> pts;
    const long g = box.grid_size(k);
    for (long i = 0; i < g; ++i) pts.push_back(box.grid_point(k, i));
    for (int i = 0; i < 2 * plan.random_samples; ++i) {
        Rng rng = Rng::stream(plan.seed, static_cast<std::uint64_t>(i), 0x5C);
        pts.push_back(box.uniform(rng));
    }
    // Section membership at every point: nullopt = could not evaluate.
    const auto values = parallel_map<std::optional<double>>(static_cast<long>(pts.size()), [&](long i) {
        try {
            return std::optional<double>(f.c_bar(pts[static_cast<std::size_t>(i)], p));
        } catch (const Error&) {
            return std::optional<double>();
        }
    });

    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    long skipped = 0;
    auto consider = [&](std::size_t a, std::size_t b) {
        if (!values[a] || !values[b]) {
            ++skipped;
            return;
        }
        if (*values[a] > 0.0 && *values[b] > 0.0) candidates.emplace_back(a, b);
    };
    for (std::size_t a = 0; a < static_cast<std::size_t>(g); ++a)
        for (std::size_t b = a + 1; b < static_cast<std::size_t>(g); ++b) consider(a, b);
    for (std::size_t a = static_cast<std::size_t>(g); a + 1 < pts.size(); a += 2) consider(a, a + 1);

    // Boundary refinement: walk from each lattice point (and some random
    // points) along p to where the section ends, step back inside by
    // kSectionInset, and pair those near-boundary points. Random pairs rarely
    // land in the thin region where convexity fails.
    const Vec dir = p / p.norm();
    const std::size_t n_lines = static_cast<std::size_t>(g) + static_cast<std::size_t>(plan.random_samples / 5);
    const auto inner = parallel_map<std::optional<Vec>>(static_cast<long>(std::min(n_lines, pts.size())), [&](long i) {
        const Vec& start = pts[static_cast<std::size_t>(i)];
        const auto span = box_span(box, start, dir);
        if (!span) return std::optional<Vec>();
        try {
            double lo = span->first, hi = span->second;
            if (!(f.c_bar(start + dir * lo, p) > 0.0) || !(f.c_bar(start + dir * hi, p) <= 0.0)) {
                return std::optional<Vec>();
            }
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (f.c_bar(start + dir * mid, p) > 0.0 ? lo : hi) = mid;
            }
            const Vec b = start + dir * (lo - kSectionInset);
            if (!box.contains(b) || !(f.c_bar(b, p) > 0.0)) return std::optional<Vec>();
            return std::optional<Vec>(b);
        } catch (const Error&) {
            return std::optional<Vec>();
        }
    });
    std::vector<Vec> boundary;
    for (const auto& b : inner)
        if (b) boundary.push_back(*b);
    std::vector<std::pair<Vec, Vec>> tests;
    for (const auto& [a, b] : candidates) tests.emplace_back(pts[a], pts[b]);
    for (std::size_t a = 0; a < boundary.size(); ++a)
        for (std::size_t b = a + 1; b < boundary.size(); ++b)
            if (distance(boundary[a], boundary[b]) > 1e-6) tests.emplace_back(boundary[a], boundary[b]);

    auto outcomes = parallel_map<SampleOutcome>(static_cast<long>(tests.size()), [&](long i) {
        const auto& [a, b] = tests[static_cast<std::size_t>(i)];
        return guarded([&] {
            const Vec mid = (a + b) * 0.5;
            SampleOutcome o;
            o.measured = -f.c_bar(mid, p);
            o.evaluated = true;
            o.example = {CounterexampleKind::section, {{"q1", a}, {"q2", b}, {"p", p}}, o.measured, tol, i};
            return o;
        });
    });
    outcomes.insert(outcomes.end(), static_cast<std::size_t>(skipped), SampleOutcome{});
    return aggregate(outcomes, tol);
}

CheckBoxes CheckBoxes::defaults(const Frame& f, const SamplePlan& plan) { return uniform(f, plan.q_scale); }

CheckBoxes CheckBoxes::uniform(const Frame& f, double half_width) {
    const Vec zero(f.dim());
    return {DomainBox::cube(f.x0(), half_width), DomainBox::cube(zero, half_width), DomainBox::cube(zero, half_width),
            DomainBox::cube(zero, half_width)};
}

CrossValidation cross_validate(const Frame& f, const SamplePlan& plan, const CheckBoxes& boxes, double tol) {
    CrossValidation cv;
    cv.midpoint = check_midpoint(f, plan, boxes.x, boxes.p_offset, tol);
    cv.implication = check_implication(f, plan, boxes.q, boxes.p, tol);
    cv.inconclusive =
        cv.midpoint.status == Status::inconclusive || cv.implication.status == Status::inconclusive;
    cv.agree = !cv.inconclusive && cv.midpoint.status == cv.implication.status;
    return cv;
}

}  // namespace otreg
