#include "otreg/conditions.hpp"

#include <limits>

namespace otreg {

namespace {

constexpr std::size_t kMaxStoredViolations = 100;

Status status_from(long checked, long skipped, bool failed) {
    const long total = checked + skipped;
    if (total == 0 || static_cast<double>(skipped) > kMaxSkippedFraction * static_cast<double>(total)) {
        return Status::inconclusive;
    }
    return failed ? Status::fail : Status::pass;
}

std::vector<Vec> sample_points(const DomainBox& box, const SamplePlan& plan, std::uint64_t salt) {
    std::vector<Vec> pts;
    const long g = box.grid_size(plan.grid_per_axis);
    for (long i = 0; i < g; ++i) pts.push_back(box.grid_point(plan.grid_per_axis, i));
    for (int i = 0; i < plan.random_samples; ++i) {
        Rng rng = Rng::stream(plan.seed, static_cast<std::uint64_t>(i), salt);
        pts.push_back(box.uniform(rng));
    }
    return pts;
}

}  // namespace

A1A2Report check_a2(const CostFunction& c, const DomainBox& box_x, const DomainBox& box_y,
                    const SamplePlan& plan, const DiffConfig& cfg) {
    plan.validate();
    box_x.validate();
    box_y.validate();
    const int k = plan.grid_per_axis;
    const long gx = box_x.grid_size(k), gy = box_y.grid_size(k);
    const long n_grid = gx * gy;
    const long total = n_grid + plan.random_samples;

    struct Sample {
        bool ok = false;
        double det = 0.0;
        Vec x, y;
    };
    const auto samples = parallel_map<Sample>(total, [&](long i) {
        Sample s;
        if (i < n_grid) {
            s.x = box_x.grid_point(k, i % gx);
            s.y = box_y.grid_point(k, i / gx);
        } else {
            Rng rng = Rng::stream(plan.seed, static_cast<std::uint64_t>(i - n_grid), 0xA2);
            s.x = box_x.uniform(rng);
            s.y = box_y.uniform(rng);
        }
        if (!c.valid(s.x, s.y)) return s;
        s.det = std::abs(hess_mixed(c, s.x, s.y, cfg).det());
        s.ok = true;
        return s;
    });

    A1A2Report r;
    r.a2_min_abs_det = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        if (!s.ok) {
            ++r.points_skipped;
            continue;
        }
        ++r.points_checked;
        if (s.det < r.a2_min_abs_det) {
            r.a2_min_abs_det = s.det;
            r.a2_argmin_x = s.x;
            r.a2_argmin_y = s.y;
        }
    }
    if (r.points_checked == 0) r.a2_min_abs_det = 0.0;
    r.status = status_from(r.points_checked, r.points_skipped, r.a2_min_abs_det < kA2DetThreshold);
    return r;
}

A1A2Report check_a1(const CostFunction& c, const DomainBox& box, const Vec& anchor,
                    const SamplePlan& plan, const DiffConfig& cfg) {
    plan.validate();
    box.validate();
    require_dim(anchor, box.dim(), "check_a1 anchor");
    const std::vector<Vec> pts = sample_points(box, plan, 0xA1);
    const long n_grid = box.grid_size(plan.grid_per_axis);

    // Images under both maps; nullopt when the point is invalid.
    struct Images {
        bool x_ok = false, y_ok = false;
        Vec x_img, y_img;
    };
    const auto images = parallel_map<Images>(static_cast<long>(pts.size()), [&](long i) {
        Images im;
        const Vec& v = pts[static_cast<std::size_t>(i)];
        if (c.valid(v, anchor)) {
            im.x_img = cost_grad_y(c, v, anchor, cfg);
            im.x_ok = true;
        }
        if (c.valid(anchor, v)) {
            im.y_img = cost_grad_x(c, anchor, v, cfg);
            im.y_ok = true;
        }
        return im;
    });

    A1A2Report r;
    r.a2_min_abs_det = std::numeric_limits<double>::quiet_NaN();
    for (const auto& im : images) {
        r.points_checked += (im.x_ok ? 1 : 0) + (im.y_ok ? 1 : 0);
        r.points_skipped += (im.x_ok ? 0 : 1) + (im.y_ok ? 0 : 1);
    }

    auto test_pair = [&](std::size_t a, std::size_t b) {
        const double dist = distance(pts[a], pts[b]);
        if (dist == 0.0) return;
        const Images& A = images[a];
        const Images& B = images[b];
        auto record = [&](const char* map, const Vec& gap) {
            ++r.a1_violation_count;
            if (r.a1_injectivity_violations.size() < kMaxStoredViolations) {
                r.a1_injectivity_violations.push_back({map, pts[a], pts[b], gap, dist});
            }
        };
        if (A.x_ok && B.x_ok) {
            const Vec gap = A.x_img - B.x_img;
            if (gap.norm() < kA1RelativeCollision * dist) record("x -> c_y(x, anchor)", gap);
        }
        if (A.y_ok && B.y_ok) {
            const Vec gap = A.y_img - B.y_img;
            if (gap.norm() < kA1RelativeCollision * dist) record("y -> c_x(anchor, y)", gap);
        }
    };
    for (std::size_t a = 0; a < static_cast<std::size_t>(n_grid); ++a)
        for (std::size_t b = a + 1; b < static_cast<std::size_t>(n_grid); ++b) test_pair(a, b);
    for (std::size_t a = static_cast<std::size_t>(n_grid); a + 1 < pts.size(); a += 2) test_pair(a, a + 1);

    r.status = status_from(r.points_checked, r.points_skipped, r.a1_violation_count > 0);
    return r;
}

}  // namespace otreg
