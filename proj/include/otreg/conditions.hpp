#pragma once

// Sampled checks of the preconditions A1 (injectivity of the partial
// gradient maps) and A2 (non-degenerate mixed Hessian).

#include <string>
#include <vector>

#include "otreg/cost.hpp"
#include "otreg/diff.hpp"
#include "otreg/sampling.hpp"
#include "otreg/verdict.hpp"

namespace otreg {

inline constexpr double kA2DetThreshold = 1e-8;
inline constexpr double kA1RelativeCollision = 1e-10;

struct InjectivityViolation {
    std::string map;  // "x -> c_y(x, anchor)" or "y -> c_x(anchor, y)"
    Vec first;
    Vec second;
    Vec image_gap;    // difference of the two images
    double distance = 0.0;  // |first - second|
};

struct A1A2Report {
    double a2_min_abs_det = 0.0;
    Vec a2_argmin_x;
    Vec a2_argmin_y;
    std::vector<InjectivityViolation> a1_injectivity_violations;  // first 100, sample order
    long a1_violation_count = 0;
    long points_checked = 0;
    long points_skipped = 0;
    Status status = Status::pass;
};

// min |det c_xy| over grid(box_x) x grid(box_y) plus plan.random_samples
// random pairs. Invalid pairs are skipped. FAIL below kA2DetThreshold.
A1A2Report check_a2(const CostFunction& c, const DomainBox& box_x, const DomainBox& box_y,
                    const SamplePlan& plan, const DiffConfig& cfg = {});

// Pairwise collision search for both gradient maps anchored at `anchor`,
// with points drawn from `box`: all grid pairs plus consecutive random pairs.
// A PASS means no violation was found, not that the maps are injective.
A1A2Report check_a1(const CostFunction& c, const DomainBox& box, const Vec& anchor,
                    const SamplePlan& plan, const DiffConfig& cfg = {});

}  // namespace otreg
