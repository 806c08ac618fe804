#pragma once

// The two sampled characterizations of A3w and their cross-validation.
//
//   midpoint:     for xi . eta = 0,
//                 [c_ij(x, Y(x, p+eta)) - 2 c_ij(x, Y(x, p)) + c_ij(x, Y(x, p-eta))] xi_i xi_j <= 0
//   implication:  q . p >= 0  =>  cbar(q, p) <= 0   (normalized frame coordinates)
//
// A PASS verdict means no violation was found at the sampled resolution.

#include "otreg/frame.hpp"
#include "otreg/sampling.hpp"
#include "otreg/verdict.hpp"

namespace otreg {

// Throws OrthogonalityError unless |xi| = 1 and |xi . eta| <= 1e-12;
// NoConvergence when one of the three Y(x, .) inversions fails.
double midpoint_defect(const Frame& f, const Vec& x, const Vec& p, const Vec& xi, const Vec& eta);

// Samples x in box_x and offsets d in box_p with p = chat_x(x, 0) - d, so that
// d = 0 targets the base point for every x. Grid part: x-lattice times
// d-lattice; then plan.random_samples random draws. xi are random unit
// vectors; eta has length plan.eta_scale and is orthogonal to xi.
Verdict check_midpoint(const Frame& f, const SamplePlan& plan, const DomainBox& box_x, const DomainBox& box_p,
                       double tol = kDefaultDefectTol);

// cbar(q, p). Throws DomainError when q . p < 0 beyond rounding.
double implication_defect(const Frame& f, const Vec& q, const Vec& p);

// Samples (q, p) with q . p >= 0: lattice pairs, rejection-sampled random
// pairs, and plan.random_samples constructed orthogonal pairs (q . p = 0).
Verdict check_implication(const Frame& f, const SamplePlan& plan, const DomainBox& box_q, const DomainBox& box_p,
                          double tol = kDefaultDefectTol);

// Midpoint convexity of the section {q : cbar(q, p(y)) > 0} inside box
// (q coordinates). Flags pairs in the section whose midpoint is outside it
// by more than tol. Diagnostic only.
Verdict section_convexity_probe(const Frame& f, const Vec& y, const SamplePlan& plan, const DomainBox& box,
                                double tol = kDefaultDefectTol);

struct CheckBoxes {
    DomainBox x;         // midpoint: base points, original coordinates
    DomainBox p_offset;  // midpoint: offsets from the base gradient
    DomainBox q;         // implication: q coordinates
    DomainBox p;         // implication: p coordinates

    // Cubes of half-width plan.q_scale around x0 and 0.
    static CheckBoxes defaults(const Frame& f, const SamplePlan& plan);
    static CheckBoxes uniform(const Frame& f, double half_width);
};

struct CrossValidation {
    Verdict midpoint;
    Verdict implication;
    bool inconclusive = false;
    bool agree = false;  // meaningful only when !inconclusive
};

CrossValidation cross_validate(const Frame& f, const SamplePlan& plan, const CheckBoxes& boxes,
                               double tol = kDefaultDefectTol);

}  // namespace otreg
