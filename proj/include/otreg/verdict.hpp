#pragma once

#include <string>
#include <utility>
#include <vector>

#include "otreg/linalg.hpp"

namespace otreg {

enum class Status { pass, fail, inconclusive };

std::string to_string(Status s);

// Verdicts over regions where more than this fraction of samples could not
// be evaluated are INCONCLUSIVE.
inline constexpr double kMaxSkippedFraction = 0.2;

// Threshold separating finite-difference noise from A3w violations.
inline constexpr double kDefaultDefectTol = 1e-5;

enum class CounterexampleKind { midpoint, implication, section };

std::string to_string(CounterexampleKind k);

struct Counterexample {
    CounterexampleKind kind = CounterexampleKind::midpoint;
    // Named coordinates in evaluation order: (x, p, xi, eta) for midpoint,
    // (q, p) for implication, (q1, q2, p) for section.
    std::vector<std::pair<std::string, Vec>> coordinates;
    double measured = 0.0;
    double tolerance = 0.0;
    long sample_index = 0;

    const Vec& coordinate(const std::string& name) const;
};

struct Verdict {
    Status status = Status::pass;
    std::vector<Counterexample> counterexamples;  // worst first, capped
    long violations = 0;                         // total, before capping
    long points_checked = 0;
    long points_skipped = 0;
    double max_measured = 0.0;  // largest defect over evaluated samples
    double tolerance = kDefaultDefectTol;

    double skipped_fraction() const noexcept;
};

inline constexpr std::size_t kMaxStoredCounterexamples = 25;

// Builds the verdict from per-sample outcomes listed in sample order.
struct SampleOutcome {
    bool evaluated = false;
    double measured = 0.0;
    Counterexample example;  // filled when evaluated
};

Verdict aggregate(const std::vector<SampleOutcome>& outcomes, double tolerance);

}  // namespace otreg
