#pragma once

// Deterministic sampling: seeded generators, boxes and sample plans.

#include <cstdint>
#include <vector>

#include "otreg/linalg.hpp"

namespace otreg {

// SplitMix64-based generator with a platform-independent output sequence
// (std:: distributions are implementation-defined, so we avoid them).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent stream for sample `index` of a run seeded with `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t index, std::uint64_t salt = 0);

    std::uint64_t next_u64() noexcept;
    double uniform() noexcept;  // [0, 1)
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    double normal() noexcept;
    Vec unit_vector(int n) noexcept;

private:
    std::uint64_t state_;
};

struct DomainBox {
    Vec lower;
    Vec upper;

    // Throws ConfigError unless lower < upper componentwise (same dimension).
    void validate() const;
    int dim() const noexcept { return lower.size(); }
    bool contains(const Vec& v) const noexcept;
    Vec center() const { return (lower + upper) * 0.5; }
    Vec uniform(Rng& rng) const;
    // Point `index` of the tensor grid with k points per axis (endpoints included).
    Vec grid_point(int k, long index) const;
    long grid_size(int k) const;

    static DomainBox cube(const Vec& center, double half_width);
};

struct SamplePlan {
    std::uint64_t seed = 42;
    int grid_per_axis = 7;
    int random_samples = 500;
    double eta_scale = 0.1;
    double q_scale = 0.5;

    // Throws ConfigError on grid_per_axis < 2, non-positive scales, negative counts.
    void validate() const;
};

// `f(i)` for i in [0, count) over worker threads; results in index order.
template <typename T, typename F>
std::vector<T> parallel_map(long count, F&& f);

}  // namespace otreg

#include "otreg/detail/parallel.hpp"
