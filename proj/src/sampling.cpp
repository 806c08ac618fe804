#include "otreg/sampling.hpp"

#include <numbers>

namespace otreg {

Rng Rng::stream(std::uint64_t seed, std::uint64_t index, std::uint64_t salt) {
    Rng mix(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)) ^ (0xD1B54A32D192ED03ULL * (salt + 1)));
    return Rng(mix.next_u64());
}

std::uint64_t Rng::next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() noexcept {
    // Box-Muller; u1 in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec Rng::unit_vector(int n) noexcept {
    Vec v(n);
    double r = 0.0;
    while (r < 1e-8) {
        for (int i = 0; i < n; ++i) v[i] = normal();
        r = v.norm();
    }
    return v / r;
}

void DomainBox::validate() const {
    if (lower.size() != upper.size() || lower.size() == 0) {
        throw ConfigError("box: lower/upper dimension mismatch");
    }
    for (int i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i])) {
            throw ConfigError("box: lower must be < upper on every axis (axis " + std::to_string(i) + ")");
        }
    }
}

bool DomainBox::contains(const Vec& v) const noexcept {
    for (int i = 0; i < v.size(); ++i)
        if (v[i] < lower[i] || v[i] > upper[i]) return false;
    return true;
}

Vec DomainBox::uniform(Rng& rng) const {
    Vec v(dim());
    for (int i = 0; i < dim(); ++i) v[i] = rng.uniform(lower[i], upper[i]);
    return v;
}

long DomainBox::grid_size(int k) const {
    long s = 1;
    for (int i = 0; i < dim(); ++i) s *= k;
    return s;
}

Vec DomainBox::grid_point(int k, long index) const {
    Vec v(dim());
    for (int i = 0; i < dim(); ++i) {
        const long j = index % k;
        index /= k;
        const double t = static_cast<double>(j) / static_cast<double>(k - 1);
        v[i] = lower[i] + t * (upper[i] - lower[i]);
    }
    return v;
}

DomainBox DomainBox::cube(const Vec& center, double half_width) {
    return {center - Vec(center.size(), half_width), center + Vec(center.size(), half_width)};
}

void SamplePlan::validate() const {
    if (grid_per_axis < 2) throw ConfigError("plan: grid_per_axis must be >= 2");
    if (random_samples < 0) throw ConfigError("plan: random_samples must be >= 0");
    if (!(eta_scale > 0.0)) throw ConfigError("plan: eta_scale must be > 0");
    if (!(q_scale > 0.0)) throw ConfigError("plan: q_scale must be > 0");
}

}  // namespace otreg
