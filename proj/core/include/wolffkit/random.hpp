#pragma once

#include <cstdint>
#include <random>

#include "wolffkit/geometry.hpp"

namespace wolff {

/// Counter-based seed derivation: task `counter` of a run rooted at `root`
/// gets splitmix64(root + counter * golden_gamma).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t counter) noexcept;

/// Deterministic sampler. All conversions from raw 64-bit draws are done here
/// so that results do not depend on the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }
    /// Uniform on [0,1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n);
    double normal();

    Complex on_circle();
    /// Uniform in the closed disk of the given radius.
    Complex in_disk(double radius = 1.0);

    /// Uniform point of the domain scaled by `max_gauge` (< 1 keeps it interior).
    CPoint in_domain(const DomainSpec& d, double max_gauge = 1.0);
    /// Uniform point on the boundary of the ball, or of the polydisk (one random
    /// coordinate on the circle, the rest in the closed disk).
    CPoint on_boundary(const DomainSpec& d);

private:
    std::mt19937_64 engine_;
};

}  // namespace wolff
