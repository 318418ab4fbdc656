#include "wolffkit/random.hpp"

#include <cmath>
#include <numbers>

namespace wolff {

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t counter) noexcept {
    std::uint64_t z = root + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

double Rng::normal() {
    // Box-Muller; 1 - u keeps the log argument in (0,1].
    const double u = 1.0 - uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

Complex Rng::on_circle() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

Complex Rng::in_disk(double radius) {
    return std::polar(radius * std::sqrt(uniform()), 2.0 * std::numbers::pi * uniform());
}

CPoint Rng::in_domain(const DomainSpec& d, double max_gauge) {
    CPoint p(d.dim());
    if (d.kind() != DomainKind::UnitBall) {
        for (auto& c : p) c = in_disk(max_gauge);
        return p;
    }
    double r2 = 0.0;
    for (auto& c : p) {
        c = {normal(), normal()};
        r2 += std::norm(c);
    }
    const double radius = max_gauge * std::pow(uniform(), 1.0 / (2.0 * static_cast<double>(d.dim())));
    return p * (radius / std::sqrt(r2));
}

CPoint Rng::on_boundary(const DomainSpec& d) {
    if (d.kind() == DomainKind::UnitBall) {
        CPoint p = in_domain(d);
        return p / p.norm();
    }
    CPoint p = in_domain(d);
    p[index(d.dim())] = on_circle();
    return p;
}

}  // namespace wolff
