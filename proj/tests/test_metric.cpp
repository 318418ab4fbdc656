#include <cmath>

#include "doctest.h"
#include "wolffkit/metric.hpp"
#include "wolffkit/random.hpp"

using namespace wolff;

namespace {

// cosh(2 rho) = 1 + 2 |z - w|^2 / ((1 - |z|^2)(1 - |w|^2)) on the disk.
double disk_oracle(Complex z, Complex w) {
    const double c = 1.0 + 2.0 * std::norm(z - w) / ((1.0 - std::norm(z)) * (1.0 - std::norm(w)));
    return 0.5 * std::acosh(c);
}

// cosh^2(k) = |1 - <z,w>|^2 / ((1 - |z|^2)(1 - |w|^2)) on the ball.
double ball_oracle(const CPoint& z, const CPoint& w) {
    const double nz = z.norm(), nw = w.norm();
    const double c2 = std::norm(1.0 - inner(z, w)) / ((1.0 - nz * nz) * (1.0 - nw * nw));
    return std::acosh(std::sqrt(c2));
}

}  // namespace

TEST_CASE("Poincare distance closed values") {
    CHECK(poincare(0.0, 0.5) == doctest::Approx(0.5 * std::log(3.0)));
    CHECK(poincare(0.5, 0.5) == 0.0);
    CHECK(poincare(0.5, 0.5 + 1e-12) == doctest::Approx(4.0 / 3.0 * 1e-12).epsilon(1e-6));
    CHECK(pseudo_hyperbolic(0.0, {0.0, 0.3}) == doctest::Approx(0.3));
}

TEST_CASE("Poincare distance agrees with the acosh form") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const Complex z = rng.in_disk(0.99), w = rng.in_disk(0.99);
        CHECK(poincare(z, w) == doctest::Approx(disk_oracle(z, w)).epsilon(1e-9));
    }
}

TEST_CASE("Mobius translation") {
    const CPoint z{0.5};
    CHECK(std::abs(mobius_translate(z, CPoint{0.8})[0] - 0.5) < 1e-15);
    CHECK(std::abs(mobius_translate(z, z)[0]) < 1e-15);
    const CPoint w{{0.1, -0.7}};
    CHECK(distance(mobius_translate_inverse(z, mobius_translate(z, w)), w) < 1e-15);
    // Boundary points stay on the circle.
    CHECK(std::abs(mobius_translate(z, CPoint{{0.0, 1.0}})[0]) == doctest::Approx(1.0));
}

TEST_CASE("Kobayashi distance of the polydisk is the max over coordinates") {
    const auto d = DomainSpec::polydisk(3);
    Rng rng(12);
    for (int i = 0; i < 300; ++i) {
        const CPoint z = rng.in_domain(d, 0.99), w = rng.in_domain(d, 0.99);
        double expect = 0.0;
        for (std::size_t j = 0; j < 3; ++j) expect = std::max(expect, disk_oracle(z[j], w[j]));
        CHECK(kobayashi(d, z, w) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("Kobayashi distance of the ball") {
    const auto d = DomainSpec::ball(2);
    CHECK(kobayashi(d, CPoint{0.0, 0.0}, CPoint{0.3, 0.4}) == doctest::Approx(std::atanh(0.5)));
    Rng rng(13);
    for (int i = 0; i < 300; ++i) {
        const CPoint z = rng.in_domain(d, 0.99), w = rng.in_domain(d, 0.99);
        CHECK(kobayashi(d, z, w) == doctest::Approx(ball_oracle(z, w)).epsilon(1e-9));
    }
}

TEST_CASE("Kobayashi distance near the boundary stays finite") {
    const auto d = DomainSpec::polydisk(2);
    const CPoint z{1.0 - 1e-12, 0.0};
    const double k = kobayashi(d, CPoint{0.0, 0.0}, z);
    CHECK(std::isfinite(k));
    CHECK(k == doctest::Approx(0.5 * std::log(2.0 / 1e-12)).epsilon(1e-3));
    CHECK(std::isinf(kobayashi_or_inf(d, CPoint{0.0, 0.0}, CPoint{1.0, 0.0})));
    CHECK_THROWS_AS(kobayashi(d, CPoint{0.0, 0.0}, CPoint{1.0, 0.0}), DomainError);
}

TEST_CASE("bounds bracket the distance") {
    for (const auto& d : {DomainSpec::polydisk(2), DomainSpec::ball(2)}) {
        Rng rng(14);
        for (int i = 0; i < 200; ++i) {
            const CPoint z = rng.in_domain(d, 0.95), w = rng.in_domain(d, 0.95);
            const double k = kobayashi(d, z, w);
            const auto b = bounds(d, z, w);
            CHECK(b.lower <= k + kTolBounds);
            CHECK(k <= b.upper + kTolBounds);
            CHECK(std::isfinite(b.upper));
            // Coordinate projections are extremal on the polydisk; on the ball the
            // slice is a round disc, so the upper bound is attained instead.
            if (d.is_product()) CHECK(b.lower == doctest::Approx(k).epsilon(1e-6));
            else CHECK(b.upper == doctest::Approx(k).epsilon(1e-6));
        }
    }
    const auto b = bounds(DomainSpec::polydisk(2), CPoint{0.0, 0.0}, CPoint{0.5, 0.0});
    CHECK(b.lower == doctest::Approx(std::atanh(0.5)).epsilon(1e-6));
    CHECK(b.upper == doctest::Approx(std::atanh(0.5)).epsilon(1e-6));
    const auto same = bounds(DomainSpec::ball(2), CPoint{0.1, 0.2}, CPoint{0.1, 0.2});
    CHECK(same.lower == 0.0);
    CHECK(same.upper == 0.0);
}

TEST_CASE("upper bound stays finite on thin polydisk slices") {
    // The slice of the line through these points is a thin lens: no single
    // disc of the line contains both points.
    const auto d = DomainSpec::polydisk(2);
    const CPoint z{0.9, {0.0, 0.9}}, w{{0.0, 0.9}, 0.9};
    const auto b = bounds(d, z, w);
    CHECK(std::isfinite(b.upper));
    CHECK(kobayashi(d, z, w) <= b.upper + kTolBounds);
}

TEST_CASE("Kobayashi balls") {
    const auto p = DomainSpec::polydisk(2);
    const CPoint o{0.0, 0.0};
    CHECK(kobayashi_ball_contains(p, o, std::atanh(0.5), CPoint{0.4, 0.4}));
    CHECK_FALSE(kobayashi_ball_contains(p, o, std::atanh(0.5), CPoint{0.6, 0.0}));
    const auto b = DomainSpec::ball(2);
    CHECK_FALSE(kobayashi_ball_contains(b, CPoint{0.0, 0.0}, std::atanh(0.5), CPoint{0.4, 0.4}));
}

TEST_CASE("convex-combination estimates hold on random tuples") {
    const auto d = DomainSpec::polydisk(2);
    Rng rng(15);
    std::vector<ConvexityTuple> samples;
    for (int i = 0; i < 500; ++i)
        samples.push_back({rng.in_domain(d, 0.99), rng.in_domain(d, 0.99), rng.in_domain(d, 0.99),
                           rng.in_domain(d, 0.99), rng.uniform(), rng.uniform()});
    const auto rep = convexity_estimates_check(d, samples);
    CHECK(rep.checked == samples.size());
    CHECK(rep.violations.empty());
    CHECK(rep.worst_excess <= 1e-9);
}
