#include <cmath>

#include "doctest.h"
#include "wolffkit/boundary_set.hpp"
#include "wolffkit/geometry.hpp"
#include "wolffkit/random.hpp"

using namespace wolff;

TEST_CASE("gauge is the max modulus on the polydisk and the norm on the ball") {
    const CPoint p{0.3, {0.0, -0.8}};
    CHECK(gauge(DomainSpec::polydisk(2), p) == doctest::Approx(0.8));
    CHECK(gauge(DomainSpec::ball(2), p) == doctest::Approx(std::sqrt(0.09 + 0.64)));
    CHECK(gauge(DomainSpec::disk(), CPoint{{0.6, 0.8}}) == doctest::Approx(1.0));
}

TEST_CASE("classify splits interior, boundary and exterior") {
    const auto d = DomainSpec::polydisk(2);
    CHECK(classify(d, CPoint{0.5, 0.5}).region == Region::Interior);
    CHECK(classify(d, CPoint{1.0, 0.5}).region == Region::Boundary);
    CHECK(classify(d, CPoint{1.0 + 1e-12, 0.0}).region == Region::Boundary);
    CHECK(classify(d, CPoint{1.1, 0.0}).region == Region::Exterior);
    CHECK(classify(d, CPoint{1.1, 0.0}).margin == doctest::Approx(0.1));
    CHECK_THROWS_AS(require_interior(d, CPoint{1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(gauge(d, CPoint{0.0}), DimensionMismatch);
}

TEST_CASE("normalize_boundary rescales near-boundary points only") {
    const auto b = DomainSpec::ball(2);
    const CPoint x = normalize_boundary(b, CPoint{0.6 * (1 + 1e-10), 0.8});
    CHECK(gauge(b, x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(normalize_boundary(b, CPoint{0.3, 0.4}), DomainError);
}

TEST_CASE("segment_point interpolates") {
    const CPoint x{1.0, 0.0}, y{0.0, 1.0};
    CHECK(segment_point(x, y, 1.0) == x);
    CHECK(segment_point(x, y, 0.0) == y);
    const CPoint m = segment_point(x, y, 0.25);
    CHECK(m[0].real() == doctest::Approx(0.25));
    CHECK(m[1].real() == doctest::Approx(0.75));
}

TEST_CASE("open segments in the boundary") {
    const auto p = DomainSpec::polydisk(2);
    // Shared unimodular coordinate: the segment stays in the face {z1 = 1}.
    CHECK(open_segment_in_boundary(p, CPoint{1.0, 0.5}, CPoint{1.0, -1.0}));
    // Opposite corners: the midpoint is the origin.
    CHECK_FALSE(open_segment_in_boundary(p, CPoint{1.0, 1.0}, CPoint{-1.0, -1.0}));
    // Different faces: the midpoint has gauge 3/4.
    CHECK_FALSE(open_segment_in_boundary(p, CPoint{1.0, 0.5}, CPoint{0.5, 1.0}));
    const auto b = DomainSpec::ball(2);
    CHECK_FALSE(open_segment_in_boundary(b, CPoint{1.0, 0.0}, CPoint{0.0, 1.0}));
}

TEST_CASE("unimodular coordinates") {
    const auto u = unimodular_coordinates(CPoint{1.0, 0.2, {0.0, -1.0}});
    REQUIRE(u.size() == 2);
    CHECK(u[0] == 0);
    CHECK(u[1] == 2);
}

TEST_CASE("sampler stays in the requested region and is reproducible") {
    const auto p = DomainSpec::polydisk(3);
    Rng a(7), b(7);
    for (int i = 0; i < 200; ++i) {
        const CPoint x = a.in_domain(p, 0.9);
        CHECK(gauge(p, x) <= 0.9);
        CHECK(x == b.in_domain(p, 0.9));
        CHECK(classify(p, a.on_boundary(p)).region == Region::Boundary);
        b.on_boundary(p);
    }
    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
}

namespace {

// Brute-force distance to {eta : eta_j = v} on a polar grid of the other disk.
double grid_distance_pinned(const CPoint& p, std::size_t j, Complex v) {
    double best = 1e300;
    const std::size_t other = 1 - j;
    for (int r = 0; r <= 200; ++r) {
        for (int t = 0; t < 720; ++t) {
            const Complex w = std::polar(r / 200.0, t * 2.0 * M_PI / 720.0);
            CPoint q(2);
            q[j] = v;
            q[other] = w;
            best = std::min(best, distance(p, q));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("distance to a pinned slab matches a grid search") {
    const auto slab = pinned_slab(2, 0, 1.0);
    const CPoint p{0.8, 0.2};
    CHECK(distance_to_descr(slab, p) == doctest::Approx(0.2));
    for (const CPoint& q : {CPoint{0.8, 0.2}, CPoint{{0.1, 0.5}, 1.4}, CPoint{-0.3, {0.0, 0.9}}})
        CHECK(distance_to_descr(slab, q) == doctest::Approx(grid_distance_pinned(q, 0, 1.0)).epsilon(1e-3));
}

TEST_CASE("distance to circle slabs, unions and points") {
    CHECK(distance_to_descr(circle_slab(2, 1), CPoint{0.0, 0.25}) == doctest::Approx(0.75));
    CHECK(distance_to_descr(circle_slab(2, 1), CPoint{3.0, 0.0}) == doctest::Approx(std::sqrt(4.0 + 1.0)));
    const BoundarySetDescr u = descr::Union{{pinned_slab(2, 0, 1.0), pinned_slab(2, 1, 1.0)}};
    CHECK(distance_to_descr(u, CPoint{0.5, 0.9}) == doctest::Approx(0.1));
    CHECK(distance_to_descr(descr::Point{CPoint{1.0, 0.0}}, CPoint{0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(distance_to_descr(descr::FullBoundary{DomainSpec::polydisk(2)}, CPoint{0.5, 0.2}) == doctest::Approx(0.5));
    CHECK(distance_to_descr(descr::FullBoundary{DomainSpec::ball(2)}, CPoint{0.3, 0.4}) == doctest::Approx(0.5));
}

TEST_CASE("intersection of slabs reduces to a product") {
    const BoundarySetDescr both = descr::Intersection{{pinned_slab(2, 0, 1.0), pinned_slab(2, 1, -1.0)}};
    CHECK(distance_to_descr(both, CPoint{1.0, -1.0}) == doctest::Approx(0.0));
    CHECK(distance_to_descr(both, CPoint{0.0, 0.0}) == doctest::Approx(std::sqrt(2.0)));
    const BoundarySetDescr none = descr::Intersection{{pinned_slab(2, 0, 1.0), pinned_slab(2, 0, -1.0)}};
    CHECK(std::isinf(distance_to_descr(none, CPoint{0.0, 0.0})));
}

TEST_CASE("sampled members lie in the set") {
    Rng rng(3);
    const BoundarySetDescr u = descr::Union{{pinned_slab(2, 0, 1.0), circle_slab(2, 1)}};
    for (int i = 0; i < 100; ++i) CHECK(distance_to_descr(u, sample_member(u, rng)) < 1e-12);
}

TEST_CASE("ch and Ch of polydisk and ball boundary points") {
    const auto p = DomainSpec::polydisk(2);
    const auto ch = ch_set(p, CPoint{1.0, 0.5});
    CHECK(distance_to_descr(ch, CPoint{1.0, -1.0}) < 1e-12);
    CHECK(distance_to_descr(ch, CPoint{1.0, 0.0}) < 1e-12);
    CHECK(distance_to_descr(ch, CPoint{-1.0, 0.5}) == doctest::Approx(2.0));
    const auto Ch = Ch_set(p, CPoint{1.0, 0.5});
    CHECK(distance_to_descr(Ch, CPoint{1.0, {0.0, 1.0}}) < 1e-12);
    CHECK(distance_to_descr(Ch, CPoint{0.0, 1.0}) == doctest::Approx(1.0));
    const auto b = DomainSpec::ball(2);
    CHECK(distance_to_descr(ch_set(b, CPoint{0.6, 0.8}), CPoint{0.6, 0.8}) < 1e-12);
    CHECK(distance_to_descr(Ch_set(b, CPoint{0.6, 0.8}), CPoint{0.8, 0.6}) > 0.1);
    CHECK_THROWS_AS(ch_set(p, CPoint{0.5, 0.5}), DomainError);
}
