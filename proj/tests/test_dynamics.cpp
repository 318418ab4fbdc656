#include <cmath>

#include "doctest.h"
#include "wolffkit/dynamics.hpp"
#include "wolffkit/metric.hpp"
#include "wolffkit/random.hpp"

using namespace wolff;

namespace {

const DomainSpec D1 = DomainSpec::disk();
const DomainSpec P2 = DomainSpec::polydisk(2);

}  // namespace

TEST_CASE("orbit of a hyperbolic disk automorphism") {
    const auto phi = parse_map("mobius(0.5)(z1)", D1);
    const auto o = iterate(phi, CPoint{0.0}, 100);
    CHECK(o.stop == OrbitStop::Escaped);
    REQUIRE(o.points.size() > 10);
    for (std::size_t k = 0; k < 10; ++k) {
        CHECK(o.points[k][0].real() == doctest::Approx(std::tanh(k * std::atanh(0.5))).epsilon(1e-12));
        CHECK(o.k_from_pole[k] == doctest::Approx(k * std::atanh(0.5)).epsilon(1e-9));
    }
    for (const auto& p : o.points) CHECK(gauge(D1, p) < 1.0);
    CHECK(classify_orbit(o, D1).verdict == OrbitVerdict::CompactlyDivergent);
}

TEST_CASE("orbit verdicts") {
    const auto s = SelfMapExpr::scale(0.5, CPoint{0.0, 0.0}, SelfMapExpr::identity(P2));
    const auto os = iterate(s, CPoint{0.8, 0.8}, 1000);
    CHECK(os.stop == OrbitStop::Converged);
    const auto cs = classify_orbit(os, P2);
    CHECK(cs.verdict == OrbitVerdict::InteriorConvergent);
    REQUIRE(cs.estimate);
    CHECK(cs.estimate->norm() < 1e-9);

    const auto swap = parse_map("(z2, z1)", P2);
    const auto ow = iterate(swap, CPoint{0.3, -0.2}, 1000);
    CHECK(ow.stop == OrbitStop::Budget);
    CHECK(ow.points.size() == 1001);
    CHECK(classify_orbit(ow, P2).verdict == OrbitVerdict::Undetermined);

    const auto half = parse_map("(mobius(0.5)(z1), 0.5*z2)", P2);
    CHECK(classify_orbit(iterate(half, CPoint{0.1, 0.9}, 10000), P2).verdict == OrbitVerdict::CompactlyDivergent);
    CHECK(to_string(OrbitVerdict::CompactlyDivergent) == "CompactlyDivergent");
}

TEST_CASE("iterate honours a lower escape threshold and a custom pole") {
    const auto phi = parse_map("mobius(0.5)(z1)", D1);
    IterateOptions opts;
    opts.escape_threshold = 3.0;
    opts.pole = CPoint{0.5};
    const auto o = iterate(phi, CPoint{0.5}, 100, opts);
    CHECK(o.stop == OrbitStop::Escaped);
    CHECK(o.k_from_pole.front() == 0.0);
    REQUIRE(o.k_from_pole.size() >= 2);
    CHECK(o.k_from_pole.back() > 3.0);
    CHECK(o.k_from_pole[o.k_from_pole.size() - 2] <= 3.0);
}

TEST_CASE("damped fixed points") {
    const auto phi = parse_map("mobius(0.5)(z1)", D1);
    // (1 - s)(x + 1/2) = x (1 + x/2), i.e. x^2/2 + s x - (1 - s)/2 = 0, with s = 1/100.
    const double s = 0.01;
    const double root = -s + std::sqrt(s * s + (1.0 - s));
    const CPoint x = approx_fixed_point(phi, s, CPoint{0.0});
    CHECK(x[0].real() == doctest::Approx(root).epsilon(1e-9));

    const auto id = SelfMapExpr::identity(P2);
    CHECK(approx_fixed_point(id, 0.5, CPoint{0.7, -0.4}).norm() < 1e-9);
    const auto swap = parse_map("(z2, z1)", P2);
    CHECK(approx_fixed_point(swap, 0.5, CPoint{0.7, -0.4}).norm() < 1e-9);

    FixedPointOptions tiny;
    tiny.max_iterations = 3;
    CHECK_THROWS_AS(approx_fixed_point(phi, 1e-6, CPoint{0.0}, tiny), ConvergenceError);
}

TEST_CASE("Wolff points of corpus maps") {
    struct Case {
        DomainSpec d;
        const char* text;
        CPoint expect;
    };
    const Case cases[] = {
        {D1, "mobius(0.5)(z1)", CPoint{1.0}},
        {P2, "(mobius(0.5)(z1), 0.5*z2)", CPoint{1.0, 0.0}},
        {P2, "(mobius(0.5)(z1), mobius(0.5)(z2))", CPoint{1.0, 1.0}},
        {P2, "(mobius(0.5)(z1), z2)", CPoint{1.0, 0.0}},
        {DomainSpec::ball(2), "(mobius(0.5)(z1), 0.4330127018922193*z2/(1+0.5*z1))", CPoint{1.0, 0.0}},
    };
    for (const auto& c : cases) {
        CAPTURE(c.text);
        const auto m = parse_map(c.text, c.d);
        const auto w = wolff_point(m, default_probe_grid(c.d));
        CHECK(distance(w.point, c.expect) <= 1e-5);
        CHECK(classify(c.d, w.point).region == Region::Boundary);
        CHECK(w.last_increment <= 1e-6);
        CHECK(w.trace.size() == default_wolff_schedule().size());
    }
}

TEST_CASE("Wolff point needs a compactly divergent map") {
    const auto s = SelfMapExpr::scale(0.5, CPoint{0.0, 0.0}, SelfMapExpr::identity(P2));
    CHECK_THROWS_AS(wolff_point(s, default_probe_grid(P2)), DomainError);
}

TEST_CASE("horocycles of a hyperbolic automorphism are mapped into themselves") {
    const auto phi = parse_map("mobius(0.5)(z1)", D1);
    Rng rng(31);
    std::vector<CPoint> samples;
    for (int i = 0; i < 300; ++i) samples.push_back(CPoint{rng.in_disk(0.99)});
    for (double R : {0.5, 1.0, 2.0}) {
        const auto h = HorosphereSpec::make(D1, CPoint{0.0}, CPoint{1.0}, R, HoroKind::Small);
        const auto rep = check_invariance(phi, h, samples, 50);
        CHECK(rep.checked > 0);
        CHECK(rep.violations.empty());
        CHECK(rep.worst_margin < 0.0);
    }
    // The orbit moves toward the Wolff point, so horocycles at -1 are left.
    const auto away = HorosphereSpec::make(D1, CPoint{0.0}, CPoint{-1.0}, 1.0, HoroKind::Small);
    CHECK_FALSE(check_invariance(phi, away, samples, 50).violations.empty());
}

TEST_CASE("identity leaves every horosphere invariant") {
    const auto id = SelfMapExpr::identity(P2);
    Rng rng(32);
    std::vector<CPoint> samples;
    for (int i = 0; i < 300; ++i) samples.push_back(rng.in_domain(P2, 0.99));
    const auto h = HorosphereSpec::make(P2, CPoint{0.0, 0.0}, CPoint{1.0, 1.0}, 1.0, HoroKind::Small);
    const auto rep = check_invariance(id, h, samples, 5);
    CHECK(rep.checked > 0);
    CHECK(rep.escaped == 0);
    CHECK(rep.violations.empty());
}

TEST_CASE("target sets and predicted supersets") {
    const auto m = parse_map("(mobius(0.5)(z1), 0.5*z2)", P2);
    const auto w = wolff_point(m, default_probe_grid(P2));
    const auto pred = predicted_superset(P2, w);
    REQUIRE(pred.is<descr::Union>());
    CHECK(distance_to_descr(pred, CPoint{1.0, 0.3}) < 1e-12);
    CHECK(distance_to_descr(pred, CPoint{0.3, -1.0}) < 1e-12);
    CHECK(distance_to_descr(pred, CPoint{-1.0, 0.0}) == doctest::Approx(1.0));

    Rng rng(33);
    std::vector<CPoint> starts;
    for (int i = 0; i < 8; ++i) starts.push_back(rng.in_domain(P2, 0.9));
    const auto t = target_set_estimate(m, starts, pred);
    CHECK(t.tail_points > 0);
    CHECK(t.max_distance <= 1e-3);
    REQUIRE(t.clusters.size() == 1);
    CHECK(distance(t.clusters[0].representative, CPoint{1.0, 0.0}) < 1e-3);
    CHECK_THROWS(target_set_estimate(m, {}, pred));

    const auto b = DomainSpec::ball(2);
    const auto mb = parse_map("(mobius(0.5)(z1), 0.4330127018922193*z2/(1+0.5*z1))", b);
    const auto pb = predicted_superset(b, wolff_point(mb, default_probe_grid(b)));
    REQUIRE(pb.is<descr::Point>());
    CHECK(distance(pb.as<descr::Point>().x, CPoint{1.0, 0.0}) < 1e-5);
}
