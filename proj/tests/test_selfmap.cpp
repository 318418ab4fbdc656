#include <cmath>

#include "doctest.h"
#include "wolffkit/selfmap.hpp"

using namespace wolff;

namespace {

const DomainSpec P2 = DomainSpec::polydisk(2);

double mobius_half(double x) { return (x + 0.5) / (1.0 + 0.5 * x); }

}  // namespace

TEST_CASE("parse and evaluate") {
    const auto phi = parse_map("mobius(0.5)(z1)", DomainSpec::disk());
    CHECK(phi(CPoint{0.0})[0].real() == doctest::Approx(0.5));
    CHECK(SelfMapExpr::compose({phi, phi})(CPoint{0.0})[0].real() == doctest::Approx(0.8));

    const auto m = parse_map("(mobius(0.5)(z1), 0.5*z2)", P2);
    const CPoint y = m(CPoint{0.2, {0.0, 0.4}});
    CHECK(y[0].real() == doctest::Approx(mobius_half(0.2)));
    CHECK(y[1].imag() == doctest::Approx(0.2));
    CHECK(m.text() == "(mobius(0.5)(z1), 0.5*z2)");
}

TEST_CASE("arithmetic, complex literals and conjugation") {
    const auto m = parse_map("((z1 + z2) / 2, conj(z2) * (0.5 - 0.5i))", P2);
    const CPoint z{0.4, {0.2, 0.6}};
    const CPoint y = m(z);
    CHECK(std::abs(y[0] - (z[0] + z[1]) / 2.0) < 1e-15);
    CHECK(std::abs(y[1] - std::conj(z[1]) * Complex(0.5, -0.5)) < 1e-15);
    const auto i = SelfMapExpr::parse_unchecked("2i * z1", DomainSpec::disk());
    CHECK(std::abs(i(CPoint{0.25})[0] - Complex(0.0, 0.5)) < 1e-15);
    const auto neg = parse_map("(-z1 * z2, z2)", P2);
    CHECK(neg(CPoint{0.5, 0.5})[0].real() == doctest::Approx(-0.25));
}

TEST_CASE("scale maps") {
    const auto id = SelfMapExpr::identity(P2);
    const auto s = SelfMapExpr::scale(0.5, CPoint{0.0, 0.0}, id);
    const CPoint y = s(CPoint{0.8, 0.8});
    CHECK(y[0].real() == doctest::Approx(0.4));
    CHECK(y[1].real() == doctest::Approx(0.4));
    const auto t = parse_map("scale(0.5, (0, 0))((z1, z2))", P2);
    CHECK(t(CPoint{0.8, 0.8}) == y);
}

TEST_CASE("componentwise Mobius maps and slices") {
    const auto m = SelfMapExpr::componentwise_mobius(P2, {0.5, 0.0}, {1.0, -1.0});
    const CPoint y = m(CPoint{0.0, 0.3});
    CHECK(y[0].real() == doctest::Approx(0.5));
    CHECK(y[1].real() == doctest::Approx(-0.3));
    const auto f = parse_map("(mobius(0.5)(z1) * (1 + z2) / 2, z2)", P2);
    const auto slice = f.slice(0, CPoint{0.0, 0.2});
    CHECK(slice.domain() == DomainSpec::disk());
    CHECK(slice(CPoint{0.1})[0].real() == doctest::Approx(mobius_half(0.1) * 0.6));
}

TEST_CASE("parse errors report a position") {
    try {
        SelfMapExpr::parse_unchecked("(z1, 2*)", P2);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 7);
    }
    CHECK_THROWS_AS(SelfMapExpr::parse_unchecked("z3", P2), Error);
    CHECK_THROWS_AS(SelfMapExpr::parse_unchecked("(z1, z2, z1)", P2), Error);
    CHECK_THROWS_AS(SelfMapExpr::parse_unchecked("mobius(0.5)", DomainSpec::disk()), ParseError);
    CHECK_THROWS_AS(SelfMapExpr::parse_unchecked("", DomainSpec::disk()), ParseError);
}

TEST_CASE("validation rejects maps that leave the domain") {
    CHECK_THROWS_AS(parse_map("(z1, 2*z2)", P2), ValidationError);
    CHECK_THROWS_AS(parse_map("z1 + 0.1", DomainSpec::disk()), ValidationError);
    CHECK_THROWS_AS(parse_map("(z1, z2)", DomainSpec::ball(2)).evaluate(CPoint{0.0}), DimensionMismatch);
    CHECK_NOTHROW(parse_map("(z1, z2)", DomainSpec::ball(2)));
    CHECK_NOTHROW(parse_map("(mobius(0.5)(z1), z1 * z2)", P2));
}
