#include "doctest.h"
#include "wolffkit/herve.hpp"

using namespace wolff;

namespace {

const DomainSpec P2 = DomainSpec::polydisk(2);

}  // namespace

TEST_CASE("one-variable slices") {
    const auto hyp = parse_map("mobius(0.5)(z1)", DomainSpec::disk());
    const auto e = classify_slice(hyp, 0.0);
    CHECK(e.fix == SliceFix::Empty);
    CHECK(std::abs(e.limit - 1.0) < 1e-5);

    const auto contr = parse_map("0.5*z1 + 0.25", DomainSpec::disk());
    const auto i = classify_slice(contr, 0.0);
    CHECK(i.fix == SliceFix::Interior);
    CHECK(std::abs(i.limit - 0.5) < 1e-5);
    CHECK(to_string(SliceFix::Interior) == "interior");
}

TEST_CASE("an identity coordinate gives case 0") {
    const auto r = herve_classify(parse_map("(mobius(0.5)(z1), z2)", P2));
    CHECK(r.herve_case == 0);
    CHECK(r.g_is_identity);
    REQUIRE(r.sigma);
    CHECK(std::abs(*r.sigma - 1.0) < 1e-5);
}

TEST_CASE("escaping f slices with interior g slices give case 1") {
    const auto r = herve_classify(parse_map("(mobius(0.5)(z1), 0.5*z2)", P2));
    CHECK(r.herve_case == 1);
    CHECK_FALSE(r.swapped);
    REQUIRE(r.sigma);
    CHECK(std::abs(*r.sigma - 1.0) < 1e-5);
    for (const auto& s : r.g_slices) CHECK(s.fix == SliceFix::Interior);
    const auto pred = herve_predicted_descr(r);
    CHECK(distance_to_descr(pred, CPoint{1.0, {0.0, 0.5}}) < 1e-12);
    CHECK(distance_to_descr(pred, CPoint{0.0, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("the swapped variant of case 1") {
    const auto r = herve_classify(parse_map("(0.5*z1, mobius(0.5)(z2))", P2));
    CHECK(r.herve_case == 1);
    CHECK(r.swapped);
    REQUIRE(r.tau);
    CHECK(std::abs(*r.tau - 1.0) < 1e-5);
    CHECK(distance_to_descr(herve_predicted_descr(r), CPoint{0.3, 1.0}) < 1e-12);
}

TEST_CASE("both families escaping gives case 2") {
    const auto r = herve_classify(parse_map("(mobius(0.5)(z1), mobius(0.5)(z2))", P2));
    CHECK(r.herve_case == 2);
    REQUIRE(r.sigma);
    REQUIRE(r.tau);
    const auto pred = herve_predicted_descr(r);
    CHECK(distance_to_descr(pred, CPoint{1.0, 0.0}) < 1e-12);
    CHECK(distance_to_descr(pred, CPoint{0.0, 1.0}) < 1e-12);
    CHECK(distance_to_descr(pred, CPoint{-1.0, -1.0}) == doctest::Approx(2.0));
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(herve_classify(parse_map("mobius(0.5)(z1)", DomainSpec::disk())), DomainError);
    CHECK_THROWS_AS(herve_classify(parse_map("(0.5*z1, 0.5*z2)", P2)), DomainError);
}
