#include <doctest.h>

#include "tsi/asymptotics.hpp"
#include "tsi/errors.hpp"
#include "tsi/norm.hpp"

using namespace tsi;

namespace {

SpaceSpec t_half() { return SpaceSpec::make(1, {{1, Rat(1, 2)}}); }

SpaceSpec damped() {
    return SpaceSpec::make(1, {{1, Rat(1, 4)}, {2, Rat(1, 12)}, {3, Rat(1, 32)}, {4, Rat(1, 80)}});
}

Budget small_budget(std::uint64_t n = 40, std::uint64_t seed = 5) {
    Budget b;
    b.max_candidates = n;
    b.seed = seed;
    return b;
}

Rat witness_ratio(const ThetaEstimate& est, const SpaceSpec& space) {
    Rat denom(0);
    C00Vector sum;
    for (const auto& b : est.witness) {
        denom += norm_p(b, space);
        sum = sum.empty() ? b : C00Vector::merge_disjoint(sum, b);
    }
    return norm_p(sum, space) / denom;
}

} // namespace

TEST_CASE("level-one estimate in the single-weight space is tight") {
    auto est = theta_n_estimate(t_half(), 1, std::nullopt, small_budget());
    CHECK(est.upper == Rat(1, 2));
    CHECK_FALSE(est.exhausted);
    REQUIRE(est.witness.size() == 4);
    for (Idx i = 0; i < 4; ++i) {
        CHECK(est.witness[i].width() == 1);
        CHECK(est.witness[i].mag_at(4 + i) == Rat(1));
    }
    CHECK(witness_ratio(est, t_half()) == est.upper);
}

TEST_CASE("degenerate weight gives estimate one") {
    auto pure = SpaceSpec::make(1, {{1, Rat(1)}});
    auto est = theta_n_estimate(pure, 1, std::nullopt, small_budget(5));
    CHECK(est.upper == Rat(1));
    CHECK(est.exhausted);  // the planned sweep was cut short
    REQUIRE(est.witness.size() == 1);
    CHECK(est.witness[0].width() == 1);
}

TEST_CASE("level-two estimate in the damped space stays above the weight") {
    auto est = theta_n_estimate(damped(), 2, std::nullopt, small_budget());
    CHECK(est.upper >= Rat(1, 12));
    CHECK(est.upper <= Rat(1, 6));
    CHECK(witness_ratio(est, damped()) == est.upper);
}

TEST_CASE("support-constrained estimate uses single-point blocks") {
    auto est = theta_n_estimate(t_half(), 1, 0, small_budget());
    CHECK(est.upper == Rat(1, 2));
    for (const auto& b : est.witness) {
        CHECK(b.width() == 1);
        CHECK(norm_p(b, t_half()) == Rat(1));
    }
}

TEST_CASE("estimates never fall below the listed weight") {
    for (int n : {1, 2}) {
        auto est = theta_n_estimate(damped(), n, std::nullopt, small_budget(30, 11));
        CHECK(est.upper >= *damped().theta(n));
    }
}

TEST_CASE("estimate is deterministic under a fixed budget") {
    auto a = theta_n_estimate(t_half(), 1, std::nullopt, small_budget(60, 17));
    auto b = theta_n_estimate(t_half(), 1, std::nullopt, small_budget(60, 17));
    CHECK(a.upper == b.upper);
    REQUIRE(a.witness.size() == b.witness.size());
    for (std::size_t i = 0; i < a.witness.size(); ++i)
        CHECK(a.witness[i].to_json() == b.witness[i].to_json());
}

TEST_CASE("estimate rejects a bad level") {
    CHECK_THROWS_AS(theta_n_estimate(t_half(), 0, std::nullopt, small_budget()), Error);
}

TEST_CASE("product audit") {
    CHECK(submult_audit({}).empty());
    CHECK(submult_audit({{1, Rat(1, 2)}, {2, Rat(1, 4)}}).empty());

    auto flags = submult_audit({{1, Rat(1, 2)}, {2, Rat(1, 5)}});
    REQUIRE(flags.size() == 1);
    CHECK(flags[0].n == 1);
    CHECK(flags[0].m == 1);
    CHECK(flags[0].floor == Rat(1, 4));
    CHECK(flags[0].upper == Rat(1, 5));

    auto mixed = submult_audit({{1, Rat(1, 2)}, {2, Rat(1, 4)}, {3, Rat(1, 10)}});
    REQUIRE(mixed.size() == 1);
    CHECK(mixed[0].n == 1);
    CHECK(mixed[0].m == 2);
    CHECK(mixed[0].floor == Rat(1, 8));
}
