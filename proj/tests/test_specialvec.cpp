#include <doctest.h>

#include "tsi/errors.hpp"
#include "tsi/norm.hpp"
#include "tsi/schreier.hpp"
#include "tsi/specialvec.hpp"

using namespace tsi;

namespace {

SpaceSpec t_half() { return SpaceSpec::make(1, {{1, Rat(1, 2)}}); }

SpaceSpec damped() {
    return SpaceSpec::make(1, {{1, Rat(1, 4)}, {2, Rat(1, 12)}, {3, Rat(1, 32)}, {4, Rat(1, 80)}});
}

FinSet supp_of(const C00Vector& x) { return FinSet(x.support_points(4096)); }

} // namespace

TEST_CASE("repeated averages at small levels") {
    C00Vector z0 = repeated_averages(0, 5);
    CHECK(z0.width() == 1);
    CHECK(z0.mag_at(5) == Rat(1));

    C00Vector z1 = repeated_averages(1, 4);
    CHECK(z1.width() == 4);
    CHECK(z1.min_supp() == 4);
    CHECK(z1.max_supp() == 7);
    for (Idx i = 4; i <= 7; ++i) CHECK(z1.mag_at(i) == Rat(1, 4));
    CHECK(z1.total_mass() == Rat(1));

    C00Vector z2 = repeated_averages(2, 4);
    CHECK(z2.width() == 60);
    CHECK(z2.min_supp() == 4);
    CHECK(z2.max_supp() == 63);
    CHECK(z2.mag_at(4) == Rat(1, 16));
    CHECK(z2.mag_at(8) == Rat(1, 32));
    CHECK(z2.mag_at(16) == Rat(1, 64));
    CHECK(z2.mag_at(32) == Rat(1, 128));
    CHECK(z2.total_mass() == Rat(1));

    CHECK_THROWS_AS(repeated_averages(-1, 4), Error);
    CHECK_THROWS_AS(repeated_averages(1, 0), Error);
}

TEST_CASE("average supports are maximal family members") {
    for (int n = 1; n <= 2; ++n) {
        for (Idx s = 2; s <= 4; ++s) {
            C00Vector z = repeated_averages(n, s);
            FinSet supp = supp_of(z);
            auto fam = FamilyDescriptor::schreier(n);
            CHECK(member(supp, fam));
            auto pts = z.support_points(4096);
            pts.push_back(z.max_supp() + 1);
            CHECK_FALSE(member(FinSet(pts), fam));
        }
    }
}

TEST_CASE("lower-level mass of an average shrinks with the start") {
    CHECK(family_mass(repeated_averages(1, 4), FamilyDescriptor::schreier(0)) == Rat(1, 4));
    CHECK(family_mass(repeated_averages(1, 8), FamilyDescriptor::schreier(0)) == Rat(1, 8));
    CHECK(family_mass(repeated_averages(2, 4), FamilyDescriptor::schreier(1)) == Rat(1, 4));
    CHECK(family_mass(repeated_averages(2, 8), FamilyDescriptor::schreier(1)) == Rat(1, 8));
}

TEST_CASE("deep averages overflow the representation") {
    CHECK_THROWS_AS(repeated_averages(3, 4), Error);
    try {
        repeated_averages(3, 4);
    } catch (const Error& e) {
        CHECK(e.code() == Err::EnumerationLimit);
    }
}

TEST_CASE("basis estimate vectors in the single-weight space") {
    auto r = est_basis_vector(t_half(), 1, 8);
    CHECK(r.delta == Rat(1, 8));
    CHECK(r.bound == Rat(5, 8));
    CHECK(norm_p(r.x, t_half()) == Rat(1, 2));

    auto r16 = est_basis_vector(t_half(), 1, 16);
    CHECK(r16.delta == Rat(1, 16));
    CHECK(r16.bound == Rat(9, 16));

    auto r0 = est_basis_vector(t_half(), 0, 3);
    CHECK(r0.x.width() == 1);
    CHECK(r0.delta == Rat(0));
    CHECK(r0.bound == Rat(1));

    CHECK_THROWS_WITH_AS(est_basis_vector(t_half(), 2, 4), doctest::Contains("no weight"), Error);
}

TEST_CASE("basis estimate vectors in the damped space") {
    auto r1 = est_basis_vector(damped(), 1, 8);
    CHECK(r1.delta == Rat(1, 8));
    CHECK(r1.bound == Rat(3, 8));
    CHECK(norm_p(r1.x, damped()) == Rat(1, 4));

    auto r2 = est_basis_vector(damped(), 2, 16);
    CHECK(r2.delta == Rat(1, 16));
    CHECK(r2.bound == Rat(7, 48));
    CHECK(norm_p(r2.x, damped()) == Rat(1, 12));

    // the gap between the norm and the bound narrows as the start grows
    auto r2b = est_basis_vector(damped(), 2, 32);
    CHECK(r2b.delta == Rat(1, 32));
    CHECK(r2b.bound < r2.bound);
}

TEST_CASE("basis estimate certification with power two") {
    auto space2 = SpaceSpec::make(2, {{1, Rat(1, 2)}, {2, Rat(1, 4)}});
    auto r = est_basis_vector(space2, 1, 4);
    CHECK(r.delta == Rat(1, 4));
    Rat value = norm_p(r.x, space2);
    CHECK(value == Rat(1, 2));
    CHECK(value <= r.bound);
    // certified bracket around (sqrt(1/4) + sqrt(1/2))^2
    CHECK(r.bound > Rat(145, 100));
    CHECK(r.bound < Rat(146, 100));
}

TEST_CASE("flatten finds flat blocks at level zero") {
    Budget b = Budget{};
    b.seed = 7;
    auto r = flatten(t_half(), 0, Rat(1, 2), b);
    CHECK(r.w.width() == 8);
    CHECK(r.restriction == Rat(1, 8));
    CHECK(r.norm_lower == Rat(1, 2));
    CHECK(r.ratio == Rat(1, 4));
    CHECK(r.candidates == 3);
}

TEST_CASE("flatten beats one half at level one") {
    Budget b = Budget{};
    b.seed = 7;
    auto r = flatten(t_half(), 1, Rat(1, 2), b);
    CHECK(r.w.width() <= 64);
    CHECK(r.ratio < Rat(1, 2));
    CHECK(r.restriction < Rat(1, 2) * r.norm_lower);
    // the first layered profile already certifies: every level-one window is
    // worth at most 1/8 while the full partition tree collects 33/128
    CHECK(r.w.min_supp() == 4);
    CHECK(r.w.max_supp() == 63);
    CHECK(r.restriction == Rat(1, 8));
    CHECK(r.norm_lower == Rat(33, 128));
    CHECK(r.ratio == Rat(16, 33));
    CHECK(r.candidates == 1);

    // certified data must be reproducible from the witness alone
    CHECK(restriction_max(r.w, FamilyDescriptor::schreier(1), t_half()) == r.restriction);
    CHECK(norm_p(r.w, t_half()) == r.norm_lower);
}

TEST_CASE("flatten accepts a unit vector for weak targets") {
    Budget b = Budget{};
    auto r = flatten(t_half(), 1, Rat(2), b);
    CHECK(r.w.width() == 1);
    CHECK(r.ratio == Rat(1));
    CHECK(r.candidates == 1);
}

TEST_CASE("flatten reports the best ratio when the budget runs out") {
    Budget b = Budget{};
    b.max_candidates = 3;
    CHECK_THROWS_WITH_AS(flatten(t_half(), 2, Rat(1, 100), b), doctest::Contains("best ratio"),
                         Error);
    try {
        flatten(t_half(), 2, Rat(1, 100), b);
    } catch (const Error& e) {
        CHECK(e.code() == Err::BudgetExhausted);
    }
}

TEST_CASE("flatten is deterministic under a fixed budget") {
    Budget b = Budget{};
    b.seed = 99;
    auto r1 = flatten(t_half(), 1, Rat(1, 2), b);
    auto r2 = flatten(t_half(), 1, Rat(1, 2), b);
    CHECK(r1.ratio == r2.ratio);
    CHECK(r1.candidates == r2.candidates);
    CHECK(r1.w.to_json() == r2.w.to_json());
}

TEST_CASE("flatten rejects bad arguments") {
    Budget b = Budget{};
    CHECK_THROWS_AS(flatten(t_half(), 3, Rat(1, 2), b), Error);
    CHECK_THROWS_AS(flatten(t_half(), 1, Rat(0), b), Error);
}
