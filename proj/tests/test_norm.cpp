#include <doctest.h>

#include "oracles.hpp"
#include "tsi/errors.hpp"
#include "tsi/norm.hpp"
#include "tsi/schreier.hpp"

#include <vector>

using namespace tsi;

namespace {

SpaceSpec t_half() { return SpaceSpec::make(1, {{1, Rat(1, 2)}}, true); }

SpaceSpec t_mixed() {
    return SpaceSpec::make(1, {{1, Rat(1, 2)}, {2, Rat(1, 4)}}, true);
}

C00Vector units(int p, std::initializer_list<Idx> idxs) {
    std::vector<std::tuple<Idx, Rat, int>> entries;
    for (Idx i : idxs) entries.emplace_back(i, Rat(1), 1);
    return C00Vector::from_entries(p, std::move(entries));
}

// right-hand side of the implicit equation, evaluated with norm_p on the
// restrictions: max coefficient power vs weighted admissible interval sums
Rat equation_rhs(const C00Vector& x, const SpaceSpec& sp) {
    auto pts = x.support_points(10);
    int k = static_cast<int>(pts.size());
    Rat best = x.max_mag();
    std::vector<std::pair<int, int>> cur;
    auto rec = [&](auto&& self, int from) -> void {
        if (cur.size() >= 2) {
            std::vector<Idx> mins;
            for (auto [i, j] : cur) mins.push_back(pts[static_cast<std::size_t>(i)]);
            Rat sum(-1);
            for (const auto& [n, th] : sp.pairs()) {
                if (!member(FinSet(mins), FamilyDescriptor::schreier(n))) continue;
                if (sum < 0) {
                    sum = Rat(0);
                    for (auto [i, j] : cur) {
                        std::vector<Idx> els(pts.begin() + i, pts.begin() + j + 1);
                        sum += norm_p(x.restrict_to(FinSet(els)), sp);
                    }
                }
                Rat c = th * sum;
                if (c > best) best = c;
            }
        }
        for (int i = from; i < k; ++i)
            for (int j = i; j < k; ++j) {
                cur.push_back({i, j});
                self(self, j + 1);
                cur.pop_back();
            }
    };
    rec(rec, 0);
    return best;
}

} // namespace

TEST_CASE("norm pins") {
    CHECK(norm_p(units(1, {1, 2}), t_half()) == Rat(1));
    CHECK(norm_p(units(1, {4, 5, 6, 7}), t_half()) == Rat(2));
    CHECK(norm_p(units(1, {2, 3}), t_half()) == Rat(1));
    CHECK(norm_p(C00Vector::unit(1, 1), t_half()) == Rat(1));
    CHECK_THROWS_AS(norm_p(C00Vector(), t_half()), Error);
}

TEST_CASE("degenerate weight gives the pure sum") {
    auto l2 = SpaceSpec::make(2, {{1, Rat(1)}}, false);
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        auto x = oracle::random_vector(rng, 2, 2, 12, 6);
        CHECK(norm_p(x, l2) == x.total_mass());
    }
    // coordinate 1 is unreachable by splits: only {1} itself contains it
    CHECK(norm_p(units(2, {1, 2}), l2) == Rat(1));
    CHECK(norm_p(units(2, {1, 2, 3}), l2) == Rat(2));
    auto spike = C00Vector::from_entries(2, {{1, Rat(7), 1}, {2, Rat(1), 1}, {3, Rat(1), 1}});
    CHECK(norm_p(spike, l2) == Rat(7));
    // certificates exist for the degenerate weight when 1 is off the support
    auto c = norm_certificate(units(2, {2, 3, 4, 5}), l2);
    CHECK(verify_certificate(c, units(2, {2, 3, 4, 5}), l2) == Rat(4));
}

TEST_CASE("brute oracle pins") {
    CHECK(brute_norm_p(units(1, {1, 2}), t_half(), 3) == Rat(1));
    CHECK(brute_norm_p(units(1, {4, 5, 6, 7}), t_half(), 3) == Rat(2));
}

TEST_CASE("norm equals the subset-piece oracle") {
    Rng rng(424242);
    for (int t = 0; t < 60; ++t) {
        auto x = oracle::random_vector(rng, 1, 1, 9, 6);
        auto sp = (t % 2) ? t_mixed() : t_half();
        CHECK(norm_p(x, sp) == brute_norm_p(x, sp, 4));
    }
}

TEST_CASE("norm satisfies the implicit equation") {
    Rng rng(99);
    for (int t = 0; t < 25; ++t) {
        auto x = oracle::random_vector(rng, 1, 1, 8, 5);
        auto sp = (t % 2) ? t_mixed() : t_half();
        CHECK(norm_p(x, sp) == equation_rhs(x, sp));
    }
}

TEST_CASE("unconditionality and monotonicity") {
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        auto x = oracle::random_vector(rng, 1, 1, 10, 6);
        auto sp = (t % 2) ? t_mixed() : t_half();
        Rat v = norm_p(x, sp);

        std::vector<bool> flips;
        for (Idx i = 0; i < x.width(); ++i) flips.push_back(rng.flip());
        CHECK(norm_p(x.flip_signs(flips), sp) == v);

        auto pts = x.support_points(16);
        Idx drop = pts[static_cast<std::size_t>(rng.below(static_cast<Idx>(pts.size())))];
        auto y = x.drop_point(drop);
        if (!y.empty()) CHECK(norm_p(y, sp) <= v);

        CHECK(v >= x.max_mag());
        CHECK(v <= x.total_mass());
    }
}

TEST_CASE("triangle inequality") {
    Rng rng(13);
    // p = 1: pointwise sums are exact
    for (int t = 0; t < 100; ++t) {
        auto x = oracle::random_vector(rng, 1, 1, 10, 5);
        auto y = oracle::random_vector(rng, 1, 1, 10, 5);
        std::vector<std::tuple<Idx, Rat, int>> entries;
        for (Idx i = 1; i <= 10; ++i) {
            Rat v = x.mag_at(i) * x.sign_at(i) + y.mag_at(i) * y.sign_at(i);
            if (v != 0) entries.emplace_back(i, abs(v), sgn(v) > 0 ? 1 : -1);
        }
        if (entries.empty()) continue;
        auto sum = C00Vector::from_entries(1, std::move(entries));
        auto sp = (t % 2) ? t_mixed() : t_half();
        CHECK(norm_p(sum, sp) <= norm_p(x, sp) + norm_p(y, sp));
    }
    // p = 2: disjoint supports, checked through directed root brackets
    auto sp2 = SpaceSpec::make(2, {{1, Rat(1, 2)}}, true);
    for (int t = 0; t < 50; ++t) {
        auto x = oracle::random_vector(rng, 2, 1, 6, 4);
        auto y = oracle::random_vector(rng, 2, 7, 12, 4);
        auto sum = C00Vector::merge_disjoint(x, y);
        Rat tol(1, 1000000000);
        auto rs = nth_root_bounds(norm_p(sum, sp2), 2, tol);
        auto rx = nth_root_bounds(norm_p(x, sp2), 2, tol);
        auto ry = nth_root_bounds(norm_p(y, sp2), 2, tol);
        CHECK(rs.lo <= rx.hi + ry.hi);
    }
}

TEST_CASE("certificates round-trip") {
    auto sp = t_half();
    auto cert = norm_certificate(units(1, {4, 5, 6, 7}), sp);
    CHECK(verify_certificate(cert, units(1, {4, 5, 6, 7}), sp) == Rat(2));

    auto leafc = norm_certificate(C00Vector::unit(1, 5), sp);
    CHECK(verify_certificate(leafc, C00Vector::unit(1, 5), sp) == Rat(1));

    Rng rng(2718);
    for (int t = 0; t < 60; ++t) {
        auto x = oracle::random_vector(rng, 1, 1, 10, 6);
        auto spc = (t % 2) ? t_mixed() : t_half();
        auto c = norm_certificate(x, spc);
        CHECK(verify_certificate(c, x, spc) == norm_p(x, spc));
    }

    // json round-trip preserves the value
    auto c2 = norm_certificate(units(1, {2, 3}), sp);
    auto c3 = NormCertificate::from_json(c2.to_json());
    CHECK(verify_certificate(c3, units(1, {2, 3}), sp) == Rat(1));
}

TEST_CASE("certificate validation failures") {
    auto sp = t_half();
    auto x = units(1, {1, 2});

    NormCertificate bad;
    bad.nodes.push_back({-1, 1, 1, {}});
    bad.nodes.push_back({-1, 2, 1, {}});
    bad.nodes.push_back({1, 0, 1, {0, 1}});
    bad.root = 2;
    CHECK_THROWS_WITH_AS(verify_certificate(bad, x, sp),
                         doctest::Contains("admissible"), Error);

    NormCertificate unk;
    unk.nodes.push_back({-1, 4, 1, {}});
    unk.nodes.push_back({-1, 5, 1, {}});
    unk.nodes.push_back({7, 0, 1, {0, 1}});
    unk.root = 2;
    CHECK_THROWS_WITH_AS(verify_certificate(unk, units(1, {4, 5}), sp),
                         doctest::Contains("weight"), Error);

    NormCertificate off;
    off.nodes.push_back({-1, 9, 1, {}});
    off.root = 0;
    CHECK_THROWS_WITH_AS(verify_certificate(off, x, sp), doctest::Contains("support"), Error);

    // hand-built sound certificates stay below the norm
    NormCertificate modest;
    modest.nodes.push_back({-1, 4, 1, {}});
    modest.nodes.push_back({-1, 5, 1, {}});
    modest.nodes.push_back({1, 0, 1, {0, 1}});
    modest.root = 2;
    auto y = units(1, {4, 5, 6, 7});
    CHECK(verify_certificate(modest, y, sp) == Rat(1));
    CHECK(verify_certificate(modest, y, sp) <= norm_p(y, sp));
}

TEST_CASE("restriction maxima") {
    auto sp = t_half();
    auto y = units(1, {4, 5, 6, 7});
    CHECK(restriction_max(y, FamilyDescriptor::schreier(0), sp) == Rat(1));
    CHECK(restriction_max(y, FamilyDescriptor::schreier(1), sp) == Rat(2));
    CHECK(restriction_max(y, FamilyDescriptor::explicit_family({}), sp) == Rat(0));

    // wide uniform block: certified squeeze must close
    C00Vector wide(1, {{64, 64, 1, Rat(1, 64)}});
    CHECK(restriction_max(wide, FamilyDescriptor::schreier(1), sp) == Rat(1, 2));
}

TEST_CASE("weight regularization") {
    auto reg1 = regularize({{1, Rat(1, 2)}}, 4);
    REQUIRE(reg1.size() == 4);
    CHECK(reg1[0].second == Rat(1, 2));
    CHECK(reg1[1].second == Rat(1, 4));
    CHECK(reg1[2].second == Rat(1, 8));
    CHECK(reg1[3].second == Rat(1, 16));

    auto reg2 = regularize({{2, Rat(1, 4)}}, 4);
    CHECK(reg2[0].second == Rat(1, 4));
    CHECK(reg2[1].second == Rat(1, 4));
    CHECK(reg2[2].second == Rat(1, 16));
    CHECK(reg2[3].second == Rat(1, 16));

    // regularized weights dominate the inputs and are supermultiplicative
    std::vector<std::pair<int, Rat>> pairs = {{1, Rat(1, 3)}, {3, Rat(1, 5)}};
    auto reg = regularize(pairs, 9);
    for (const auto& [n, th] : pairs) CHECK(reg[static_cast<std::size_t>(n - 1)].second >= th);
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; a + b <= 9; ++b)
            CHECK(reg[static_cast<std::size_t>(a + b - 1)].second >=
                  reg[static_cast<std::size_t>(a - 1)].second *
                      reg[static_cast<std::size_t>(b - 1)].second);
}

TEST_CASE("weight supremum brackets") {
    std::vector<std::pair<int, Rat>> geo;
    for (int n = 1; n <= 10; ++n) geo.push_back({n, rat_pow(Rat(1, 2), static_cast<unsigned>(n))});
    auto [lo, hi] = theta_sup_bounds(geo, 10);
    CHECK(lo == Rat(1, 2));
    CHECK(hi == Rat(1, 2));

    auto [slo, shi] = theta_sup_bounds({{1, Rat(1, 2)}}, 5);
    CHECK(slo == Rat(1, 2));
    CHECK(shi == Rat(1, 2));

    std::vector<std::pair<int, Rat>> damped;
    for (int n = 1; n <= 20; ++n)
        damped.push_back({n, rat_pow(Rat(1, 2), static_cast<unsigned>(n)) / rat_of(n + 1)});
    Rat tol(1, 1000000);
    auto [dlo, dhi] = theta_sup_bounds(damped, 20, tol);
    CHECK(dhi - dlo <= tol);
    CHECK(dlo < Rat(1, 2));
    auto [dlo5, dhi5] = theta_sup_bounds(damped, 5, tol);
    CHECK(dlo5 <= dlo);   // longer horizons only improve the truncated sup
    CHECK(dlo > Rat(2, 5));
}
