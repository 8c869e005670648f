#include <doctest.h>

#include "tsi/errors.hpp"
#include "tsi/norm.hpp"
#include "tsi/xd.hpp"

#include "oracles.hpp"

#include <set>
#include <string>

using namespace tsi;

namespace {

DFunctional unit_at(Idx i, int sign = 1, Idx width = 10) {
    DFunctional f;
    f.coeffs.assign(width, Rat(0));
    f.coeffs[i - 1] = Rat(sign);
    f.kind = DFunctional::Unit;
    return f;
}

DSpaceParams tiny_params() {
    DSpaceParams p;
    p.p = 1;
    p.n_pairs = {{1, Rat(1, 2)}};
    p.sigma.levels = {1};
    p.gamma_grid = {Rat(1), Rat(-1)};
    return p;
}

std::string profile_key(const DFunctional& f) {
    std::string key;
    for (const auto& c : f.coeffs) key += rat_str(c) + ",";
    return key;
}

C00Vector vec(std::vector<std::tuple<Idx, Rat, int>> entries) {
    return C00Vector::from_entries(1, entries);
}

} // namespace

TEST_CASE("coder assigns distinct increasing positions") {
    SigmaCoding coding;
    coding.levels = {1, 2, 3, 4};
    SigmaCoder coder(coding);
    DFunctional a = unit_at(1), b = unit_at(2), c = unit_at(3);
    int ca = coder.code({&a});
    int cb = coder.code({&b});
    int cc = coder.code({&a, &b});
    CHECK(ca == 1);
    CHECK(cb == 2);
    CHECK(cc == 3);
    CHECK(coder.code({&a}) == ca);
    CHECK(coder.code({&b}) == cb);
    CHECK(coder.code({&a, &b}) == cc);
    CHECK(coder.code({&c}) == 4);
    DFunctional d = unit_at(4);
    CHECK_THROWS_WITH_AS(coder.code({&d}), doctest::Contains("listed characters"), Error);
}

TEST_CASE("coder respects the support floor") {
    SigmaCoding coding;
    coding.levels = {1, 2, 3, 4};
    SigmaCoder coder(coding);
    DFunctional f = unit_at(3);
    CHECK(coder.code({&f}) == 3);
    DFunctional lo = unit_at(1);
    CHECK(coder.code({&lo}) == 4);
    DFunctional wide = unit_at(7);
    CHECK_THROWS_AS(coder.code({&wide}), Error);

    coding.growth = false;
    SigmaCoder flat(coding);
    CHECK(flat.code({&wide}) == 1);
    CHECK(flat.code({&f}) == 2);
}

TEST_CASE("coder rejects bad words") {
    SigmaCoder coder(DSpaceParams::preset().sigma);
    CHECK_THROWS_WITH_AS(coder.code({}), doctest::Contains("empty word"), Error);
    DFunctional z;
    z.coeffs.assign(4, Rat(0));
    CHECK_THROWS_WITH_AS(coder.code({&z}), doctest::Contains("zero functional"), Error);
}

TEST_CASE("depth zero is the signed unit set") {
    auto pool = build_d(DSpaceParams::preset(), 5, 0);
    REQUIRE(pool.size() == 10);
    std::set<std::string> keys;
    for (const auto& f : pool) {
        CHECK(f.kind == DFunctional::Unit);
        CHECK(f.min_supp() == f.max_supp());
        keys.insert(profile_key(f));
    }
    CHECK(keys.size() == 10);
}

TEST_CASE("depth one saturates the sign combinations") {
    auto pool = build_d(tiny_params(), 4, 1);
    CHECK(pool.size() == 28);
    std::set<std::string> keys;
    for (const auto& f : pool) keys.insert(profile_key(f));
    CHECK(keys.size() == 28);

    DFunctional want;
    want.coeffs = {Rat(0), Rat(1, 2), Rat(1, 2), Rat(0)};
    CHECK(keys.count(profile_key(want)) == 1);
    want.coeffs = {Rat(0), Rat(1, 2), Rat(-1, 2), Rat(0)};
    CHECK(keys.count(profile_key(want)) == 1);
    // a pair through coordinate one is not admissible
    want.coeffs = {Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)};
    CHECK(keys.count(profile_key(want)) == 0);

    for (const auto& f : pool)
        if (f.kind == DFunctional::Plain) CHECK(f.character == 1);
}

TEST_CASE("preset saturation builds all three kinds and passes the checker") {
    auto params = DSpaceParams::preset();
    auto pool = build_d(params, 6, 2);
    int units = 0, plains = 0, specials = 0;
    for (const auto& f : pool) {
        if (f.kind == DFunctional::Unit) ++units;
        else if (f.kind == DFunctional::Plain) ++plains;
        else ++specials;
    }
    CHECK(units == 12);
    CHECK(plains > 1000);
    CHECK(specials > 100);
    CHECK(check_dfunctionals(pool, params));

    std::set<std::string> keys;
    for (const auto& f : pool) keys.insert(profile_key(f));
    CHECK(keys.size() == pool.size());

    auto again = build_d(params, 6, 2);
    REQUIRE(again.size() == pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
        CHECK(again[i].to_json() == pool[i].to_json());
}

TEST_CASE("checker flags tampered pools") {
    auto params = DSpaceParams::preset();
    auto pool = build_d(params, 4, 1);
    REQUIRE(check_dfunctionals(pool, params));

    auto broken = pool;
    for (auto& f : broken)
        if (f.kind == DFunctional::Plain && f.children.size() == 2) {
            f.coeffs[f.min_supp() - 1] += Rat(1, 64);
            break;
        }
    CHECK_THROWS_WITH_AS(check_dfunctionals(broken, params),
                         doctest::Contains("differ from the rule"), Error);

    broken = pool;
    for (auto& f : broken)
        if (f.kind == DFunctional::Plain) {
            f.gammas.assign(f.children.size(), Rat(1, 3));
            break;
        }
    CHECK_THROWS_WITH_AS(check_dfunctionals(broken, params), doctest::Contains("off the grid"),
                         Error);

    broken = pool;
    for (auto& f : broken)
        if (!f.children.empty()) {
            f.children[0] = static_cast<int>(pool.size()) - 1;
            break;
        }
    CHECK_THROWS_WITH_AS(check_dfunctionals(broken, params),
                         doctest::Contains("breaks build order"), Error);
}

TEST_CASE("saturation rejects bad arguments") {
    auto params = DSpaceParams::preset();
    CHECK_THROWS_AS(build_d(params, 11, 1), Error);
    CHECK_THROWS_AS(build_d(params, 0, 1), Error);
    CHECK_THROWS_AS(build_d(params, 4, 4), Error);
    CHECK_THROWS_AS(build_d(params, 4, -1), Error);

    auto bad = params;
    bad.p = 2;
    CHECK_THROWS_WITH_AS(build_d(bad, 4, 1), doctest::Contains("p=1"), Error);

    bad = params;
    bad.n_pairs[1].second = Rat(1, 10);
    CHECK_THROWS_WITH_AS(build_d(bad, 4, 1), doctest::Contains("not regular"), Error);

    bad = params;
    bad.gamma_grid.push_back(Rat(2));
    CHECK_THROWS_WITH_AS(build_d(bad, 4, 1), doctest::Contains("dual ball"), Error);

    bad = params;
    bad.sigma.levels = {1, 5};
    CHECK_THROWS_WITH_AS(build_d(bad, 4, 1), doctest::Contains("listed plain levels"), Error);

    bad = params;
    bad.n_pairs[0].second = Rat(1);
    CHECK_THROWS_AS(build_d(bad, 4, 1), Error);
}

TEST_CASE("an oversized scalar grid fails loudly") {
    auto params = tiny_params();
    params.gamma_grid.clear();
    for (int i = 1; i <= 70; ++i) params.gamma_grid.push_back(Rat(i, 70));
    try {
        build_d(params, 4, 1);
        FAIL("expected an explosion");
    } catch (const Error& err) {
        CHECK(err.code() == Err::Explosion);
    }
}

TEST_CASE("window restricts evaluation and support") {
    DFunctional f;
    f.coeffs = {Rat(1), Rat(1), Rat(1), Rat(1)};
    f.kind = DFunctional::Unit;
    CHECK(f.min_supp() == 1);
    CHECK(f.max_supp() == 4);
    f.window = {{2, 3}};
    CHECK(f.min_supp() == 2);
    CHECK(f.max_supp() == 3);
    C00Vector x = vec({{1, Rat(1), 1}, {2, Rat(1, 2), 1}, {4, Rat(1), 1}});
    CHECK(f.eval(x) == Rat(1, 2));
}

TEST_CASE("functionals and parameters round trip through json") {
    auto params = DSpaceParams::preset();
    auto back = DSpaceParams::from_json(params.to_json());
    CHECK(back.to_json() == params.to_json());

    auto pool = build_d(params, 4, 2);
    bool saw_special = false;
    for (const auto& f : pool) {
        auto copy = DFunctional::from_json(f.to_json());
        CHECK(copy.to_json() == f.to_json());
        saw_special = saw_special || f.kind == DFunctional::Special;
    }
    CHECK(saw_special);

    DFunctional w = unit_at(2, -1, 4);
    w.window = {{1, 3}};
    CHECK(DFunctional::from_json(w.to_json()).to_json() == w.to_json());
}

TEST_CASE("pool values stay inside the merged-space ball") {
    auto params = DSpaceParams::preset();
    auto pool = build_d(params, 6, 2);

    C00Vector e2 = vec({{2, Rat(1), 1}});
    auto [lo, hi] = norm_d_bounds(e2, pool, params);
    CHECK(lo == 1);
    CHECK(hi == 1);

    auto [lo23, hi23] = norm_d_bounds(vec({{2, Rat(1), 1}, {3, Rat(1), 1}}), pool, params);
    CHECK(lo23 == 1);
    CHECK(hi23 == 1);

    Rng rng(900);
    for (int t = 0; t < 40; ++t) {
        C00Vector x = oracle::random_vector(rng, 1, 1, 6, 5);
        if (x.empty()) continue;
        auto [lower, upper] = norm_d_bounds(x, pool, params);
        CHECK(lower >= 0);
        CHECK(lower <= upper);
    }
}

TEST_CASE("lower bound grows with support and depth") {
    DSpaceParams params;
    params.p = 1;
    params.n_pairs = {{1, Rat(1, 2)}, {2, Rat(1, 4)}};
    params.l_pairs = {{1, Rat(1, 8)}};
    params.sigma.levels = {1, 2};
    params.gamma_grid = {Rat(0), Rat(1), Rat(-1)};

    auto p41 = build_d(params, 4, 1);
    auto p51 = build_d(params, 5, 1);
    auto p52 = build_d(params, 5, 2);
    Rng rng(300);
    for (int t = 0; t < 30; ++t) {
        C00Vector x = oracle::random_vector(rng, 1, 1, 4, 4);
        if (x.empty()) continue;
        Rat a = norm_d_bounds(x, p41, params).first;
        Rat b = norm_d_bounds(x, p51, params).first;
        Rat c = norm_d_bounds(x, p52, params).first;
        CHECK(a <= b);
        CHECK(b <= c);
    }
}

TEST_CASE("claim scan pins the preset thresholds") {
    Budget b;
    b.seed = 11;
    b.max_candidates = 250;
    auto rep = claim_scan(DSpaceParams::preset(), 1, b);
    CHECK(rep.j_n == 2);
    CHECK(rep.i_n == 3);
    CHECK(rep.samples == 250);
    CHECK(rep.max_ratio > 0);
    CHECK(rep.max_ratio <= 4);
    CHECK(rep.flagged.empty());

    auto again = claim_scan(DSpaceParams::preset(), 1, b);
    CHECK(again.max_ratio == rep.max_ratio);
    CHECK(again.samples == rep.samples);
}

TEST_CASE("claim scan runs on the growth-disabled fixture") {
    auto params = DSpaceParams::preset();
    params.sigma.growth = false;
    Budget b;
    b.seed = 5;
    b.max_candidates = 150;
    auto rep = claim_scan(params, 1, b);
    CHECK(rep.j_n == 2);
    CHECK(rep.i_n == 3);
    CHECK(rep.max_ratio > 0);
}

TEST_CASE("claim scan flags an injected oversized functional") {
    DFunctional rogue;
    rogue.coeffs.assign(10, Rat(0));
    for (Idx i = 3; i <= 10; ++i) rogue.coeffs[i - 1] = Rat(9);
    rogue.kind = DFunctional::Plain;
    Budget b;
    b.seed = 2;
    b.max_candidates = 60;
    auto rep = claim_scan(DSpaceParams::preset(), 1, b, {rogue});
    CHECK(rep.max_ratio > 4);
    CHECK(!rep.flagged.empty());
    for (const auto& x : rep.flagged) CHECK(!x.empty());
}

TEST_CASE("claim scan reports vacuous configurations") {
    DSpaceParams lone;
    lone.p = 1;
    lone.n_pairs = {{1, Rat(1, 2)}};
    lone.sigma.levels = {1};
    lone.gamma_grid = {Rat(1), Rat(-1)};
    Budget b;
    CHECK_THROWS_WITH_AS(claim_scan(lone, 1, b), doctest::Contains("vacuous at this scale"),
                         Error);

    DSpaceParams low;
    low.p = 1;
    low.n_pairs = {{1, Rat(1, 2)}, {2, Rat(1, 4)}};
    low.sigma.levels = {1};
    low.gamma_grid = {Rat(1), Rat(-1)};
    CHECK_THROWS_WITH_AS(claim_scan(low, 1, b), doctest::Contains("vacuous at this scale"),
                         Error);

    CHECK_THROWS_AS(claim_scan(DSpaceParams::preset(), 7, b), Error);
}
