#include <doctest.h>

#include "oracles.hpp"
#include "tsi/budget.hpp"
#include "tsi/errors.hpp"
#include "tsi/schreier.hpp"

#include <vector>

using namespace tsi;

namespace {

FinSet from_mask(unsigned mask, int width) {
    std::vector<Idx> els;
    for (int b = 0; b < width; ++b)
        if (mask >> b & 1u) els.push_back(b + 1);
    return FinSet(els);
}

C00Vector flat(int p, const std::vector<std::pair<Idx, Rat>>& pts) {
    std::vector<std::tuple<Idx, Rat, int>> entries;
    for (const auto& [i, m] : pts) entries.emplace_back(i, m, 1);
    return C00Vector::from_entries(p, std::move(entries));
}

} // namespace

TEST_CASE("schreier membership agrees with the exhaustive decomposition oracle") {
    for (int n = 0; n <= 3; ++n) {
        auto table = oracle::schreier_table(n, 10);
        auto fam = FamilyDescriptor::schreier(n);
        int mismatches = 0;
        for (unsigned mask = 0; mask < (1u << 10); ++mask)
            if (member(from_mask(mask, 10), fam) != (table[mask] == 1)) ++mismatches;
        CHECK(mismatches == 0);
    }
}

TEST_CASE("membership pins") {
    auto s0 = FamilyDescriptor::schreier(0);
    auto s1 = FamilyDescriptor::schreier(1);
    auto s2 = FamilyDescriptor::schreier(2);
    auto sw = FamilyDescriptor::omega();

    CHECK(member(FinSet{1}, s0));
    CHECK(member(FinSet{}, s0));
    CHECK_FALSE(member(FinSet{1, 2}, s1));
    CHECK(member(FinSet{2, 3}, s1));
    CHECK(member(FinSet{2, 3, 4, 5, 6, 7}, s2));
    CHECK(member(FinSet{2, 4, 5, 6, 7, 8, 9}, s2));
    CHECK_FALSE(member(FinSet{2, 3, 4, 5, 6, 7, 8}, s2));
    CHECK(member(FinSet{2, 3, 4}, sw));
    CHECK_FALSE(member(FinSet{1, 2}, sw));
    CHECK(member(FinSet{3, 4, 5}, sw));
}

TEST_CASE("hereditary and spreading properties") {
    Rng rng(2024);
    auto s2 = FamilyDescriptor::schreier(2);
    for (int trial = 0; trial < 1000; ++trial) {
        unsigned mask = static_cast<unsigned>(rng.raw() & 0xfffu);
        FinSet f = from_mask(mask, 12);
        if (!member(f, s2)) continue;
        // subsets stay members
        unsigned sub = static_cast<unsigned>(rng.raw()) & mask;
        CHECK(member(from_mask(sub, 12), s2));
        // spreads stay members
        std::vector<Idx> spread;
        Idx bump = 0;
        for (Idx v : f.elements()) {
            bump += rng.below(3);
            spread.push_back(v + bump);
        }
        CHECK(member(FinSet(spread), s2));
    }
}

TEST_CASE("run stepping matches element stepping") {
    Rng rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        int n = static_cast<int>(rng.in(1, 3));
        Idx at = rng.in(1, 6);
        std::vector<std::pair<Idx, Idx>> runs;
        for (int r = 0, rn = static_cast<int>(rng.in(1, 4)); r < rn; ++r) {
            Idx len = rng.in(1, 30);
            runs.push_back({at, len});
            at += len + rng.in(1, 5);
        }
        SchreierAutomaton by_el(n), by_run(n);
        bool ok_el = true, ok_run = true;
        for (auto [start, len] : runs) {
            for (Idx v = start; v < start + len && ok_el; ++v) ok_el = by_el.step(v);
            if (ok_run) ok_run = by_run.step_run(start, len);
        }
        CHECK(ok_el == ok_run);
    }
}

TEST_CASE("composed family equals the next level") {
    for (int n = 0; n <= 2; ++n) {
        auto composed = FamilyDescriptor::s1of(FamilyDescriptor::schreier(n));
        auto next = FamilyDescriptor::schreier(n + 1);
        int mismatches = 0;
        for (unsigned mask = 0; mask < (1u << 8); ++mask) {
            FinSet f = from_mask(mask, 8);
            if (member(f, composed) != member(f, next)) ++mismatches;
        }
        CHECK(mismatches == 0);
    }
    std::vector<Idx> wide;
    for (Idx v = 20; v < 37; ++v) wide.push_back(v);
    CHECK_THROWS_AS(member(FinSet(wide), FamilyDescriptor::s1of(FamilyDescriptor::schreier(1))),
                    Error);
}

TEST_CASE("explicit families") {
    auto fam = FamilyDescriptor::explicit_family({FinSet{1, 2}, FinSet{3}});
    CHECK(member(FinSet{}, fam));
    CHECK(member(FinSet{1}, fam));
    CHECK(member(FinSet{2}, fam));
    CHECK(member(FinSet{1, 2}, fam));
    CHECK(member(FinSet{3}, fam));
    CHECK_FALSE(member(FinSet{1, 3}, fam));
    CHECK_FALSE(member(FinSet{4}, fam));
}

TEST_CASE("admissibility") {
    auto s1 = FamilyDescriptor::schreier(1);
    CHECK(is_admissible({FinSet{4}, FinSet{5}, FinSet{6}, FinSet{7}}, s1));
    CHECK_FALSE(is_admissible({FinSet{1}, FinSet{2}}, s1));
    CHECK(is_admissible({FinSet{2, 3}, FinSet{4, 5, 6}}, s1));
    CHECK_FALSE(is_admissible({FinSet{2, 5}, FinSet{4, 6}}, s1)); // overlap
    CHECK_THROWS_AS(is_admissible({FinSet{2}, FinSet{}}, s1), Error);
}

TEST_CASE("member enumeration and maximal members") {
    auto s1 = FamilyDescriptor::schreier(1);
    auto mem = enumerate_members(s1, 2, 4);
    std::vector<FinSet> expect = {FinSet{2},      FinSet{2, 3}, FinSet{2, 4},
                                  FinSet{3},      FinSet{3, 4}, FinSet{4}};
    CHECK(mem == expect);

    auto mx = maximal_sets(s1, 2, 4);
    std::vector<FinSet> expect_max = {FinSet{2, 3}, FinSet{2, 4}, FinSet{3, 4}};
    CHECK(mx == expect_max);

    auto mx0 = maximal_sets(FamilyDescriptor::schreier(0), 1, 3);
    std::vector<FinSet> expect0 = {FinSet{1}, FinSet{2}, FinSet{3}};
    CHECK(mx0 == expect0);

    auto mx2 = maximal_sets(FamilyDescriptor::schreier(2), 2, 7);
    bool has_full = false;
    for (const auto& f : mx2)
        if (f == FinSet{2, 3, 4, 5, 6, 7}) has_full = true;
    CHECK(has_full);

    auto degenerate = maximal_sets(FamilyDescriptor::explicit_family({}), 1, 3);
    CHECK(degenerate.size() == 1);
    CHECK(degenerate[0].empty());

    CHECK_THROWS_AS(enumerate_members(s1, 1, 100), Error);
}

TEST_CASE("tree decomposition") {
    auto t1 = tree_decompose({FinSet{4}, FinSet{5}, FinSet{6}, FinSet{7}}, 1);
    CHECK(t1.height() == 1);
    CHECK(t1.nodes[t1.root].children.size() == 4);
    CHECK(check_adm_tree(t1));

    std::vector<FinSet> singles;
    for (Idx v = 2; v <= 7; ++v) singles.push_back(FinSet{v});
    auto t2 = tree_decompose(singles, 2);
    CHECK(t2.height() == 2);
    CHECK(t2.nodes[t2.root].children.size() == 2);
    CHECK(t2.nodes[t2.root].set == FinSet{2, 3, 4, 5, 6, 7});
    CHECK(check_adm_tree(t2));
    auto terms = t2.terminals();
    REQUIRE(terms.size() == singles.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        CHECK(t2.nodes[terms[i]].set == singles[i]);
    CHECK(t2.nodes[t2.nodes[t2.root].children[0]].set == FinSet{2, 3});
    CHECK(t2.nodes[t2.nodes[t2.root].children[1]].set == FinSet{4, 5, 6, 7});

    CHECK_THROWS_AS(tree_decompose({FinSet{1}, FinSet{2}}, 1), Error);

    auto t0 = tree_decompose({FinSet{5, 6}}, 0);
    CHECK(t0.height() == 0);
    CHECK(check_adm_tree(t0));

    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Idx at = rng.in(2, 5);
        std::vector<FinSet> seq;
        for (int k = 0, kn = static_cast<int>(rng.in(1, 6)); k < kn; ++k) {
            std::vector<Idx> els;
            for (Idx len = rng.in(1, 3); len > 0; --len) els.push_back(at++);
            seq.emplace_back(els);
            at += rng.below(2);
        }
        if (!is_admissible(seq, FamilyDescriptor::schreier(2))) continue;
        auto t = tree_decompose(seq, 2);
        CHECK(check_adm_tree(t));
        CHECK(t.height() <= 2);
        auto tt = t.terminals();
        REQUIRE(tt.size() == seq.size());
        for (std::size_t i = 0; i < tt.size(); ++i) CHECK(t.nodes[tt[i]].set == seq[i]);
    }
}

TEST_CASE("family mass pins") {
    auto quarter = flat(1, {{4, Rat(1, 4)}, {5, Rat(1, 4)}, {6, Rat(1, 4)}, {7, Rat(1, 4)}});
    CHECK(family_mass(quarter, FamilyDescriptor::schreier(0)) == Rat(1, 4));
    CHECK(family_mass(quarter, FamilyDescriptor::schreier(1)) == Rat(1));
    CHECK(family_mass(C00Vector(), FamilyDescriptor::schreier(1)) == Rat(0));
}

TEST_CASE("family mass agrees with the exhaustive oracle") {
    Rng rng(31337);
    for (int trial = 0; trial < 150; ++trial) {
        int n = static_cast<int>(rng.in(0, 2));
        std::vector<std::pair<Idx, Rat>> pts;
        Idx at = rng.in(1, 4);
        for (int k = 0, kn = static_cast<int>(rng.in(1, 9)); k < kn; ++k) {
            pts.push_back({at, Rat(1) / rat_of(1 + rng.below(16))});
            at += rng.in(1, 3);
        }
        auto x = flat(1, pts);
        auto fam = FamilyDescriptor::schreier(n);
        CHECK(family_mass(x, fam) == oracle::mass(x, fam));
    }
}

TEST_CASE("wide family mass") {
    // support of 640 points, far beyond the subset scan
    C00Vector x(1, {{5, 40, 1, Rat(1, 4)}, {50, 100, 1, Rat(1, 8)}, {200, 500, 1, Rat(1, 100)}});
    REQUIRE(x.width() == 640);
    REQUIRE(x.nonincreasing());

    // materialized reference: best window of min(value, remaining) points
    std::vector<Idx> vals;
    std::vector<Rat> mags;
    for (const auto& r : x.runs())
        for (Idx k = 0; k < r.len; ++k) {
            vals.push_back(r.start + k);
            mags.push_back(r.mag_p);
        }
    Rat expect(0);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        Idx c = std::min<Idx>(vals[i], static_cast<Idx>(vals.size() - i));
        Rat sum(0);
        for (Idx k = 0; k < c; ++k) sum += mags[i + static_cast<std::size_t>(k)];
        if (sum > expect) expect = sum;
    }
    CHECK(family_mass(x, FamilyDescriptor::schreier(1)) == expect);

    // whole support a member: mass is the total
    C00Vector y(1, {{100, 50, 1, Rat(1, 9)}});
    CHECK(family_mass(y, FamilyDescriptor::schreier(1)) == Rat(50, 9));
    CHECK(family_mass(y, FamilyDescriptor::omega()) == Rat(50, 9));

    // level 0 never needs enumeration
    CHECK(family_mass(x, FamilyDescriptor::schreier(0)) == Rat(1, 4));

    // wide, not a member, not nonincreasing: refused
    C00Vector z(1, {{5, 40, 1, Rat(1, 8)}, {50, 100, 1, Rat(1, 4)}});
    CHECK_THROWS_AS(family_mass(z, FamilyDescriptor::schreier(1)), Error);
}

TEST_CASE("wide mass agrees with the reference on random nonincreasing profiles") {
    Rng rng(555);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<C00Vector::Run> runs;
        Idx at = rng.in(2, 30);
        int den = 2;
        for (int r = 0, rn = static_cast<int>(rng.in(2, 6)); r < rn; ++r) {
            Idx len = rng.in(5, 60);
            den += static_cast<int>(rng.below(40));
            runs.push_back({at, len, 1, Rat(1, den)});
            at += len + rng.below(20);
        }
        C00Vector x(1, std::move(runs));
        if (x.width() <= 16) continue;

        std::vector<Idx> vals;
        std::vector<Rat> mags;
        for (const auto& r : x.runs())
            for (Idx k = 0; k < r.len; ++k) {
                vals.push_back(r.start + k);
                mags.push_back(r.mag_p);
            }
        Rat expect(0);
        bool whole = static_cast<Idx>(vals.size()) <= vals[0];
        for (std::size_t i = 0; i < vals.size() && !whole; ++i) {
            Idx c = std::min<Idx>(vals[i], static_cast<Idx>(vals.size() - i));
            Rat sum(0);
            for (Idx k = 0; k < c; ++k) sum += mags[i + static_cast<std::size_t>(k)];
            if (sum > expect) expect = sum;
        }
        if (whole) expect = x.total_mass();
        CHECK(family_mass(x, FamilyDescriptor::schreier(1)) == expect);
    }
}

TEST_CASE("symbolic topological indices") {
    CHECK(cb_symbolic(FamilyDescriptor::schreier(0)).str() == "2");
    CHECK(cb_symbolic(FamilyDescriptor::schreier(1)).str() == "w+1");
    CHECK(cb_symbolic(FamilyDescriptor::schreier(2)).str() == "w^2+1");
    CHECK(cb_symbolic(FamilyDescriptor::omega()).str() == "w^w+1");
    CHECK(cb_symbolic(FamilyDescriptor::s1of(FamilyDescriptor::schreier(1))).str() == "w^2+1");
    CHECK(cb_symbolic(FamilyDescriptor::s1of(FamilyDescriptor::omega())).str() == "w^(w+1)+1");
    CHECK_THROWS_AS(cb_symbolic(FamilyDescriptor::explicit_family({FinSet{1}})), Error);
}

TEST_CASE("explicit topological indices") {
    CHECK(cb_explicit(FamilyDescriptor::explicit_family({})) == 1);
    CHECK(cb_explicit(FamilyDescriptor::explicit_family({FinSet{1}, FinSet{2}, FinSet{3}})) == 1);
    std::vector<FinSet> pairs;
    for (Idx k = 1; k <= 9; ++k) pairs.push_back(FinSet{k, k + 1});
    CHECK(cb_explicit(FamilyDescriptor::explicit_family(pairs)) == 2);
    CHECK_THROWS_AS(cb_explicit(FamilyDescriptor::schreier(1)), Error);
}
