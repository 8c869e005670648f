#include "tsi/domination.hpp"

#include "tsi/errors.hpp"
#include "tsi/norm.hpp"
#include "tsi/rational.hpp"
#include "tsi/schreier.hpp"
#include "tsi/specialvec.hpp"

#include <string>
#include <tuple>
#include <utility>

namespace tsi {

namespace {

// restriction of a to [n, infinity), preserving runs
C00Vector tail_from(const C00Vector& a, Idx n) {
    std::vector<C00Vector::Run> runs;
    for (auto run : a.runs()) {
        Idx end = run.start + run.len;
        if (end <= n) continue;
        if (run.start < n) {
            run.len = end - n;
            run.start = n;
        }
        runs.push_back(run);
    }
    return C00Vector(a.p(), std::move(runs));
}

} // namespace

DeltaStarResult delta_star_estimate(const SpaceSpec& spaceX, const SpaceSpec& spaceY,
                                    const FamilyDescriptor& family, int n, Idx dim,
                                    const Budget& budget) {
    if (spaceX.p() != spaceY.p()) fail(Err::BadInput, "spaces must share the power");
    if (n < 0) fail(Err::BadInput, "level must be nonnegative");
    if (dim < 1) fail(Err::Infeasible, "no support fits inside the dimension");
    const int p = spaceX.p();
    const Rat cap = rat_pow(Rat(1, 2), static_cast<unsigned>(n) * static_cast<unsigned>(p));

    BudgetClock clock(budget);
    Rng rng(budget.seed);
    bool found = false;
    DeltaStarResult best;

    // rescales the candidate onto the constraint boundary, re-verifies both
    // constraints on the witness itself, then scores it in the first space
    auto consider = [&](const C00Vector& a) {
        if (a.empty() || a.max_supp() > dim) return;
        Rat u, v;
        try {
            u = norm_p(a, spaceY);
            v = restriction_max(a, family, spaceY);
        } catch (const Error&) {
            return;
        }
        if (u == 0) return;
        Rat s = Rat(1) / u;
        if (v > 0) {
            Rat alt = cap / v;
            if (alt < s) s = alt;
        }
        C00Vector w = a.scale_mag(s);
        Rat value;
        try {
            if (norm_p(w, spaceY) > 1) return;
            if (restriction_max(w, family, spaceY) > cap) return;
            value = norm_p(w, spaceX);
        } catch (const Error&) {
            return;
        }
        if (!found || value > best.lower) {
            best = DeltaStarResult{value, w};
            found = true;
        }
    };

    if (clock.tick()) consider(C00Vector::unit(p, 1));
    const std::pair<int, Idx> recipes[] = {{1, 2}, {1, 4}, {1, 8}, {1, 16}, {1, 32}, {2, 4}};
    for (auto [k, s] : recipes) {
        if (!clock.tick()) break;
        try {
            consider(C00Vector(p, repeated_averages(k, s).runs()));
        } catch (const Error&) {
        }
    }

    // random rational vectors on a fixed 64-point grid; candidates past dim
    // still consume budget, which keeps the stream identical across dims
    while (clock.tick()) {
        int w = 1 + static_cast<int>(rng.in(0, 9));
        std::vector<std::tuple<Idx, Rat, int>> entries;
        Idx cur = 1 + rng.in(0, 15);
        for (int i = 0; i < w && cur <= 64; ++i) {
            entries.emplace_back(cur,
                                 Rat(static_cast<int>(1 + rng.in(0, 7)),
                                     static_cast<int>(1 + rng.in(0, 7))),
                                 rng.flip() ? 1 : -1);
            cur += 1 + rng.in(0, 7);
        }
        consider(C00Vector::from_entries(p, std::move(entries)));
    }

    if (!found) fail(Err::Infeasible, "no feasible vector at this dimension");
    return best;
}

TriangleReport triangle_holds(const C00Vector& a, const SpaceSpec& spaceX,
                              const SpaceSpec& spaceY,
                              const std::vector<std::pair<int, FamilyDescriptor>>& families) {
    TriangleReport rep;
    rep.rhs = Rat(0);
    if (a.empty()) {
        rep.lhs = Rat(0);
        rep.holds = true;
        return rep;
    }
    rep.lhs = norm_p(a, spaceX);
    const unsigned pw = static_cast<unsigned>(spaceY.p());
    for (const auto& [n, fam] : families) {
        if (n < 0) fail(Err::BadInput, "levels must be nonnegative");
        C00Vector t = tail_from(a, n);
        if (t.empty()) continue;
        Rat term = rat_pow(Rat(1, 2), static_cast<unsigned>(n) * pw) *
                   restriction_max(t, fam, spaceY);
        if (term > rep.rhs) rep.rhs = term;
    }
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

TsiStarReport tsistar_check(const std::vector<std::pair<int, Rat>>& pairs, const Rat& theta,
                            int n, const std::vector<C00Vector>& sample) {
    if (pairs.empty()) fail(Err::BadInput, "no weights listed");
    if (theta <= 0 || theta > 1) fail(Err::BadInput, "theta must lie in (0, 1]");
    if (n < 0) fail(Err::BadInput, "level must be nonnegative");
    for (const auto& [l, th] : pairs) {
        if (th > rat_pow(theta, static_cast<unsigned>(l)))
            fail(Err::PreconditionFailed,
                 "weight at level " + std::to_string(l) + " exceeds theta^l");
    }

    const int p = sample.empty() ? 1 : sample.front().p();
    auto mixed = SpaceSpec::make(p, pairs);
    auto single = SpaceSpec::make(p, {{1, theta}});

    TsiStarReport rep;
    rep.gap = Rat(0);
    bool listed = false;
    for (const auto& [l, th] : pairs) {
        if (l < n) continue;
        listed = true;
        Rat g = th / rat_pow(theta, static_cast<unsigned>(l));
        if (g > rep.gap) rep.gap = g;
    }
    if (n >= 1 && !listed) fail(Err::BadInput, "no listed level at or above n");

    auto fam = FamilyDescriptor::schreier(n);
    for (const auto& a : sample) {
        if (a.empty()) continue;
        if (a.p() != p) fail(Err::BadInput, "samples must share the power");
        ++rep.checked;
        Rat lz = norm_p(a, mixed);
        Rat lt = norm_p(a, single);
        bool bad = lz > lt;  // p-th powers compare like the norms themselves
        bool settled = true;
        if (!bad && n >= 1) {
            Rat rmax = restriction_max(a, fam, single);
            Rat tail = rep.gap * lt;
            if (p == 1) {
                bad = lz > rmax + tail;
            } else {
                settled = false;
                Rat tol(1, 1000000000);
                for (int it = 0; it < 40 && !settled; ++it, tol /= rat_of(1024)) {
                    auto rz = nth_root_bounds(lz, p, tol);
                    auto ra = nth_root_bounds(rmax, p, tol);
                    auto rb = nth_root_bounds(tail, p, tol);
                    if (rz.hi <= ra.lo + rb.lo) {
                        settled = true;
                    } else if (rz.lo > ra.hi + rb.hi) {
                        settled = true;
                        bad = true;
                    }
                }
            }
        }
        if (!settled) {
            ++rep.inconclusive;
        } else if (bad) {
            ++rep.violations;
            if (!rep.first_violation) rep.first_violation = a;
        }
    }
    return rep;
}

} // namespace tsi
