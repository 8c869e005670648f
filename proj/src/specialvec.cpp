#include "tsi/specialvec.hpp"

#include "tsi/errors.hpp"
#include "tsi/norm.hpp"
#include "tsi/schreier.hpp"

#include <optional>
#include <string>
#include <utility>

namespace tsi {

namespace {

constexpr Idx kAverageRunCap = 4096;
constexpr Idx kAverageIndexCap = Idx(1) << 56;
constexpr Idx kFlattenWidthCap = 64;

// appends the blocks of the maximal level-n set starting at s, every
// coefficient scaled by w; returns one past the final support index
Idx emit_average(int n, Idx s, const Rat& w, std::vector<C00Vector::Run>& out) {
    if (s > kAverageIndexCap) fail(Err::EnumerationLimit, "support indices overflow the representation");
    if (static_cast<Idx>(out.size()) >= kAverageRunCap)
        fail(Err::EnumerationLimit, "average needs too many runs at this level");
    if (n == 0) {
        out.push_back({s, 1, 1, w});
        return s + 1;
    }
    if (n == 1) {
        out.push_back({s, s, 1, w / rat_of(s)});
        return 2 * s;
    }
    Idx cur = s;
    Rat share = w / rat_of(s);
    for (Idx i = 0; i < s; ++i) cur = emit_average(n - 1, cur, share, out);
    return cur;
}

} // namespace

C00Vector repeated_averages(int n, Idx start) {
    if (n < 0) fail(Err::BadInput, "level must be nonnegative");
    if (start < 1) fail(Err::BadInput, "start must be at least 1");
    std::vector<C00Vector::Run> runs;
    emit_average(n, start, Rat(1), runs);
    return C00Vector(1, std::move(runs));
}

EstBasisResult est_basis_vector(const SpaceSpec& space, int n, Idx start) {
    if (n < 0) fail(Err::BadInput, "level must be nonnegative");
    if (n == 0) return {C00Vector::unit(space.p(), start), Rat(0), Rat(1)};
    auto th = space.theta(n);
    if (!th) fail(Err::BadInput, "space lists no weight at this level");

    C00Vector profile = repeated_averages(n, start);
    C00Vector x(space.p(), profile.runs());
    Rat delta = family_mass(profile, FamilyDescriptor::schreier(n - 1));
    Rat value = norm_p(x, space);

    unsigned p = static_cast<unsigned>(space.p());
    if (p == 1) {
        Rat bound = delta + *th;
        if (value > bound) fail(Err::BoundsTooTight, "norm exceeds the average bound");
        return {x, delta, bound};
    }
    Rat tol(1, 1000000000);
    for (int iter = 0; iter < 40; ++iter) {
        auto rd = nth_root_bounds(delta, static_cast<int>(p), tol);
        auto rt = nth_root_bounds(*th, static_cast<int>(p), tol);
        Rat lo = rat_pow(rd.lo + rt.lo, p);
        Rat hi = rat_pow(rd.hi + rt.hi, p);
        if (value <= lo) return {x, delta, hi};
        if (value > hi) fail(Err::BoundsTooTight, "norm exceeds the average bound");
        tol /= rat_of(1024);
    }
    fail(Err::ToleranceUnreachable, "cannot separate the norm from the average bound");
}

namespace {

struct CertifiedRatio {
    Rat rmax;
    Rat lower;
};

std::optional<CertifiedRatio> certify_flat(const C00Vector& w, int beta, const SpaceSpec& space) {
    Rat rmax, lower;
    try {
        rmax = restriction_max(w, FamilyDescriptor::schreier(beta), space);
    } catch (const Error&) {
        return std::nullopt;
    }
    try {
        lower = norm_p(w, space);
    } catch (const Error&) {
        lower = norm_bounds(w, space).lower;
    }
    if (lower <= 0) return std::nullopt;
    return CertifiedRatio{rmax, lower};
}

// the level-2 average over [4, 64) plus a trailing block at 64 of the given
// mass; the tail pushes the norm strictly past the level-1 window mass
C00Vector layered_profile(int p, const Rat& tail_mass) {
    std::vector<C00Vector::Run> runs = {
        {4, 4, 1, Rat(1, 16)},
        {8, 8, 1, Rat(1, 32)},
        {16, 16, 1, Rat(1, 64)},
        {32, 32, 1, Rat(1, 128)},
    };
    if (tail_mass > 0) runs.push_back({64, 4, 1, tail_mass / 4});
    return C00Vector(p, std::move(runs));
}

} // namespace

FlattenResult flatten(const SpaceSpec& space, int beta, const Rat& eps, const Budget& budget) {
    if (beta < 0 || beta > 2) fail(Err::BadInput, "level outside the supported range");
    if (eps <= 0) fail(Err::BadInput, "eps must be positive");
    Rat eps_p = rat_pow(eps, static_cast<unsigned>(space.p()));
    BudgetClock clock(budget);
    Rng rng(budget.seed);
    Rat best(-1);
    std::uint64_t used = 0;

    auto attempt = [&](const C00Vector& w) -> std::optional<FlattenResult> {
        ++used;
        auto c = certify_flat(w, beta, space);
        if (!c) return std::nullopt;
        Rat ratio = c->rmax / c->lower;
        if (best < 0 || ratio < best) best = ratio;
        if (c->rmax < eps_p * c->lower) return FlattenResult{w, c->rmax, c->lower, ratio, used};
        return std::nullopt;
    };

    if (eps > 1 && clock.tick()) {
        if (auto r = attempt(C00Vector::unit(space.p(), 1))) return *r;
    }

    if (beta == 0) {
        // flat blocks: the single-point maximum shrinks with the width while
        // the norm stays bounded below by the whole-block split
        for (Idx m = 2; m <= (Idx(1) << 40) && clock.tick(); m *= 2) {
            C00Vector w(space.p(), {{m, m, 1, Rat(1) / rat_of(m)}});
            if (auto r = attempt(w)) return *r;
        }
    } else {
        static const Rat kTails[] = {Rat(0),      Rat(1, 64), Rat(1, 128),
                                     Rat(1, 256), Rat(1, 32), Rat(1, 16)};
        for (const Rat& t : kTails) {
            if (!clock.tick()) break;
            if (auto r = attempt(layered_profile(space.p(), t))) return *r;
        }
        while (clock.tick()) {
            // random nonincreasing five-block profiles within the width cap
            static const Idx starts[] = {4, 8, 16, 32, 64};
            static const Idx lens[] = {4, 8, 16, 32, kFlattenWidthCap - 60};
            Rat v(1, static_cast<int>(1 + rng.in(1, 8)));
            std::vector<C00Vector::Run> runs;
            for (int k = 0; k < 5; ++k) {
                runs.push_back({starts[k], lens[k], 1, v});
                v /= rat_of(1 + rng.in(1, 3));
            }
            if (auto r = attempt(C00Vector(space.p(), std::move(runs)))) return *r;
        }
    }
    fail(Err::BudgetExhausted,
         "best ratio found " + (best < 0 ? std::string("(none)") : rat_str(best)));
}

} // namespace tsi
