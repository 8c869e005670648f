#include "tsi/asymptotics.hpp"

#include "tsi/errors.hpp"
#include "tsi/norm.hpp"
#include "tsi/schreier.hpp"
#include "tsi/specialvec.hpp"

#include <algorithm>
#include <utility>

namespace tsi {

namespace {

constexpr Idx kBlockWidthCap = 64;

// greedy consecutive fill from s: the widest member of the level-n family
// starting there; nullopt when it does not fit the exact engine
std::optional<std::vector<Idx>> capped_maximal(int n, Idx s) {
    SchreierAutomaton a(n);
    std::vector<Idx> pts;
    for (Idx v = s; a.step(v); ++v) {
        pts.push_back(v);
        if (static_cast<Idx>(pts.size()) > kBlockWidthCap) return std::nullopt;
    }
    if (pts.empty()) return std::nullopt;
    return pts;
}

// top-level blocks of the repeated average at the level: s successive copies
// one level down, each carrying mass 1/s
std::optional<std::vector<C00Vector>> average_blocks(int p, int n, Idx s) {
    std::vector<C00Vector> blocks;
    Idx cur = s;
    Idx total_width = 0;
    for (Idx j = 0; j < s; ++j) {
        C00Vector b;
        try {
            b = repeated_averages(n - 1, cur);
        } catch (const Error&) {
            return std::nullopt;
        }
        cur = b.max_supp() + 1;
        total_width += b.width();
        if (total_width > kBlockWidthCap) return std::nullopt;
        blocks.push_back(C00Vector(p, b.runs()).scale_mag(Rat(1) / rat_of(s)));
    }
    return blocks;
}

} // namespace

ThetaEstimate theta_n_estimate(const SpaceSpec& space, int n, std::optional<int> r,
                               const Budget& budget) {
    if (n < 1) fail(Err::BadInput, "level must be positive");
    if (r && *r < 0) fail(Err::BadInput, "support level must be nonnegative");
    const int p = space.p();
    const auto fam = FamilyDescriptor::schreier(n);
    const auto rfam = r ? FamilyDescriptor::schreier(*r) : FamilyDescriptor::schreier(0);

    ThetaEstimate out;
    BudgetClock clock(budget);
    Rng rng(budget.seed);

    // evaluates one block sequence; records strict improvements only, so the
    // earliest witness of the reported value is kept
    auto consider = [&](std::vector<C00Vector> blocks) {
        if (blocks.empty()) return;
        Idx width = 0;
        std::vector<FinSet> supports;
        for (const auto& b : blocks) {
            if (b.empty()) return;
            width += b.width();
            if (width > kBlockWidthCap) return;
            supports.push_back(b.support_set(kBlockWidthCap));
        }
        if (blocks.front().min_supp() < n) return;
        if (!is_admissible(supports, fam)) return;
        if (r) {
            for (std::size_t i = 0; i < blocks.size(); ++i) {
                if (!member(supports[i], rfam)) return;
                blocks[i] = blocks[i].scale_mag(Rat(1) / norm_p(blocks[i], space));
            }
        }
        Rat denom(0);
        C00Vector sum;
        for (const auto& b : blocks) {
            denom += norm_p(b, space);
            sum = sum.empty() ? b : C00Vector::merge_disjoint(sum, b);
        }
        if (denom == 0) return;
        Rat ratio = norm_p(sum, space) / denom;
        if (out.witness.empty() || ratio < out.upper) {
            out.upper = ratio;
            out.witness = std::move(blocks);
        }
    };

    // definitional fallback: a single block is its own admissible sequence
    consider({C00Vector::unit(p, std::max<Idx>(n, 1))});

    // planned sweep: unit blocks on maximal sets (the canonical start 4n
    // first), interval tilings of those sets, and repeated-averages blocks
    std::vector<Idx> starts = {4 * static_cast<Idx>(n)};
    for (Idx s = n; s <= n + 8; ++s)
        if (s != 4 * static_cast<Idx>(n)) starts.push_back(s);

    bool planned_done = true;
    auto planned = [&](auto&& gen) {
        if (!planned_done) return;
        if (!clock.tick()) {
            planned_done = false;
            return;
        }
        gen();
    };

    for (Idx s : starts) {
        planned([&] {
            if (auto f = capped_maximal(n, s)) {
                std::vector<C00Vector> blocks;
                for (Idx v : *f) blocks.push_back(C00Vector::unit(p, v));
                consider(std::move(blocks));
            }
        });
    }
    for (Idx s : starts) {
        planned([&] {
            auto f = capped_maximal(n, s);
            if (!f || f->size() < 2) return;
            std::vector<C00Vector> blocks;
            for (std::size_t i = 0; i < f->size(); ++i) {
                Idx lo = (*f)[i];
                Idx len = i + 1 < f->size() ? (*f)[i + 1] - lo : 1;
                blocks.push_back(C00Vector(p, {{lo, len, 1, Rat(1)}}));
            }
            consider(std::move(blocks));
        });
    }
    for (Idx s = std::max<Idx>(n, 2); s <= std::max<Idx>(n, 2) + 4; ++s) {
        planned([&] {
            if (auto blocks = average_blocks(p, n, s)) consider(std::move(*blocks));
        });
    }
    out.exhausted = !planned_done;

    // randomized tail: interval blocks with grid magnitudes over maximal sets
    while (planned_done && clock.tick()) {
        Idx s = n + static_cast<Idx>(rng.in(0, 10));
        auto f = capped_maximal(n, s);
        if (!f) continue;
        std::vector<C00Vector> blocks;
        for (std::size_t i = 0; i < f->size(); ++i) {
            Idx lo = (*f)[i];
            Idx gap = i + 1 < f->size() ? (*f)[i + 1] - lo : 4;
            Idx len = 1 + static_cast<Idx>(rng.in(0, std::min<Idx>(gap - 1, 3)));
            Rat mag(static_cast<int>(1 + rng.in(0, 3)), static_cast<int>(1 + rng.in(0, 3)));
            blocks.push_back(C00Vector(p, {{lo, len, rng.flip() ? 1 : -1, mag}}));
        }
        consider(std::move(blocks));
    }
    return out;
}

std::vector<SubmultFlag> submult_audit(const std::map<int, Rat>& estimates) {
    std::vector<SubmultFlag> flags;
    for (const auto& [n, en] : estimates) {
        for (const auto& [m, em] : estimates) {
            if (m < n) continue;
            auto it = estimates.find(n + m);
            if (it == estimates.end()) continue;
            Rat floor = en * em;
            if (it->second < floor) flags.push_back({n, m, floor, it->second});
        }
    }
    return flags;
}

} // namespace tsi
