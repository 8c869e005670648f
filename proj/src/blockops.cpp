#include "tsi/blockops.hpp"

#include "tsi/errors.hpp"
#include "tsi/norm.hpp"
#include "tsi/schreier.hpp"
#include "tsi/specialvec.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>

namespace tsi {

namespace {

constexpr Idx kSectionWidthCap = 64;

C00Vector negate_all(const C00Vector& v) {
    return v.flip_signs(std::vector<bool>(static_cast<std::size_t>(v.width()), true));
}

// smallest verified family level containing every support, -1 when none of
// the probed levels works
int probe_level(const std::vector<C00Vector>& blocks) {
    for (int r = 0; r <= 6; ++r) {
        bool all = true;
        for (const auto& b : blocks) {
            if (b.width() > kSectionWidthCap) return -1;
            if (!member(b.support_set(kSectionWidthCap), FamilyDescriptor::schreier(r))) {
                all = false;
                break;
            }
        }
        if (all) return r;
    }
    return -1;
}

} // namespace

BlockSeq BlockSeq::make(std::vector<C00Vector> blocks, const SpaceSpec& space, int r,
                        const Rat& c) {
    if (blocks.empty()) fail(Err::BadInput, "a block sequence needs at least one block");
    if (c <= 0) fail(Err::BadInput, "the comparison constant must be positive");
    Idx frontier = 0;
    for (auto& b : blocks) {
        if (b.empty()) fail(Err::EmptyVector, "blocks must be nonzero");
        if (b.p() != space.p()) fail(Err::BadInput, "block power differs from the space");
        if (b.min_supp() <= frontier) fail(Err::BadInput, "blocks must be successive");
        frontier = b.max_supp();
        Rat v = norm_p(b, space);
        if (v != 1) b = b.scale_mag(Rat(1) / v);
    }
    if (r >= 0) {
        auto fam = FamilyDescriptor::schreier(r);
        for (const auto& b : blocks) {
            if (!member(b.support_set(kSectionWidthCap), fam))
                fail(Err::NotAdmissible, "a support falls outside the recorded family level");
        }
    }
    BlockSeq seq;
    seq.blocks = std::move(blocks);
    seq.r = r;
    seq.c = c;
    return seq;
}

nlohmann::json BlockSeq::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& b : blocks) arr.push_back(b.to_json());
    return {{"blocks", arr}, {"r", r}, {"c", rat_str(c)}};
}

BlockSeq BlockSeq::from_json(const nlohmann::json& j, const SpaceSpec& space) {
    if (!j.is_object() || !j.contains("blocks"))
        fail(Err::BadInput, "block sequence JSON needs a blocks array");
    std::vector<C00Vector> blocks;
    for (const auto& bj : j.at("blocks")) blocks.push_back(C00Vector::from_json(bj));
    int r = j.value("r", -1);
    Rat c = j.contains("c") ? rat_parse(j.at("c").get<std::string>()) : Rat(1);
    return make(std::move(blocks), space, r, c);
}

Theta3Result theta3_min_ratio(const BlockSeq& seq, int M, const Rat& theta,
                              const SpaceSpec& space, const Budget& budget) {
    if (M < 0) fail(Err::BadInput, "level must be nonnegative");
    const int p = space.p();
    auto tspace = SpaceSpec::make(p, {{1, theta}});
    const Idx len = static_cast<Idx>(seq.blocks.size());
    auto members = enumerate_members(FamilyDescriptor::schreier(M), 1, len);

    Theta3Result out;
    bool found = false;
    BudgetClock clock(budget);
    Rng rng(budget.seed);

    auto evaluate = [&](const FinSet& g, const std::vector<std::pair<Rat, int>>& coeffs) {
        C00Vector num;
        std::vector<std::tuple<Idx, Rat, int>> dens, args;
        Idx width = 0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const auto& [mag, sign] = coeffs[j];
            if (mag == 0) continue;
            const C00Vector& b = seq.blocks[static_cast<std::size_t>(g.at(j)) - 1];
            width += b.width();
            if (width > kSectionWidthCap) return;
            C00Vector sb = b.scale_mag(mag);
            if (sign < 0) sb = negate_all(sb);
            num = num.empty() ? sb : C00Vector::merge_disjoint(num, sb);
            dens.emplace_back(b.min_supp(), mag, sign);
            args.emplace_back(g.at(j), mag, sign);
        }
        if (num.empty()) return;
        Rat dv = norm_p(C00Vector::from_entries(p, std::move(dens)), tspace);
        if (dv == 0) return;
        Rat ratio = norm_p(num, space) / dv;
        if (!found || ratio < out.minratio) {
            out.minratio = ratio;
            out.argmin_set = g;
            out.argmin_coeffs = C00Vector::from_entries(p, std::move(args));
            found = true;
        }
    };

    // decreasing point profile from a deep average, renormalized over k slots
    auto average_coeffs = [&](std::size_t k) {
        Idx s = 2;
        while (static_cast<std::size_t>(repeated_averages(2, s).width()) < k) s += 1;
        C00Vector z = repeated_averages(2, s);
        auto pts = z.support_points(z.width());
        Rat total(0);
        std::vector<std::pair<Rat, int>> coeffs;
        for (std::size_t j = 0; j < k; ++j) {
            Rat m = z.mag_at(pts[j]);
            total += m;
            coeffs.emplace_back(m, 1);
        }
        for (auto& cm : coeffs) cm.first /= total;
        return coeffs;
    };

    bool planned_done = true;
    for (const auto& g : members) {
        if (g.empty()) continue;
        for (int pattern = 0; pattern < 3 && planned_done; ++pattern) {
            if (!clock.tick()) {
                planned_done = false;
                break;
            }
            std::vector<std::pair<Rat, int>> coeffs;
            switch (pattern) {
            case 0: coeffs.assign(g.size(), {Rat(1), 1}); break;
            case 1: coeffs.assign(g.size(), {rat_pow(Rat(1, static_cast<int>(g.size())),
                                                     static_cast<unsigned>(p)),
                                             1}); break;
            default: coeffs = average_coeffs(g.size()); break;
            }
            evaluate(g, coeffs);
        }
        if (!planned_done) break;
    }
    out.exhausted = !planned_done;

    while (planned_done && !members.empty() && clock.tick()) {
        const FinSet& g = members[static_cast<std::size_t>(rng.below(
            static_cast<Idx>(members.size())))];
        if (g.empty()) continue;
        std::vector<std::pair<Rat, int>> coeffs;
        for (std::size_t j = 0; j < g.size(); ++j) {
            coeffs.emplace_back(Rat(static_cast<int>(1 + rng.below(4)),
                                    static_cast<int>(1 + rng.below(4))),
                                rng.flip() ? 1 : -1);
        }
        evaluate(g, coeffs);
    }

    if (!found) fail(Err::BadInput, "no evaluable index set at this level");
    return out;
}

BlockSeq build_y(const std::vector<BlockSeq>& families, const std::vector<Idx>& J,
                 const SpaceSpec& space) {
    if (families.empty()) fail(Err::BadInput, "at least one family is required");
    if (J.empty()) fail(Err::BadInput, "at least one output index is required");
    Idx prev = 0;
    for (Idx i : J) {
        if (i <= prev) fail(Err::BadInput, "output indices must increase");
        prev = i;
    }
    const int p = space.p();
    const unsigned pw = static_cast<unsigned>(p);

    std::vector<std::size_t> cursor(families.size(), 0);
    Idx frontier = 0;
    std::vector<C00Vector> out;
    for (Idx i : J) {
        std::size_t depth = std::min<std::size_t>(static_cast<std::size_t>(i), families.size());
        C00Vector yi;
        for (std::size_t n = 1; n <= depth; ++n) {
            const auto& fam = families[n - 1].blocks;
            auto& cur = cursor[n - 1];
            while (cur < fam.size() && fam[cur].min_supp() <= frontier) ++cur;
            if (cur == fam.size())
                fail(Err::CannotInterleave,
                     "family " + std::to_string(n) + " has no block past the frontier");
            const C00Vector& b = fam[cur++];
            frontier = b.max_supp();
            C00Vector sb = b.scale_mag(rat_pow(Rat(1, 2), static_cast<unsigned>(n) * pw));
            yi = yi.empty() ? sb : C00Vector::merge_disjoint(yi, sb);
        }
        out.push_back(std::move(yi));
    }
    int level = probe_level(out);
    return BlockSeq::make(std::move(out), space, level);
}

std::vector<std::pair<Rat, Rat>> operator_ratios(const BlockSeq& y, const SpaceSpec& spaceY,
                                                 const BlockSeq& x, const SpaceSpec& spaceX,
                                                 const std::vector<C00Vector>& probes) {
    if (x.blocks.size() != y.blocks.size())
        fail(Err::LengthMismatch, "the sequences differ in length");
    const Idx len = static_cast<Idx>(x.blocks.size());

    auto apply = [len](const BlockSeq& seq, const C00Vector& a) {
        C00Vector sum;
        for (Idx i : a.support_points(len)) {
            C00Vector sb = seq.blocks[static_cast<std::size_t>(i) - 1].scale_mag(a.mag_at(i));
            if (a.sign_at(i) < 0) sb = negate_all(sb);
            sum = sum.empty() ? sb : C00Vector::merge_disjoint(sum, sb);
        }
        return sum;
    };

    std::vector<std::pair<Rat, Rat>> out;
    for (const auto& a : probes) {
        if (a.empty() || a.max_supp() > len)
            fail(Err::BadInput, "probe coefficients must target the sequence index range");
        out.emplace_back(norm_p(apply(x, a), spaceX), norm_p(apply(y, a), spaceY));
    }
    return out;
}

} // namespace tsi
