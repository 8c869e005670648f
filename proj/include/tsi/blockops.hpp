#pragma once

#include "tsi/budget.hpp"
#include "tsi/finset.hpp"
#include "tsi/space.hpp"
#include "tsi/vector.hpp"

#include <json.hpp>

#include <utility>
#include <vector>

namespace tsi {

// successive blocks, each rescaled to norm_p exactly 1 in the given space;
// r, when nonnegative, is a verified family level containing every support,
// and c carries a caller-supplied comparison constant
struct BlockSeq {
    std::vector<C00Vector> blocks;
    int r = -1;
    Rat c = Rat(1);

    static BlockSeq make(std::vector<C00Vector> blocks, const SpaceSpec& space, int r = -1,
                         const Rat& c = Rat(1));

    nlohmann::json to_json() const;
    static BlockSeq from_json(const nlohmann::json& j, const SpaceSpec& space);
};

struct Theta3Result {
    Rat minratio;
    FinSet argmin_set;        // block indices
    C00Vector argmin_coeffs;  // coefficients over those indices, p-power form
    bool exhausted = false;   // the budget ran out inside the planned sweep
};

// minimum over searched index sets G in the level-M family and coefficient
// patterns of norm_p(sum_{i in G} a_i x_i) against the single-weight norm of
// the same coefficients on the minimum-support basis positions
Theta3Result theta3_min_ratio(const BlockSeq& seq, int M, const Rat& theta,
                              const SpaceSpec& space, const Budget& budget);

// y_i = sum over n <= min(i, #families) of 2^{-n} times the next block of
// family n past the frontier, for each i in J; the result is renormalized
BlockSeq build_y(const std::vector<BlockSeq>& families, const std::vector<Idx>& J,
                 const SpaceSpec& space);

// finite sections of the basis map y_i -> x_i: for each probe a, the pair
// (norm_p of the image sum, norm_p of the preimage sum)
std::vector<std::pair<Rat, Rat>> operator_ratios(const BlockSeq& y, const SpaceSpec& spaceY,
                                                 const BlockSeq& x, const SpaceSpec& spaceX,
                                                 const std::vector<C00Vector>& probes);

} // namespace tsi
