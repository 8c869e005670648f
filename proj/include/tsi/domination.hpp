#pragma once

#include "tsi/budget.hpp"
#include "tsi/family.hpp"
#include "tsi/space.hpp"
#include "tsi/vector.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tsi {

// All scalar inputs and outputs below are p-th powers, like the norm layer.

struct DeltaStarResult {
    Rat lower;         // value of the witness in the first space
    C00Vector witness; // satisfies both constraints in the second space exactly
};

// best found coefficient vector with restriction maximum at most 2^{-np} over
// the family and norm at most 1 in spaceY, evaluated in spaceX; supports are
// capped at dim and every candidate is rescaled onto the constraint boundary
DeltaStarResult delta_star_estimate(const SpaceSpec& spaceX, const SpaceSpec& spaceY,
                                    const FamilyDescriptor& family, int n, Idx dim,
                                    const Budget& budget);

struct TriangleReport {
    bool holds = false;
    Rat lhs;
    Rat rhs;
};

// compares norm_p(a) in spaceX against the largest of
// 2^{-np} * restriction_max(tail of a from n, family, spaceY) over the
// supplied list; the list truncates the full comparison
TriangleReport triangle_holds(const C00Vector& a, const SpaceSpec& spaceX,
                              const SpaceSpec& spaceY,
                              const std::vector<std::pair<int, FamilyDescriptor>>& families);

struct TsiStarReport {
    int checked = 0;
    int violations = 0;    // an inequality refuted exactly
    int inconclusive = 0;  // root brackets failed to separate (power >= 2 only)
    Rat gap;               // max over listed l >= n of theta_l / theta^l
    std::optional<C00Vector> first_violation;
};

// verifies, for every sample vector a, that the mixed-space norm is bounded
// by the single-weight norm, and by the level-n restriction maximum plus the
// gap term; any violation witnesses an engine defect
TsiStarReport tsistar_check(const std::vector<std::pair<int, Rat>>& pairs, const Rat& theta,
                            int n, const std::vector<C00Vector>& sample);

} // namespace tsi
