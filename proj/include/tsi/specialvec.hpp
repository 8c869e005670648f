#pragma once

#include "tsi/budget.hpp"
#include "tsi/space.hpp"
#include "tsi/vector.hpp"

#include <cstdint>

namespace tsi {

// Hierarchical uniform averages: level 0 is a unit vector, level n averages
// the maximal level-(n-1) blocks a maximal Schreier(n) set admits. The result
// carries the coefficients as p=1 magnitudes and sums to 1 exactly.
C00Vector repeated_averages(int n, Idx start);

struct EstBasisResult {
    C00Vector x;  // p-power magnitudes follow the level-n average profile
    Rat delta;    // exact Schreier(n-1) mass of the profile
    Rat bound;    // certified upper value of (delta^{1/p} + theta_n^{1/p})^p
};

// Builds the level-n average as a vector of the space, measures its
// Schreier(n-1) mass and certifies norm_p(x) <= (delta^{1/p}+theta_n^{1/p})^p.
EstBasisResult est_basis_vector(const SpaceSpec& space, int n, Idx start);

struct FlattenResult {
    C00Vector w;
    Rat restriction;  // exact p-power restriction maximum at level beta
    Rat norm_lower;   // certified lower bound on norm_p(w), exact when narrow
    Rat ratio;        // restriction / norm_lower
    std::uint64_t candidates = 0;
};

// Searches for w with restriction_max(w, Schreier(beta)) < eps^p * norm_p(w),
// certifying every returned vector through the norm engine. Throws
// BudgetExhausted with the best ratio seen when the search comes up empty.
FlattenResult flatten(const SpaceSpec& space, int beta, const Rat& eps, const Budget& budget);

} // namespace tsi
