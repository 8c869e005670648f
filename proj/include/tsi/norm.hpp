#pragma once

#include "tsi/certificate.hpp"
#include "tsi/family.hpp"
#include "tsi/space.hpp"
#include "tsi/vector.hpp"

#include <utility>
#include <vector>

namespace tsi {

// Exact p-th power of the mixed-family norm: the largest of the coefficient
// p-powers and, over every listed weight, the weighted sums over admissible
// successive interval partitions. Interval DP on supports up to 64 points;
// wider vectors are evaluated through certified bounds and accepted only when
// the bounds close.
Rat norm_p(const C00Vector& x, const SpaceSpec& space);

// rigorous two-sided bounds on norm_p for any support size; exact when
// lower == upper
struct NormBounds {
    Rat lower;
    Rat upper;
    bool exact = false;
};
NormBounds norm_bounds(const C00Vector& x, const SpaceSpec& space);

// partition tree reproducing norm_p(x) exactly under verify_certificate
NormCertificate norm_certificate(const C00Vector& x, const SpaceSpec& space);

// validates admissibility, characters, and leaves, then evaluates the tree;
// always a lower bound for norm_p(x)
Rat verify_certificate(const NormCertificate& cert, const C00Vector& x, const SpaceSpec& space);

// exhaustive oracle over partition trees of bounded depth whose pieces are
// arbitrary successive subsets, not just intervals
Rat brute_norm_p(const C00Vector& x, const SpaceSpec& space, int depth);

// exact max over members F of the family of norm_p(x restricted to F)
Rat restriction_max(const C00Vector& x, const FamilyDescriptor& family, const SpaceSpec& space);

// largest products of listed weights whose index sum reaches each n up to the
// horizon
std::vector<std::pair<int, Rat>> regularize(const std::vector<std::pair<int, Rat>>& pairs,
                                            int horizon);

// directed bounds on sup over listed n <= horizon of theta_n^(1/n)
std::pair<Rat, Rat> theta_sup_bounds(const std::vector<std::pair<int, Rat>>& pairs, int horizon,
                                     const Rat& tol = Rat(1, 1000000000));

} // namespace tsi
