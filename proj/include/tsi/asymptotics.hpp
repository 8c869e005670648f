#pragma once

#include "tsi/budget.hpp"
#include "tsi/space.hpp"
#include "tsi/vector.hpp"

#include <map>
#include <optional>
#include <vector>

namespace tsi {

// upper estimate for the largest constant bounding norm_p(sum x_i) against
// sum norm_p(x_i) over admissible block sequences at the given level
struct ThetaEstimate {
    Rat upper;
    std::vector<C00Vector> witness;
    bool exhausted = false;  // the budget ran out inside the planned sweep
};

// searches unit, interval, and repeated-averages block sequences whose
// supports start at or past the level; r restricts every block's support to
// the level-r family and switches to normalized blocks
ThetaEstimate theta_n_estimate(const SpaceSpec& space, int n, std::optional<int> r,
                               const Budget& budget);

struct SubmultFlag {
    int n = 0;
    int m = 0;
    Rat floor;  // product of the estimates at n and m
    Rat upper;  // reported estimate at n + m that fell below the product
};

// consistency audit of a table of certified-tight upper estimates: the value
// at n + m may never undercut the product of the values at n and m
std::vector<SubmultFlag> submult_audit(const std::map<int, Rat>& estimates);

} // namespace tsi
