#pragma once

#include "tsi/finset.hpp"
#include "tsi/rational.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace tsi {

// Finitely supported vector with exact p-th-power coefficient magnitudes and
// signs. Stored as runs of consecutive indices sharing one value, so the very
// wide hierarchical averages (millions of points, a handful of runs) stay
// representable; a plain sparse vector is the special case of length-1 runs.
class C00Vector {
public:
    struct Run {
        Idx start = 0;
        Idx len = 0;
        int sign = 1;     // +1 or -1
        Rat mag_p;        // |a_i|^p > 0, shared by the run
    };

    C00Vector() = default;
    C00Vector(int p, std::vector<Run> runs);

    static C00Vector unit(int p, Idx index, int sign = 1);
    // entries as (index, |a_i|^p, sign), any order
    static C00Vector from_entries(int p, std::vector<std::tuple<Idx, Rat, int>> entries);

    int p() const { return p_; }
    const std::vector<Run>& runs() const { return runs_; }
    bool empty() const { return runs_.empty(); }
    Idx width() const;     // number of support points
    Idx min_supp() const;
    Idx max_supp() const;

    Rat total_mass() const;  // sum of |a_i|^p
    Rat max_mag() const;     // max |a_i|^p
    bool nonincreasing() const;  // magnitudes nonincreasing along the support

    // magnitude at an index (0 outside the support), and the sign
    Rat mag_at(Idx i) const;
    int sign_at(Idx i) const;

    // support as an explicit point list; EnumerationLimit beyond cap
    std::vector<Idx> support_points(Idx cap) const;
    FinSet support_set(Idx cap) const;

    C00Vector restrict_to(const FinSet& set) const;
    C00Vector flip_signs(const std::vector<bool>& flip) const;  // per support point
    C00Vector drop_point(Idx index) const;
    C00Vector scale_mag(const Rat& factor_p) const;  // multiplies every |a_i|^p

    // pointwise disjoint union; fails on overlapping supports
    static C00Vector merge_disjoint(const C00Vector& a, const C00Vector& b);

    bool operator==(const C00Vector& other) const;

    // {"p":1,"coeffs":[[4,"1/1"],[5,"1/2",-1]]} or {"p":1,"runs":[[8,8,"1/64",1]]}
    static C00Vector from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

private:
    void normalize();

    int p_ = 1;
    std::vector<Run> runs_;  // sorted by start, disjoint, mag_p > 0
};

} // namespace tsi
