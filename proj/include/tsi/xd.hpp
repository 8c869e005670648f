#pragma once

#include "tsi/budget.hpp"
#include "tsi/space.hpp"
#include "tsi/vector.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tsi {

// deterministic injective word coding: each new word takes the next free
// position, never below the word's maximum support index; the position
// selects an element of the listed character set
struct SigmaCoding {
    std::vector<int> levels;  // increasing slice of the plain character set
    bool growth = true;       // adversarial fixtures may drop the support floor

    nlohmann::json to_json() const;
    static SigmaCoding from_json(const nlohmann::json& j);
};

// a functional built by the saturation rules: a signed unit, a weighted
// admissible combination (plain), or a weighted coded chain (special);
// children index the build pool, so a pool is always read as a whole
struct DFunctional {
    enum Kind { Unit = 0, Plain = 1, Special = 2 };

    std::vector<Rat> coeffs;  // dense over [1..supportBound]
    int kind = Unit;
    int character = 0;             // plain: n value; special: l value
    std::vector<int> children;     // pool indices, in support order
    std::vector<Rat> gammas;       // plain only: grid scalar per child
    std::vector<int> chain_codes;  // special only: code after each proper prefix
    bool negated = false;          // special only: sign from symmetric closure
    std::optional<std::pair<Idx, Idx>> window;  // optional interval restriction

    Idx min_supp() const;  // 0 when identically zero
    Idx max_supp() const;
    Rat eval(const C00Vector& x) const;

    nlohmann::json to_json() const;
    static DFunctional from_json(const nlohmann::json& j);
};

class SigmaCoder {
public:
    explicit SigmaCoder(SigmaCoding coding);

    // character for the word, registering it on first sight; NOutOfRange when
    // the next position runs past the listed characters
    int code(const std::vector<const DFunctional*>& word);

    const SigmaCoding& coding() const { return coding_; }

private:
    SigmaCoding coding_;
    std::map<std::string, int> assigned_;  // word key -> 1-based position
    int last_ = 0;
};

int sigma_code(SigmaCoder& coder, const std::vector<const DFunctional*>& word);

struct DSpaceParams {
    int p = 1;
    std::vector<std::pair<int, Rat>> n_pairs;  // plain characters and weights
    std::vector<std::pair<int, Rat>> l_pairs;  // special characters and weights
    SigmaCoding sigma;
    std::vector<Rat> gamma_grid;  // scalars within the dual ball

    static DSpaceParams preset();

    SpaceSpec z_space() const;  // plain pairs only
    SpaceSpec k_space() const;  // plain and special pairs, larger weight on ties

    nlohmann::json to_json() const;
    static DSpaceParams from_json(const nlohmann::json& j);
};

// saturation of the signed units under the weighted-combination rule over the
// grid and the coded-chain rule, to the given depth; an inner approximation
// driven by per-rule enumeration budgets, deduplicated by coefficient profile
std::vector<DFunctional> build_d(const DSpaceParams& params, Idx supportBound, int depthBound);

// re-runs the construction invariants of every pool member
bool check_dfunctionals(const std::vector<DFunctional>& pool, const DSpaceParams& params);

// lower = exact max of f(x) over the pool; upper = norm in the merged space
std::pair<Rat, Rat> norm_d_bounds(const C00Vector& x, const std::vector<DFunctional>& pool,
                                  const DSpaceParams& params);

struct ClaimReport {
    int j_n = 0;               // character threshold with small enough weights
    int i_n = 0;               // support floor forcing codes past the threshold
    std::uint64_t samples = 0;
    Rat max_ratio;             // largest pool value against the plain-space norm
    std::vector<C00Vector> flagged;  // samples whose ratio exceeded four
};

// samples admissible supports at or past the floor with rational coefficient
// draws; extra functionals, when supplied, join the pool (test hook)
ClaimReport claim_scan(const DSpaceParams& params, int n, const Budget& budget,
                       const std::vector<DFunctional>& extra = {});

} // namespace tsi
