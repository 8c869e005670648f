#pragma once

#include "tsi/family.hpp"
#include "tsi/finset.hpp"
#include "tsi/ordinal.hpp"
#include "tsi/vector.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tsi {

// Incremental acceptor for Schreier(n) over a strictly increasing element
// stream. A set belongs to Schreier(n) iff every element is accepted.
// caps_[j-1] counts how many more level-(j-1) blocks (elements, at level 1)
// the currently open level-j block can absorb; new blocks opened at element v
// reset every deeper level to capacity v - 1.
class SchreierAutomaton {
public:
    explicit SchreierAutomaton(int n);

    bool step(Idx v);                 // false = rejected; reject is terminal
    bool step_run(Idx start, Idx len);  // consume [start, start+len), O(log) amortized
    bool started() const { return started_; }
    std::string key() const;          // state identity for memo tables

private:
    int n_;
    bool started_ = false;
    bool dead_ = false;
    std::vector<Idx> caps_;
};

// --- membership and admissibility ---------------------------------------

bool member(const FinSet& set, const FamilyDescriptor& family);

// true iff the sets are nonempty, successive, and their minima belong to the
// family; EmptyPiece if any set is empty
bool is_admissible(const std::vector<FinSet>& sets, const FamilyDescriptor& family);

// --- enumeration ----------------------------------------------------------

struct EnumLimits {
    Idx window_cap = 24;           // max window width
    std::size_t member_cap = 2000000;  // max enumerated members
};

// all nonempty members contained in [lo, hi], lexicographic order
std::vector<FinSet> enumerate_members(const FamilyDescriptor& family, Idx lo, Idx hi,
                                      const EnumLimits& limits = {});

// inclusion-maximal members within [lo, hi]; contains only the empty set when
// the family has no nonempty member there
std::vector<FinSet> maximal_sets(const FamilyDescriptor& family, Idx lo, Idx hi,
                                 const EnumLimits& limits = {});

// --- admissible trees -----------------------------------------------------

struct AdmTree {
    struct Node {
        FinSet set;
        std::vector<int> children;  // empty = terminal
    };
    std::vector<Node> nodes;
    int root = -1;

    int height() const;                 // edges on the longest root-to-leaf path
    std::vector<int> terminals() const; // left-to-right
};

// splits a member of Schreier(level) into its greedy maximal initial
// Schreier(level-1) segments (level >= 1)
std::vector<FinSet> greedy_segments(const FinSet& set, int level);

// decomposition of a Schreier(M)-admissible sequence into a tree of height
// <= M whose non-terminal nodes have successive, Schreier(1)-admissible
// children; terminals are exactly the input sets in order
AdmTree tree_decompose(const std::vector<FinSet>& sets, int M);

bool check_adm_tree(const AdmTree& tree);

// --- scalar masses ---------------------------------------------------------

// exact max over members F of the family of sum_{i in F} of the stored
// magnitudes of x (signs ignored). Wide supports are handled for Schreier
// families when the whole support is a member or when the magnitudes are
// nonincreasing (level 1); otherwise WindowTooLarge.
Rat family_mass(const C00Vector& x, const FamilyDescriptor& family,
                const EnumLimits& limits = {});

// the mass together with the restriction of x to a member attaining it
std::pair<Rat, C00Vector> family_mass_witness(const C00Vector& x, const FamilyDescriptor& family,
                                              const EnumLimits& limits = {});

// --- Cantor-Bendixson indices ----------------------------------------------

// w^a + 1 for the symbolic families; Unsupported for explicit ones
OrdinalCNF cb_symbolic(const FamilyDescriptor& family);

// finite CB index of an explicit family by iterating the combinatorial
// derivative: a member stays iff the family contains a proper superset with
// at least two extra elements
int cb_explicit(const FamilyDescriptor& family);

} // namespace tsi
