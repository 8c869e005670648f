#pragma once

#include "tsi/rational.hpp"

#include <compare>
#include <initializer_list>
#include <vector>

namespace tsi {

// A finite, strictly increasing set of positive integers. The empty set is a
// valid value.
class FinSet {
public:
    FinSet() = default;
    FinSet(std::initializer_list<Idx> elems) : FinSet(std::vector<Idx>(elems)) {}
    explicit FinSet(std::vector<Idx> elems);

    static FinSet empty_set() { return FinSet(); }

    const std::vector<Idx>& elements() const { return v_; }
    bool empty() const { return v_.empty(); }
    std::size_t size() const { return v_.size(); }
    Idx min() const;
    Idx max() const;
    Idx at(std::size_t i) const { return v_[i]; }

    bool contains(Idx x) const;
    bool subset_of(const FinSet& other) const;

    // union of disjoint successive sets; fails if not successive
    static FinSet concat(const FinSet& a, const FinSet& b);

    bool operator==(const FinSet& other) const { return v_ == other.v_; }
    // lexicographic on the element lists (deterministic enumeration order)
    std::strong_ordering operator<=>(const FinSet& other) const { return v_ <=> other.v_; }

    std::string str() const;

private:
    std::vector<Idx> v_;
};

// true when max a < min b (empty sets compare as successive to anything)
bool successive(const FinSet& a, const FinSet& b);

} // namespace tsi
