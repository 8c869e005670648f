#include "tsi/finset.hpp"

#include "tsi/errors.hpp"

#include <algorithm>

namespace tsi {

FinSet::FinSet(std::vector<Idx> elems) : v_(std::move(elems)) {
    for (std::size_t i = 0; i < v_.size(); i++) {
        if (v_[i] < 1) fail(Err::BadInput, "set elements must be >= 1");
        if (i > 0 && v_[i] <= v_[i - 1]) fail(Err::BadInput, "set elements must strictly increase");
    }
}

Idx FinSet::min() const {
    if (v_.empty()) fail(Err::BadInput, "min of empty set");
    return v_.front();
}

Idx FinSet::max() const {
    if (v_.empty()) fail(Err::BadInput, "max of empty set");
    return v_.back();
}

bool FinSet::contains(Idx x) const { return std::binary_search(v_.begin(), v_.end(), x); }

bool FinSet::subset_of(const FinSet& other) const {
    return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
}

FinSet FinSet::concat(const FinSet& a, const FinSet& b) {
    if (!successive(a, b)) fail(Err::BadInput, "concat of non-successive sets");
    std::vector<Idx> out = a.v_;
    out.insert(out.end(), b.v_.begin(), b.v_.end());
    return FinSet(std::move(out));
}

std::string FinSet::str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < v_.size(); i++) {
        if (i) out += ",";
        out += std::to_string(v_[i]);
    }
    out += "}";
    return out;
}

bool successive(const FinSet& a, const FinSet& b) {
    if (a.empty() || b.empty()) return true;
    return a.max() < b.min();
}

} // namespace tsi
