#pragma once

#include "tsi/rational.hpp"

#include <json.hpp>

#include <vector>

namespace tsi {

// Partition tree witnessing a norm value. Leaves name support points; an
// inner node applies one weight from the space's pair list to the sum of its
// children. The value certified is computable from the tree alone plus the
// vector's magnitudes.
struct NormCertificate {
    struct Node {
        int character = -1; // >= 1 on inner nodes, -1 on leaves
        Idx index = 0;      // leaf support point
        int sign = 1;       // leaf sign
        std::vector<int> children;

        bool leaf() const { return children.empty(); }
    };

    std::vector<Node> nodes;
    int root = -1;

    static NormCertificate single_leaf(Idx index, int sign);

    // {"certificate": node}, node = {"leaf":[i,sign]} | {"char":n,"children":[...]}
    static NormCertificate from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

} // namespace tsi
