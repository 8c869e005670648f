#pragma once

#include "tsi/rational.hpp"

#include <json.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace tsi {

// Parameters (p, {(n, theta_n)}) of a p-convexified mixed Tsirelson space.
// theta_n = 1 is allowed only as the sole pair, where the space degenerates
// to l_p; that case is short-circuited by the norm engine.
class SpaceSpec {
public:
    static SpaceSpec make(int p, std::vector<std::pair<int, Rat>> pairs, bool regular = false);

    int p() const { return p_; }
    const std::vector<std::pair<int, Rat>>& pairs() const { return pairs_; }
    bool regular() const { return regular_; }

    std::optional<Rat> theta(int n) const;
    Rat theta_star() const;  // max of the listed theta_n
    bool pure_lp() const;    // single pair with theta == 1

    bool operator==(const SpaceSpec& other) const;
    std::string str() const;

    // {"p": 1, "pairs": [[1, "1/2"]], "regular": true}
    static SpaceSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

private:
    SpaceSpec() = default;

    int p_ = 1;
    std::vector<std::pair<int, Rat>> pairs_;  // sorted by n, distinct
    bool regular_ = false;
};

} // namespace tsi
