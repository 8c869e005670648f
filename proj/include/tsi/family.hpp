#pragma once

#include "tsi/finset.hpp"

#include <json.hpp>

#include <memory>
#include <string>
#include <vector>

namespace tsi {

// Description of a regular (hereditary, spreading, compact) family of finite
// sets. Explicit families are hereditarily closed at construction; the
// symbolic variants are the Schreier hierarchy up to level w (diagonal
// sequence a_n = n fixed).
class FamilyDescriptor {
public:
    enum class Kind { Schreier, Omega, S1Of, Explicit };

    static FamilyDescriptor schreier(int level);
    static FamilyDescriptor omega();
    static FamilyDescriptor s1of(FamilyDescriptor inner);
    // hereditary closure (including the empty set) is applied and recorded
    static FamilyDescriptor explicit_family(std::vector<FinSet> generators);

    Kind kind() const { return kind_; }
    int level() const { return level_; }
    const FamilyDescriptor& inner() const;
    // Explicit only: closed member list, sorted
    const std::vector<FinSet>& sets() const;
    bool hereditary_closed() const { return hereditary_closed_; }

    bool operator==(const FamilyDescriptor& other) const;

    std::string str() const;

    // {"family": {"schreier": 2}} | {"family": "omega"} |
    // {"family": {"s1of": ...}} | {"family": {"explicit": [[...]]}}
    static FamilyDescriptor from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

private:
    FamilyDescriptor() = default;

    Kind kind_ = Kind::Schreier;
    int level_ = 0;
    std::shared_ptr<const FamilyDescriptor> inner_;
    std::vector<FinSet> sets_;
    bool hereditary_closed_ = true;
};

} // namespace tsi
