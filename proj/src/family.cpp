#include "tsi/family.hpp"

#include "tsi/errors.hpp"

#include <algorithm>
#include <set>

namespace tsi {

FamilyDescriptor FamilyDescriptor::schreier(int level) {
    if (level < 0) fail(Err::BadInput, "Schreier level must be >= 0");
    FamilyDescriptor f;
    f.kind_ = Kind::Schreier;
    f.level_ = level;
    return f;
}

FamilyDescriptor FamilyDescriptor::omega() {
    FamilyDescriptor f;
    f.kind_ = Kind::Omega;
    return f;
}

FamilyDescriptor FamilyDescriptor::s1of(FamilyDescriptor inner) {
    FamilyDescriptor f;
    f.kind_ = Kind::S1Of;
    f.inner_ = std::make_shared<const FamilyDescriptor>(std::move(inner));
    return f;
}

FamilyDescriptor FamilyDescriptor::explicit_family(std::vector<FinSet> generators) {
    std::set<FinSet> closed;
    closed.insert(FinSet::empty_set());
    // hereditary closure: all subsets of every generator
    for (const FinSet& g : generators) {
        const auto& e = g.elements();
        if (e.size() > 20) fail(Err::EnumerationLimit, "explicit generator wider than 20 elements");
        for (unsigned long mask = 1; mask < (1ul << e.size()); mask++) {
            std::vector<Idx> sub;
            for (std::size_t i = 0; i < e.size(); i++)
                if (mask & (1ul << i)) sub.push_back(e[i]);
            closed.insert(FinSet(std::move(sub)));
        }
    }
    FamilyDescriptor f;
    f.kind_ = Kind::Explicit;
    f.sets_.assign(closed.begin(), closed.end());
    f.hereditary_closed_ = true;
    return f;
}

const FamilyDescriptor& FamilyDescriptor::inner() const {
    if (kind_ != Kind::S1Of || !inner_) fail(Err::BadInput, "inner() on a non-S1Of family");
    return *inner_;
}

const std::vector<FinSet>& FamilyDescriptor::sets() const {
    if (kind_ != Kind::Explicit) fail(Err::BadInput, "sets() on a non-explicit family");
    return sets_;
}

bool FamilyDescriptor::operator==(const FamilyDescriptor& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
    case Kind::Schreier: return level_ == other.level_;
    case Kind::Omega: return true;
    case Kind::S1Of: return *inner_ == *other.inner_;
    case Kind::Explicit: return sets_ == other.sets_;
    }
    return false;
}

std::string FamilyDescriptor::str() const {
    switch (kind_) {
    case Kind::Schreier: return "S_" + std::to_string(level_);
    case Kind::Omega: return "S_w";
    case Kind::S1Of: return "S_1(" + inner_->str() + ")";
    case Kind::Explicit: return "explicit(" + std::to_string(sets_.size()) + " sets)";
    }
    return "?";
}

namespace {

FamilyDescriptor variant_from_json(const nlohmann::json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() == "omega") return FamilyDescriptor::omega();
        fail(Err::BadInput, "unknown family variant '" + v.get<std::string>() + "'");
    }
    if (!v.is_object()) fail(Err::BadInput, "family variant must be a string or object");
    if (v.contains("schreier")) return FamilyDescriptor::schreier(v.at("schreier").get<int>());
    if (v.contains("s1of")) return FamilyDescriptor::s1of(variant_from_json(v.at("s1of")));
    if (v.contains("explicit")) {
        std::vector<FinSet> gens;
        for (const auto& arr : v.at("explicit")) {
            std::vector<Idx> elems;
            for (const auto& x : arr) elems.push_back(x.get<Idx>());
            std::sort(elems.begin(), elems.end());
            gens.push_back(FinSet(std::move(elems)));
        }
        return FamilyDescriptor::explicit_family(std::move(gens));
    }
    fail(Err::BadInput, "unknown family variant object");
}

} // namespace

FamilyDescriptor FamilyDescriptor::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("family"))
        fail(Err::BadInput, "family JSON needs a 'family' key");
    return variant_from_json(j.at("family"));
}

nlohmann::json FamilyDescriptor::to_json() const {
    nlohmann::json v;
    switch (kind_) {
    case Kind::Schreier: v = nlohmann::json{{"schreier", level_}}; break;
    case Kind::Omega: v = "omega"; break;
    case Kind::S1Of: v = nlohmann::json{{"s1of", inner_->to_json().at("family")}}; break;
    case Kind::Explicit: {
        nlohmann::json arr = nlohmann::json::array();
        for (const FinSet& s : sets_)
            if (!s.empty()) arr.push_back(s.elements());
        v = nlohmann::json{{"explicit", arr}};
        break;
    }
    }
    return nlohmann::json{{"family", v}};
}

} // namespace tsi
