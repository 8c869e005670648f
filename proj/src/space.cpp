#include "tsi/space.hpp"

#include "tsi/errors.hpp"

#include <algorithm>

namespace tsi {

SpaceSpec SpaceSpec::make(int p, std::vector<std::pair<int, Rat>> pairs, bool regular) {
    if (p < 1) fail(Err::BadInput, "p must be a positive integer");
    if (pairs.empty()) fail(Err::BadInput, "a space needs at least one (n, theta_n) pair");
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < pairs.size(); i++) {
        auto& [n, theta] = pairs[i];
        if (n < 1) fail(Err::BadInput, "pair levels must be >= 1");
        if (i > 0 && n == pairs[i - 1].first) fail(Err::BadInput, "duplicate pair level");
        if (theta <= 0 || theta > 1) fail(Err::BadInput, "theta_n must lie in (0,1]");
        if (theta == 1 && pairs.size() > 1)
            fail(Err::DegenerateTheta, "theta_n = 1 is only allowed as the sole pair");
    }
    if (regular) {
        // monotone nonincreasing, and supermultiplicative on listed sums
        for (std::size_t i = 1; i < pairs.size(); i++)
            if (pairs[i].second > pairs[i - 1].second)
                fail(Err::PreconditionFailed, "regular flag set but theta_n increases");
        for (const auto& [n, tn] : pairs)
            for (const auto& [m, tm] : pairs) {
                int s = n + m;
                auto it = std::find_if(pairs.begin(), pairs.end(),
                                       [s](const auto& q) { return q.first == s; });
                if (it != pairs.end() && it->second < tn * tm)
                    fail(Err::PreconditionFailed,
                         "regular flag set but theta_(n+m) < theta_n * theta_m at n=" +
                             std::to_string(n) + ", m=" + std::to_string(m));
            }
    }
    SpaceSpec s;
    s.p_ = p;
    s.pairs_ = std::move(pairs);
    s.regular_ = regular;
    return s;
}

std::optional<Rat> SpaceSpec::theta(int n) const {
    for (const auto& [m, theta] : pairs_)
        if (m == n) return theta;
    return std::nullopt;
}

Rat SpaceSpec::theta_star() const {
    Rat best(0);
    for (const auto& [n, theta] : pairs_)
        if (theta > best) best = theta;
    return best;
}

bool SpaceSpec::pure_lp() const { return pairs_.size() == 1 && pairs_[0].second == 1; }

bool SpaceSpec::operator==(const SpaceSpec& other) const {
    return p_ == other.p_ && pairs_ == other.pairs_ && regular_ == other.regular_;
}

std::string SpaceSpec::str() const {
    std::string out = "T^(" + std::to_string(p_) + ")[";
    for (std::size_t i = 0; i < pairs_.size(); i++) {
        if (i) out += ", ";
        out += "(S_" + std::to_string(pairs_[i].first) + "," + rat_str(pairs_[i].second) + ")";
    }
    return out + "]";
}

SpaceSpec SpaceSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("pairs"))
        fail(Err::BadInput, "space JSON needs 'p' and 'pairs'");
    std::vector<std::pair<int, Rat>> pairs;
    for (const auto& e : j.at("pairs")) {
        if (!e.is_array() || e.size() != 2) fail(Err::BadInput, "pair entries are [n, theta]");
        pairs.emplace_back(e.at(0).get<int>(), rat_parse(e.at(1).get<std::string>()));
    }
    bool regular = j.value("regular", false);
    return make(j.at("p").get<int>(), std::move(pairs), regular);
}

nlohmann::json SpaceSpec::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [n, theta] : pairs_) arr.push_back({n, rat_str(theta)});
    return nlohmann::json{{"p", p_}, {"pairs", arr}, {"regular", regular_}};
}

} // namespace tsi
