#include "tsi/budget.hpp"

#include "tsi/errors.hpp"

#include <sstream>

namespace tsi {

Budget Budget::parse(const std::string& text) {
    Budget b;
    if (text.empty()) return b;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            fail(Err::BadInput, "budget entries look like key=value: " + item);
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        try {
            if (key == "seed") b.seed = std::stoull(val);
            else if (key == "max") b.max_candidates = std::stoull(val);
            else if (key == "time") b.time_limit_s = std::stod(val);
            else fail(Err::BadInput, "unknown budget key: " + key);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(Err::BadInput, "bad budget value: " + item);
        }
    }
    return b;
}

std::string Budget::str() const {
    std::string s = "seed=" + std::to_string(seed) + ",max=" + std::to_string(max_candidates);
    if (time_limit_s) s += ",time=" + std::to_string(*time_limit_s);
    return s;
}

Idx Rng::below(Idx n) {
    if (n <= 0) fail(Err::BadInput, "draw range must be positive");
    return static_cast<Idx>(eng_() % static_cast<std::uint64_t>(n));
}

Idx Rng::in(Idx lo, Idx hi) {
    if (hi < lo) fail(Err::BadInput, "empty draw range");
    return lo + below(hi - lo + 1);
}

BudgetClock::BudgetClock(const Budget& b) : max_(b.max_candidates) {
    if (b.time_limit_s)
        deadline_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(*b.time_limit_s));
}

bool BudgetClock::tick() {
    if (used_ >= max_) return false;
    if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) return false;
    ++used_;
    return true;
}

} // namespace tsi
