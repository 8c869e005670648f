#pragma once

#include "tsi/rational.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace tsi {

// search budget: "seed=7,max=5000" with an optional ",time=SECONDS"
struct Budget {
    std::uint64_t seed = 0;
    std::uint64_t max_candidates = 10000;
    std::optional<double> time_limit_s;

    static Budget parse(const std::string& text);
    std::string str() const;
};

// deterministic draws; modulo reduction is intentional so streams are
// identical across standard libraries
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }
    Idx below(Idx n); // [0, n)
    Idx in(Idx lo, Idx hi); // [lo, hi]
    bool flip() { return (eng_() & 1u) != 0; }

private:
    std::mt19937_64 eng_;
};

// counts candidates against a budget and watches the optional deadline
class BudgetClock {
public:
    explicit BudgetClock(const Budget& b);

    bool tick(); // false once the budget is spent
    std::uint64_t used() const { return used_; }

private:
    std::uint64_t max_;
    std::uint64_t used_ = 0;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
};

} // namespace tsi
