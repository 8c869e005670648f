#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace tsi {

using Rat = mpq_class;
using Int = mpz_class;
using Idx = long long;

// gmpxx has no long long constructors
inline Int int_of(Idx v) { return Int(static_cast<long>(v)); }
inline Rat rat_of(Idx v) { return Rat(int_of(v)); }

// Parses "3/4", "-2", "0.5" is NOT accepted; fractions and integers only.
Rat rat_parse(const std::string& text);

// Canonical "num/den" (or "num" when den == 1).
std::string rat_str(const Rat& r);

Rat rat_pow(const Rat& base, unsigned exponent);

// Decimal expansion with `digits` fractional digits, rounded toward -inf
// (round_up = false) or +inf (round_up = true). Used for human-readable
// columns next to exact fractions; 12 digits by default at the CLI.
std::string rat_decimal(const Rat& r, unsigned digits, bool round_up);

// Directed rational bracket of r^(1/n) for r >= 0: lo <= r^(1/n) <= hi and
// hi - lo <= tol. exact is set (and lo == hi) when r is a perfect n-th power.
struct RootBounds {
    Rat lo;
    Rat hi;
    bool exact;
};
RootBounds nth_root_bounds(const Rat& r, unsigned n, const Rat& tol);

} // namespace tsi
