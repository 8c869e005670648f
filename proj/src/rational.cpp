#include "tsi/rational.hpp"

#include "tsi/errors.hpp"

#include <cctype>

namespace tsi {

Rat rat_parse(const std::string& text) {
    // strict format: [-]digits[/digits]
    if (text.empty()) fail(Err::BadInput, "empty rational literal");
    std::size_t i = 0;
    if (text[i] == '-' || text[i] == '+') i++;
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) { i++; digits++; }
    if (digits == 0) fail(Err::BadInput, "malformed rational literal '" + text + "'");
    if (i < text.size()) {
        if (text[i] != '/') fail(Err::BadInput, "malformed rational literal '" + text + "'");
        i++;
        digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) { i++; digits++; }
        if (digits == 0 || i != text.size())
            fail(Err::BadInput, "malformed rational literal '" + text + "'");
    }
    Rat r;
    if (r.set_str(text, 10) != 0) fail(Err::BadInput, "malformed rational literal '" + text + "'");
    if (r.get_den() == 0) fail(Err::BadInput, "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat rat_pow(const Rat& base, unsigned exponent) {
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    // base is canonical, so num^e / den^e already is.
    return out;
}

std::string rat_decimal(const Rat& r, unsigned digits, bool round_up) {
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Rat scaled = r * Rat(scale);
    Int v;
    if (round_up)
        mpz_cdiv_q(v.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    else
        mpz_fdiv_q(v.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    bool neg = v < 0;
    Int a = neg ? Int(-v) : v;
    Int ip = a / scale;
    Int fp = a % scale;
    std::string frac = fp.get_str();
    if (frac.size() < digits) frac.insert(frac.begin(), digits - frac.size(), '0');
    std::string out = neg ? "-" : "";
    out += ip.get_str();
    if (digits > 0) {
        out += '.';
        out += frac;
    }
    return out;
}

RootBounds nth_root_bounds(const Rat& r, unsigned n, const Rat& tol) {
    if (r < 0) fail(Err::BadInput, "nth_root_bounds needs a nonnegative argument");
    if (n == 0) fail(Err::BadInput, "nth_root_bounds needs n >= 1");
    if (n == 1 || r == 0 || r == 1) return {r, r, true};

    Int num_root, den_root;
    int num_exact = mpz_root(num_root.get_mpz_t(), r.get_num_mpz_t(), n);
    int den_exact = mpz_root(den_root.get_mpz_t(), r.get_den_mpz_t(), n);
    if (num_exact != 0 && den_exact != 0) {
        Rat root(num_root, den_root);
        root.canonicalize();
        return {root, root, true};
    }

    if (tol <= 0) fail(Err::ToleranceUnreachable, "tolerance must be positive");
    Rat lo = r < 1 ? r : Rat(1);
    Rat hi = r < 1 ? Rat(1) : r;
    while (hi - lo > tol) {
        Rat mid = (lo + hi) / 2;
        if (rat_pow(mid, n) <= r)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi, false};
}

} // namespace tsi
