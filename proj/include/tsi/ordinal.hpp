#pragma once

#include <string>
#include <vector>

namespace tsi {

// Ordinals in Cantor normal form: sum of w^exponent * coefficient with
// strictly decreasing exponents (themselves ordinals) and positive natural
// coefficients. The empty sum is 0. Covers everything this library needs
// (values up to w^w * c + lower terms).
class OrdinalCNF {
public:
    struct Term;

    OrdinalCNF();
    OrdinalCNF(const OrdinalCNF&);
    OrdinalCNF(OrdinalCNF&&) noexcept;
    OrdinalCNF& operator=(const OrdinalCNF&);
    OrdinalCNF& operator=(OrdinalCNF&&) noexcept;
    ~OrdinalCNF();

    static OrdinalCNF natural(unsigned long n);
    static OrdinalCNF omega();
    // w^exp * coeff
    static OrdinalCNF omega_pow(const OrdinalCNF& exp, unsigned long coeff = 1);

    // this + n (adds to / creates the w^0 term)
    OrdinalCNF plus_natural(unsigned long n) const;

    bool is_zero() const;
    const std::vector<Term>& term_list() const;

    // total order: -1, 0, +1
    int compare(const OrdinalCNF& other) const;
    bool operator==(const OrdinalCNF& other) const { return compare(other) == 0; }
    bool operator<(const OrdinalCNF& other) const { return compare(other) < 0; }

    // ASCII rendering: "0", "2", "w+1", "w^2+1", "w^w+1", ...
    std::string str() const;

private:
    std::vector<Term> terms_;
};

struct OrdinalCNF::Term {
    OrdinalCNF exp;
    unsigned long coeff = 1;
};

} // namespace tsi
