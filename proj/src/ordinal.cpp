#include "tsi/ordinal.hpp"

#include "tsi/errors.hpp"

namespace tsi {

OrdinalCNF::OrdinalCNF() = default;
OrdinalCNF::OrdinalCNF(const OrdinalCNF&) = default;
OrdinalCNF::OrdinalCNF(OrdinalCNF&&) noexcept = default;
OrdinalCNF& OrdinalCNF::operator=(const OrdinalCNF&) = default;
OrdinalCNF& OrdinalCNF::operator=(OrdinalCNF&&) noexcept = default;
OrdinalCNF::~OrdinalCNF() = default;

OrdinalCNF OrdinalCNF::natural(unsigned long n) {
    OrdinalCNF out;
    if (n > 0) out.terms_.push_back(Term{OrdinalCNF(), n});
    return out;
}

OrdinalCNF OrdinalCNF::omega() { return omega_pow(natural(1)); }

OrdinalCNF OrdinalCNF::omega_pow(const OrdinalCNF& exp, unsigned long coeff) {
    if (coeff == 0) fail(Err::BadInput, "zero coefficient in ordinal term");
    if (exp.is_zero()) return natural(coeff);
    OrdinalCNF out;
    out.terms_.push_back(Term{exp, coeff});
    return out;
}

OrdinalCNF OrdinalCNF::plus_natural(unsigned long n) const {
    if (n == 0) return *this;
    OrdinalCNF out = *this;
    if (!out.terms_.empty() && out.terms_.back().exp.is_zero())
        out.terms_.back().coeff += n;
    else
        out.terms_.push_back(Term{OrdinalCNF(), n});
    return out;
}

bool OrdinalCNF::is_zero() const { return terms_.empty(); }

const std::vector<OrdinalCNF::Term>& OrdinalCNF::term_list() const { return terms_; }

int OrdinalCNF::compare(const OrdinalCNF& other) const {
    std::size_t n = std::min(terms_.size(), other.terms_.size());
    for (std::size_t i = 0; i < n; i++) {
        int c = terms_[i].exp.compare(other.terms_[i].exp);
        if (c != 0) return c;
        if (terms_[i].coeff != other.terms_[i].coeff)
            return terms_[i].coeff < other.terms_[i].coeff ? -1 : 1;
    }
    if (terms_.size() != other.terms_.size()) return terms_.size() < other.terms_.size() ? -1 : 1;
    return 0;
}

namespace {

std::string term_str(const OrdinalCNF::Term& t) {
    const auto& e = t.exp;
    if (e.is_zero()) return std::to_string(t.coeff);
    std::string base;
    if (e == OrdinalCNF::natural(1)) {
        base = "w";
    } else if (e.term_list().size() == 1 && e.term_list()[0].exp.is_zero()) {
        base = "w^" + std::to_string(e.term_list()[0].coeff);
    } else if (e == OrdinalCNF::omega()) {
        base = "w^w";
    } else {
        base = "w^(" + e.str() + ")";
    }
    if (t.coeff != 1) base += "*" + std::to_string(t.coeff);
    return base;
}

} // namespace

std::string OrdinalCNF::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); i++) {
        if (i) out += "+";
        out += term_str(terms_[i]);
    }
    return out;
}

} // namespace tsi
