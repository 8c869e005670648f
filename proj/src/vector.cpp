#include "tsi/vector.hpp"

#include "tsi/errors.hpp"

#include <algorithm>

namespace tsi {

C00Vector::C00Vector(int p, std::vector<Run> runs) : p_(p), runs_(std::move(runs)) { normalize(); }

void C00Vector::normalize() {
    if (p_ < 1) fail(Err::BadInput, "p must be a positive integer");
    std::sort(runs_.begin(), runs_.end(),
              [](const Run& a, const Run& b) { return a.start < b.start; });
    for (const Run& r : runs_) {
        if (r.start < 1 || r.len < 1) fail(Err::BadInput, "runs need start >= 1 and len >= 1");
        if (r.mag_p <= 0) fail(Err::BadInput, "run magnitudes must be positive");
        if (r.sign != 1 && r.sign != -1) fail(Err::BadInput, "run signs must be +1 or -1");
    }
    std::vector<Run> merged;
    for (Run& r : runs_) {
        if (!merged.empty()) {
            Run& last = merged.back();
            if (last.start + last.len > r.start) fail(Err::BadInput, "overlapping runs");
            if (last.start + last.len == r.start && last.sign == r.sign && last.mag_p == r.mag_p) {
                last.len += r.len;
                continue;
            }
        }
        merged.push_back(std::move(r));
    }
    runs_ = std::move(merged);
}

C00Vector C00Vector::unit(int p, Idx index, int sign) {
    return C00Vector(p, {Run{index, 1, sign, Rat(1)}});
}

C00Vector C00Vector::from_entries(int p, std::vector<std::tuple<Idx, Rat, int>> entries) {
    std::vector<Run> runs;
    runs.reserve(entries.size());
    for (auto& [i, mag, sign] : entries) runs.push_back(Run{i, 1, sign, std::move(mag)});
    return C00Vector(p, std::move(runs));
}

Idx C00Vector::width() const {
    Idx w = 0;
    for (const Run& r : runs_) w += r.len;
    return w;
}

Idx C00Vector::min_supp() const {
    if (runs_.empty()) fail(Err::EmptyVector, "min_supp of the zero vector");
    return runs_.front().start;
}

Idx C00Vector::max_supp() const {
    if (runs_.empty()) fail(Err::EmptyVector, "max_supp of the zero vector");
    return runs_.back().start + runs_.back().len - 1;
}

Rat C00Vector::total_mass() const {
    Rat total(0);
    for (const Run& r : runs_) total += rat_of(r.len) * r.mag_p;
    return total;
}

Rat C00Vector::max_mag() const {
    Rat best(0);
    for (const Run& r : runs_)
        if (r.mag_p > best) best = r.mag_p;
    return best;
}

bool C00Vector::nonincreasing() const {
    for (std::size_t i = 1; i < runs_.size(); i++)
        if (runs_[i].mag_p > runs_[i - 1].mag_p) return false;
    return true;
}

Rat C00Vector::mag_at(Idx i) const {
    for (const Run& r : runs_) {
        if (i < r.start) break;
        if (i < r.start + r.len) return r.mag_p;
    }
    return Rat(0);
}

int C00Vector::sign_at(Idx i) const {
    for (const Run& r : runs_) {
        if (i < r.start) break;
        if (i < r.start + r.len) return r.sign;
    }
    return 0;
}

std::vector<Idx> C00Vector::support_points(Idx cap) const {
    if (width() > cap) fail(Err::EnumerationLimit, "support too wide to materialize");
    std::vector<Idx> out;
    out.reserve(static_cast<std::size_t>(width()));
    for (const Run& r : runs_)
        for (Idx k = 0; k < r.len; k++) out.push_back(r.start + k);
    return out;
}

FinSet C00Vector::support_set(Idx cap) const { return FinSet(support_points(cap)); }

C00Vector C00Vector::restrict_to(const FinSet& set) const {
    std::vector<Run> out;
    for (Idx i : set.elements()) {
        Rat m = mag_at(i);
        if (m > 0) out.push_back(Run{i, 1, sign_at(i), std::move(m)});
    }
    return C00Vector(p_, std::move(out));
}

C00Vector C00Vector::flip_signs(const std::vector<bool>& flip) const {
    if (static_cast<Idx>(flip.size()) != width())
        fail(Err::LengthMismatch, "sign-flip mask size differs from the support width");
    std::vector<Run> out;
    std::size_t pos = 0;
    for (const Run& r : runs_)
        for (Idx k = 0; k < r.len; k++, pos++)
            out.push_back(Run{r.start + k, 1, flip[pos] ? -r.sign : r.sign, r.mag_p});
    return C00Vector(p_, std::move(out));
}

C00Vector C00Vector::drop_point(Idx index) const {
    std::vector<Run> out;
    for (const Run& r : runs_) {
        if (index < r.start || index >= r.start + r.len) {
            out.push_back(r);
            continue;
        }
        if (index > r.start) out.push_back(Run{r.start, index - r.start, r.sign, r.mag_p});
        if (index < r.start + r.len - 1)
            out.push_back(Run{index + 1, r.start + r.len - 1 - index, r.sign, r.mag_p});
    }
    return C00Vector(p_, std::move(out));
}

C00Vector C00Vector::scale_mag(const Rat& factor_p) const {
    if (factor_p <= 0) fail(Err::BadInput, "scale factor must be positive");
    std::vector<Run> out = runs_;
    for (Run& r : out) r.mag_p *= factor_p;
    return C00Vector(p_, std::move(out));
}

C00Vector C00Vector::merge_disjoint(const C00Vector& a, const C00Vector& b) {
    if (a.p_ != b.p_) fail(Err::LengthMismatch, "merging vectors with different p");
    std::vector<Run> runs = a.runs_;
    runs.insert(runs.end(), b.runs_.begin(), b.runs_.end());
    return C00Vector(a.p_, std::move(runs));  // overlap detection in normalize()
}

bool C00Vector::operator==(const C00Vector& other) const {
    if (p_ != other.p_ || runs_.size() != other.runs_.size()) return false;
    for (std::size_t i = 0; i < runs_.size(); i++) {
        const Run& x = runs_[i];
        const Run& y = other.runs_[i];
        if (x.start != y.start || x.len != y.len || x.sign != y.sign || x.mag_p != y.mag_p)
            return false;
    }
    return true;
}

C00Vector C00Vector::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("p")) fail(Err::BadInput, "vector JSON needs 'p'");
    int p = j.at("p").get<int>();
    std::vector<Run> runs;
    if (j.contains("coeffs")) {
        for (const auto& e : j.at("coeffs")) {
            if (!e.is_array() || e.size() < 2) fail(Err::BadInput, "coeff entries are [i, mag, sign?]");
            int sign = e.size() > 2 ? e.at(2).get<int>() : 1;
            runs.push_back(Run{e.at(0).get<Idx>(), 1, sign, rat_parse(e.at(1).get<std::string>())});
        }
    } else if (j.contains("runs")) {
        for (const auto& e : j.at("runs")) {
            if (!e.is_array() || e.size() < 3) fail(Err::BadInput, "run entries are [start, len, mag, sign?]");
            int sign = e.size() > 3 ? e.at(3).get<int>() : 1;
            runs.push_back(
                Run{e.at(0).get<Idx>(), e.at(1).get<Idx>(), sign, rat_parse(e.at(2).get<std::string>())});
        }
    } else {
        fail(Err::BadInput, "vector JSON needs 'coeffs' or 'runs'");
    }
    return C00Vector(p, std::move(runs));
}

nlohmann::json C00Vector::to_json() const {
    bool all_single = std::all_of(runs_.begin(), runs_.end(), [](const Run& r) { return r.len == 1; });
    nlohmann::json arr = nlohmann::json::array();
    if (all_single) {
        for (const Run& r : runs_) {
            nlohmann::json e = {r.start, rat_str(r.mag_p)};
            if (r.sign < 0) e.push_back(r.sign);
            arr.push_back(e);
        }
        return nlohmann::json{{"p", p_}, {"coeffs", arr}};
    }
    for (const Run& r : runs_) arr.push_back({r.start, r.len, rat_str(r.mag_p), r.sign});
    return nlohmann::json{{"p", p_}, {"runs", arr}};
}

} // namespace tsi
