#include "tsi/schreier.hpp"

#include "tsi/errors.hpp"

#include <algorithm>
#include <cstddef>

namespace tsi {

namespace {

using Kind = FamilyDescriptor::Kind;

constexpr int kNoCover = 1 << 28;

} // namespace

SchreierAutomaton::SchreierAutomaton(int n) : n_(n) {
    if (n < 0) fail(Err::BadInput, "automaton level must be nonnegative");
}

bool SchreierAutomaton::step(Idx v) {
    if (dead_) return false;
    if (v < 1) fail(Err::BadInput, "elements are positive integers");
    if (!started_) {
        started_ = true;
        caps_.assign(static_cast<std::size_t>(n_), v - 1);
        return true;
    }
    if (n_ == 0) {
        dead_ = true;
        return false;
    }
    if (caps_[0] > 0) {
        --caps_[0];
        return true;
    }
    for (std::size_t j = 1; j < caps_.size(); ++j) {
        if (caps_[j] > 0) {
            --caps_[j];
            for (std::size_t i = 0; i < j; ++i) caps_[i] = v - 1;
            return true;
        }
    }
    dead_ = true;
    return false;
}

std::string SchreierAutomaton::key() const {
    std::string k;
    k.push_back(started_ ? '1' : '0');
    k.push_back(dead_ ? '1' : '0');
    for (Idx c : caps_) {
        k.push_back(',');
        k += std::to_string(c);
    }
    return k;
}

bool SchreierAutomaton::step_run(Idx start, Idx len) {
    Idx v = start;
    while (len > 0) {
        if (started_ && !dead_ && n_ >= 1 && caps_[0] > 0) {
            Idx take = std::min(caps_[0], len);
            caps_[0] -= take;
            v += take;
            len -= take;
            continue;
        }
        if (!step(v)) return false;
        ++v;
        --len;
    }
    return true;
}

namespace {

bool member_schreier(const FinSet& set, int n) {
    if (set.empty()) return true;
    SchreierAutomaton a(n);
    for (Idx v : set.elements())
        if (!a.step(v)) return false;
    return true;
}

// minimum number of nonempty inner-family pieces that partition the mask;
// every piece must contain the lowest remaining element, which fixes a
// canonical enumeration order
int min_cover(unsigned mask, const std::vector<Idx>& els, const FamilyDescriptor& inner,
              std::vector<int>& memo, std::vector<char>& piece_ok) {
    if (mask == 0) return 0;
    int& m = memo[mask];
    if (m >= 0) return m;
    m = kNoCover;
    unsigned low = mask & (~mask + 1u);
    unsigned rest = mask ^ low;
    unsigned sub = rest;
    while (true) {
        unsigned piece = sub | low;
        char& flag = piece_ok[piece];
        if (flag == 0) {
            std::vector<Idx> pts;
            for (std::size_t b = 0; b < els.size(); ++b)
                if (piece >> b & 1u) pts.push_back(els[b]);
            flag = member(FinSet(pts), inner) ? 1 : 2;
        }
        if (flag == 1) {
            int r = min_cover(mask ^ piece, els, inner, memo, piece_ok);
            if (r < kNoCover && r + 1 < m) m = r + 1;
        }
        if (sub == 0) break;
        sub = (sub - 1) & rest;
    }
    return m;
}

bool member_s1of(const FinSet& set, const FamilyDescriptor& inner) {
    if (set.empty()) return true;
    if (set.size() > 16)
        fail(Err::WindowTooLarge, "composed-family membership is limited to 16 points");
    const auto& els = set.elements();
    unsigned full = (1u << els.size()) - 1u;
    std::vector<int> memo(full + 1, -1);
    std::vector<char> piece_ok(full + 1, 0);
    int pieces = min_cover(full, els, inner, memo, piece_ok);
    return pieces <= set.min();
}

} // namespace

bool member(const FinSet& set, const FamilyDescriptor& family) {
    switch (family.kind()) {
    case Kind::Schreier:
        return member_schreier(set, family.level());
    case Kind::Omega:
        return set.empty() || member_schreier(set, static_cast<int>(set.min()));
    case Kind::S1Of:
        return member_s1of(set, family.inner());
    case Kind::Explicit: {
        const auto& s = family.sets();
        return std::binary_search(s.begin(), s.end(), set);
    }
    }
    fail(Err::BadInput, "unknown family kind");
}

bool is_admissible(const std::vector<FinSet>& sets, const FamilyDescriptor& family) {
    std::vector<Idx> mins;
    mins.reserve(sets.size());
    for (const auto& s : sets) {
        if (s.empty()) fail(Err::EmptyPiece, "admissible sequences have nonempty pieces");
        mins.push_back(s.min());
    }
    for (std::size_t i = 0; i + 1 < sets.size(); ++i)
        if (!successive(sets[i], sets[i + 1])) return false;
    return member(FinSet(mins), family);
}

std::vector<FinSet> enumerate_members(const FamilyDescriptor& family, Idx lo, Idx hi,
                                      const EnumLimits& limits) {
    if (lo < 1 || hi < lo) fail(Err::BadInput, "window must satisfy 1 <= lo <= hi");
    if (hi - lo + 1 > limits.window_cap)
        fail(Err::WindowTooLarge, "window wider than the enumeration cap");
    std::vector<FinSet> out;
    std::vector<Idx> cur;
    auto dfs = [&](auto&& self, Idx from) -> void {
        for (Idx v = from; v <= hi; ++v) {
            cur.push_back(v);
            FinSet f(cur);
            // hereditary: a non-member has no member extensions
            if (member(f, family)) {
                if (out.size() >= limits.member_cap)
                    fail(Err::WindowTooLarge, "too many members in the window");
                out.push_back(f);
                self(self, v + 1);
            }
            cur.pop_back();
        }
    };
    dfs(dfs, lo);
    return out;
}

std::vector<FinSet> maximal_sets(const FamilyDescriptor& family, Idx lo, Idx hi,
                                 const EnumLimits& limits) {
    auto members = enumerate_members(family, lo, hi, limits);
    if (members.empty()) return {FinSet{}};
    std::vector<FinSet> out;
    for (const auto& f : members) {
        bool maximal = true;
        for (Idx v = lo; v <= hi && maximal; ++v) {
            if (f.contains(v)) continue;
            std::vector<Idx> ext = f.elements();
            ext.insert(std::lower_bound(ext.begin(), ext.end(), v), v);
            if (member(FinSet(ext), family)) maximal = false;
        }
        if (maximal) out.push_back(f);
    }
    return out;
}

int AdmTree::height() const {
    if (root < 0) return 0;
    auto rec = [&](auto&& self, int i) -> int {
        int h = 0;
        for (int c : nodes[i].children) h = std::max(h, 1 + self(self, c));
        return h;
    };
    return rec(rec, root);
}

std::vector<int> AdmTree::terminals() const {
    std::vector<int> out;
    if (root < 0) return out;
    auto rec = [&](auto&& self, int i) -> void {
        if (nodes[i].children.empty()) {
            out.push_back(i);
            return;
        }
        for (int c : nodes[i].children) self(self, c);
    };
    rec(rec, root);
    return out;
}

std::vector<FinSet> greedy_segments(const FinSet& set, int level) {
    if (level < 1) fail(Err::BadInput, "segment level must be at least 1");
    std::vector<FinSet> out;
    std::vector<Idx> cur;
    SchreierAutomaton a(level - 1);
    for (Idx v : set.elements()) {
        if (!a.step(v)) {
            out.emplace_back(cur);
            cur.clear();
            a = SchreierAutomaton(level - 1);
            a.step(v);
        }
        cur.push_back(v);
    }
    if (!cur.empty()) out.emplace_back(cur);
    return out;
}

AdmTree tree_decompose(const std::vector<FinSet>& sets, int M) {
    if (M < 0) fail(Err::BadInput, "admissibility level must be nonnegative");
    if (sets.empty()) fail(Err::NotAdmissible, "nothing to decompose");
    if (!is_admissible(sets, FamilyDescriptor::schreier(M)))
        fail(Err::NotAdmissible, "sequence minima do not fit the requested level");
    AdmTree t;
    auto build = [&](auto&& self, std::size_t lo, std::size_t hi, int level) -> int {
        if (hi - lo == 1) {
            t.nodes.push_back({sets[lo], {}});
            return static_cast<int>(t.nodes.size()) - 1;
        }
        std::vector<Idx> mins;
        for (std::size_t i = lo; i < hi; ++i) mins.push_back(sets[i].min());
        auto segs = greedy_segments(FinSet(mins), level);
        std::vector<int> kids;
        std::size_t at = lo;
        for (const auto& seg : segs) {
            kids.push_back(self(self, at, at + seg.size(), level - 1));
            at += seg.size();
        }
        std::vector<Idx> all;
        for (std::size_t i = lo; i < hi; ++i)
            for (Idx v : sets[i].elements()) all.push_back(v);
        t.nodes.push_back({FinSet(all), std::move(kids)});
        return static_cast<int>(t.nodes.size()) - 1;
    };
    t.root = build(build, 0, sets.size(), M);
    return t;
}

bool check_adm_tree(const AdmTree& t) {
    if (t.root < 0 || t.nodes.empty()) return false;
    for (const auto& nd : t.nodes) {
        if (nd.children.empty()) {
            if (nd.set.empty()) return false;
            continue;
        }
        std::vector<FinSet> kids;
        for (int c : nd.children) {
            if (c < 0 || c >= static_cast<int>(t.nodes.size())) return false;
            if (t.nodes[c].set.empty()) return false;
            kids.push_back(t.nodes[c].set);
        }
        if (!is_admissible(kids, FamilyDescriptor::schreier(1))) return false;
        std::vector<Idx> all;
        for (const auto& k : kids)
            for (Idx v : k.elements()) all.push_back(v);
        if (!(FinSet(all) == nd.set)) return false;
    }
    return true;
}

namespace {

std::pair<Rat, C00Vector> mass_small(const C00Vector& x, const FamilyDescriptor& fam) {
    auto pts = x.support_points(16);
    std::vector<Rat> mags;
    mags.reserve(pts.size());
    for (Idx p : pts) mags.push_back(x.mag_at(p));
    Rat best(0);
    std::vector<Idx> best_set, cur;
    auto dfs = [&](auto&& self, std::size_t from, const Rat& sum) -> void {
        if (sum > best) {
            best = sum;
            best_set = cur;
        }
        for (std::size_t i = from; i < pts.size(); ++i) {
            cur.push_back(pts[i]);
            // hereditary: no member extends a non-member
            if (member(FinSet(cur), fam)) self(self, i + 1, sum + mags[i]);
            cur.pop_back();
        }
    };
    dfs(dfs, 0, Rat(0));
    return {best, x.restrict_to(FinSet(best_set))};
}

// restriction of x to the support points with indices [i, i+c)
C00Vector index_window(const C00Vector& x, Idx i, Idx c) {
    std::vector<C00Vector::Run> out;
    Idx at = 0;
    for (const auto& r : x.runs()) {
        Idx lo = std::max(i, at), hi = std::min(i + c, at + r.len);
        if (lo < hi) out.push_back({r.start + (lo - at), hi - lo, r.sign, r.mag_p});
        at += r.len;
    }
    return C00Vector(x.p(), std::move(out));
}

// exact mass for Schreier(1) with nonincreasing magnitudes. For every
// support-point index i the best member with its minimum at i is the next
// min(value, remaining) points; the objective is piecewise linear in i, so
// only run boundaries and window-end crossings need evaluating.
std::pair<Rat, C00Vector> mass_s1_nonincreasing(const C00Vector& x) {
    struct R {
        Idx idx0 = 0, len = 0, val0 = 0;
        Rat mag;
    };
    std::vector<R> runs;
    Idx n = 0;
    for (const auto& r : x.runs()) {
        runs.push_back({n, r.len, r.start, r.mag_p});
        n += r.len;
    }
    if (runs.size() > 1024)
        fail(Err::WindowTooLarge, "too many runs for the segment scan");
    std::vector<Rat> pref(runs.size() + 1, Rat(0));
    for (std::size_t i = 0; i < runs.size(); ++i)
        pref[i + 1] = pref[i] + rat_of(runs[i].len) * runs[i].mag;

    auto run_of = [&](Idx k) -> std::size_t {
        std::size_t lo = 0, hi = runs.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi + 1) / 2;
            if (runs[mid].idx0 <= k) lo = mid; else hi = mid - 1;
        }
        return lo;
    };
    auto pref_at = [&](Idx k) -> Rat {
        if (k >= n) return pref.back();
        std::size_t r = run_of(k);
        return pref[r] + rat_of(k - runs[r].idx0) * runs[r].mag;
    };
    auto val_at = [&](Idx i) -> Idx {
        std::size_t r = run_of(i);
        return runs[r].val0 + (i - runs[r].idx0);
    };
    auto window = [&](Idx i) -> Rat {
        Idx c = std::min(val_at(i), n - i);
        return pref_at(i + c) - pref_at(i);
    };

    std::vector<Idx> bounds;
    for (const auto& r : runs) bounds.push_back(r.idx0);
    bounds.push_back(n);
    std::vector<Idx> cand;
    for (const auto& r : runs) {
        Idx last = r.idx0 + r.len - 1;
        cand.push_back(r.idx0);
        cand.push_back(last);
        Idx off = r.val0 - r.idx0; // value at index i is i + off inside the run
        for (Idx b : bounds) {
            Idx i0 = (b - off) / 2; // window end hits b where 2i + off = b
            for (Idx i : {i0 - 1, i0, i0 + 1})
                if (i >= r.idx0 && i <= last) cand.push_back(i);
        }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    Rat best(0);
    Idx best_i = 0;
    for (Idx i : cand) {
        Rat w = window(i);
        if (w > best) {
            best = w;
            best_i = i;
        }
    }
    return {best, index_window(x, best_i, std::min(val_at(best_i), n - best_i))};
}

} // namespace

std::pair<Rat, C00Vector> family_mass_witness(const C00Vector& x, const FamilyDescriptor& family,
                                              const EnumLimits& limits) {
    if (x.empty()) return {Rat(0), C00Vector()};
    if (family.kind() == Kind::Schreier && family.level() == 0) {
        Rat best = x.max_mag();
        for (const auto& r : x.runs())
            if (r.mag_p == best)
                return {best, C00Vector(x.p(), {{r.start, 1, r.sign, r.mag_p}})};
    }

    if (family.kind() == Kind::Schreier || family.kind() == Kind::Omega) {
        int n = family.kind() == Kind::Omega ? static_cast<int>(x.min_supp())
                                             : family.level();
        SchreierAutomaton a(n);
        bool whole = true;
        for (const auto& r : x.runs())
            if (!a.step_run(r.start, r.len)) {
                whole = false;
                break;
            }
        if (whole) return {x.total_mass(), x};
    }

    if (x.width() <= 16) return mass_small(x, family);

    if (family.kind() == Kind::Schreier && family.level() == 1 && x.nonincreasing())
        return mass_s1_nonincreasing(x);

    (void)limits;
    fail(Err::WindowTooLarge, "support too wide for an exact family mass");
}

Rat family_mass(const C00Vector& x, const FamilyDescriptor& family, const EnumLimits& limits) {
    return family_mass_witness(x, family, limits).first;
}

namespace {

OrdinalCNF symbolic_level(const FamilyDescriptor& f) {
    switch (f.kind()) {
    case Kind::Schreier:
        return OrdinalCNF::natural(static_cast<unsigned long>(f.level()));
    case Kind::Omega:
        return OrdinalCNF::omega();
    case Kind::S1Of:
        return symbolic_level(f.inner()).plus_natural(1);
    case Kind::Explicit:
        break;
    }
    fail(Err::Unsupported, "no symbolic index for explicit families");
}

} // namespace

OrdinalCNF cb_symbolic(const FamilyDescriptor& family) {
    return OrdinalCNF::omega_pow(symbolic_level(family)).plus_natural(1);
}

int cb_explicit(const FamilyDescriptor& family) {
    if (family.kind() != Kind::Explicit)
        fail(Err::Unsupported, "finite index requires an explicit family");
    if (!family.hereditary_closed())
        fail(Err::NotHereditary, "explicit family is not hereditary");
    std::vector<FinSet> cur = family.sets();
    int steps = 0;
    while (!cur.empty()) {
        std::vector<FinSet> next;
        for (const auto& f : cur) {
            for (const auto& h : cur) {
                if (h.size() >= f.size() + 2 && f.subset_of(h)) {
                    next.push_back(f);
                    break;
                }
            }
        }
        cur = std::move(next);
        ++steps;
        if (steps > 4096) fail(Err::BadInput, "derivative failed to stabilize");
    }
    return steps;
}

} // namespace tsi
