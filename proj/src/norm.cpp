#include "tsi/norm.hpp"

#include "tsi/errors.hpp"
#include "tsi/schreier.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <tuple>

namespace tsi {

namespace {

constexpr Idx kDpCap = 64;
constexpr Idx kBruteCap = 14;
constexpr Idx kRestrictionWindow = 24;

void check_compatible(const C00Vector& x, const SpaceSpec& space) {
    if (x.empty()) fail(Err::EmptyVector, "norm of the zero vector");
    if (x.p() != space.p()) fail(Err::BadInput, "vector and space disagree on p");
}

// Interval DP over the support points. Values are p-th powers throughout;
// nrm(a, b) is the norm power of the restriction to points [a..b]. Splits
// cover the whole interval with >= 2 successive interval pieces whose minima
// drive a level-n acceptor; end points are dropped by shrinking the interval.
class NormEngine {
public:
    NormEngine(const C00Vector& x, const SpaceSpec& sp) : sp_(sp) {
        pts_ = x.support_points(kDpCap);
        for (Idx p : pts_) {
            mags_.push_back(x.mag_at(p));
            signs_.push_back(x.sign_at(p));
        }
        pref_.assign(pts_.size() + 1, Rat(0));
        for (std::size_t i = 0; i < pts_.size(); ++i) pref_[i + 1] = pref_[i] + mags_[i];
    }

    Rat value() { return nrm(0, static_cast<int>(pts_.size()) - 1); }

    NormCertificate certificate() {
        NormCertificate cert;
        cert.root = build_cert(0, static_cast<int>(pts_.size()) - 1, cert);
        return cert;
    }

private:
    Rat nrm(int a, int b) {
        if (a == b) return mags_[static_cast<std::size_t>(a)];
        auto key = std::make_pair(a, b);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Rat best = nrm(a + 1, b);
        Rat right = nrm(a, b - 1);
        if (right > best) best = right;
        Rat total = pref_[static_cast<std::size_t>(b) + 1] - pref_[static_cast<std::size_t>(a)];
        for (const auto& [n, th] : sp_.pairs()) {
            if (th * total <= best) continue; // cannot beat the current value
            Rat s = split(a, b, n);
            if (s >= 0) {
                Rat cand = th * s;
                if (cand > best) best = cand;
            }
        }
        memo_.emplace(key, best);
        return best;
    }

    // best piece-value sum over covers of [a..b] by >= 2 pieces; -1 if the
    // level-n acceptor admits none
    Rat split(int a, int b, int n) {
        SchreierAutomaton st(n);
        st.step(pts_[static_cast<std::size_t>(a)]);
        Rat best(-1);
        for (int e = a; e < b; ++e) {
            Rat rest = gcover(e + 1, b, n, st);
            if (rest < 0) break; // larger next minima are rejected too
            Rat cand = nrm(a, e) + rest;
            if (cand > best) best = cand;
        }
        return best;
    }

    // best cover of [pos..b] by >= 1 pieces; st is the acceptor state before
    // the minimum at pos
    Rat gcover(int pos, int b, int n, const SchreierAutomaton& st0) {
        auto key = std::make_tuple(n, b, pos, st0.key());
        auto it = gmemo_.find(key);
        if (it != gmemo_.end()) return it->second;
        SchreierAutomaton st = st0;
        Rat best(-1);
        if (st.step(pts_[static_cast<std::size_t>(pos)])) {
            for (int e = pos; e <= b; ++e) {
                Rat cand = nrm(pos, e);
                if (e < b) {
                    Rat rest = gcover(e + 1, b, n, st);
                    if (rest < 0) {
                        // later minima are rejected too; only the single
                        // piece [pos..b] remains
                        Rat last = nrm(pos, b);
                        if (last > best) best = last;
                        break;
                    }
                    cand += rest;
                }
                if (cand > best) best = cand;
            }
        }
        gmemo_.emplace(std::move(key), best);
        return best;
    }

    int build_cert(int a, int b, NormCertificate& cert) {
        Rat v = nrm(a, b);
        if (a == b) {
            cert.nodes.push_back(
                {-1, pts_[static_cast<std::size_t>(a)], signs_[static_cast<std::size_t>(a)], {}});
            return static_cast<int>(cert.nodes.size()) - 1;
        }
        if (nrm(a + 1, b) == v) return build_cert(a + 1, b, cert);
        if (nrm(a, b - 1) == v) return build_cert(a, b - 1, cert);
        for (const auto& [n, th] : sp_.pairs()) {
            Rat s = split(a, b, n);
            if (s < 0 || th * s != v) continue;
            std::vector<std::pair<int, int>> pieces;
            SchreierAutomaton st(n);
            int pos = a;
            Rat rem = s;
            while (pos <= b) {
                if (!st.step(pts_[static_cast<std::size_t>(pos)]))
                    fail(Err::BadInput, "certificate reconstruction lost the acceptor");
                int found = -1;
                Rat next_rem(0);
                for (int e = pos; e <= b; ++e) {
                    if (pos == a && e == b) break; // top level needs >= 2 pieces
                    Rat piece = nrm(pos, e);
                    if (e == b) {
                        if (piece == rem) found = e;
                    } else {
                        Rat rest = gcover(e + 1, b, n, st);
                        if (rest >= 0 && piece + rest == rem) {
                            found = e;
                            next_rem = rest;
                        }
                    }
                    if (found >= 0) break;
                }
                if (found < 0) fail(Err::BadInput, "certificate reconstruction diverged");
                pieces.push_back({pos, found});
                pos = found + 1;
                rem = next_rem;
            }
            std::vector<int> kids;
            for (auto [pa, pb] : pieces) kids.push_back(build_cert(pa, pb, cert));
            cert.nodes.push_back({n, 0, 1, std::move(kids)});
            return static_cast<int>(cert.nodes.size()) - 1;
        }
        fail(Err::BadInput, "norm value has no matching decomposition");
    }

    const SpaceSpec& sp_;
    std::vector<Idx> pts_;
    std::vector<Rat> mags_;
    std::vector<int> signs_;
    std::vector<Rat> pref_;
    std::map<std::pair<int, int>, Rat> memo_;
    std::map<std::tuple<int, int, int, std::string>, Rat> gmemo_;
};

NormBounds squeeze_bounds(const C00Vector& x, const SpaceSpec& sp) {
    Rat total = x.total_mass();
    Rat maxmag = x.max_mag();
    Rat tstar = sp.theta_star();
    Rat lower = maxmag, upper = maxmag;
    for (const auto& [n, th] : sp.pairs()) {
        SchreierAutomaton a(n);
        bool whole = true;
        for (const auto& r : x.runs())
            if (!a.step_run(r.start, r.len)) {
                whole = false;
                break;
            }
        if (whole) {
            // all-singleton partition: the support itself is admissible
            Rat c = th * total;
            if (c > lower) lower = c;
        }
        // any piece value is at most its max magnitude plus tstar times its
        // mass, and the per-piece maxima sit on a member of the level-n family
        Rat mn;
        try {
            mn = family_mass(x, FamilyDescriptor::schreier(n));
        } catch (const Error&) {
            mn = total;
        }
        Rat inner = mn + tstar * total;
        if (total < inner) inner = total;
        Rat c = th * inner;
        if (c > upper) upper = c;
    }
    return {lower, upper, lower == upper};
}

} // namespace

// With a single weight 1 the norm degenerates to the mass sum, except that
// no admissible sequence of two or more pieces can touch coordinate 1: the
// only family member containing 1 is {1} itself.
Rat lp_norm(const C00Vector& x) {
    Rat total = x.total_mass();
    Rat first = x.mag_at(1);
    if (first == 0) return total;
    if (x.width() <= 2) return x.max_mag();
    Rat rest = total - first;
    return first > rest ? first : rest;
}

Rat norm_p(const C00Vector& x, const SpaceSpec& space) {
    check_compatible(x, space);
    if (x.width() <= kDpCap) return NormEngine(x, space).value();
    if (space.pure_lp()) return lp_norm(x);
    auto nb = squeeze_bounds(x, space);
    if (nb.exact) return nb.lower;
    fail(Err::WindowTooLarge, "support too wide for exact evaluation");
}

NormBounds norm_bounds(const C00Vector& x, const SpaceSpec& space) {
    check_compatible(x, space);
    if (space.pure_lp() && x.width() > kDpCap) {
        Rat t = lp_norm(x);
        return {t, t, true};
    }
    if (x.width() <= kDpCap) {
        Rat v = NormEngine(x, space).value();
        return {v, v, true};
    }
    return squeeze_bounds(x, space);
}

NormCertificate norm_certificate(const C00Vector& x, const SpaceSpec& space) {
    check_compatible(x, space);
    if (x.width() == 1) {
        const auto& r = x.runs()[0];
        return NormCertificate::single_leaf(r.start, r.sign);
    }
    if (x.width() > kDpCap)
        fail(Err::WindowTooLarge, "support too wide for certificate construction");
    return NormEngine(x, space).certificate();
}

Rat verify_certificate(const NormCertificate& cert, const C00Vector& x, const SpaceSpec& space) {
    if (cert.root < 0 || cert.nodes.empty()) fail(Err::BadInput, "empty certificate");
    std::vector<char> seen(cert.nodes.size(), 0);
    auto walk = [&](auto&& self, int id) -> std::pair<Rat, FinSet> {
        if (id < 0 || id >= static_cast<int>(cert.nodes.size()))
            fail(Err::BadInput, "certificate child out of range");
        if (seen[static_cast<std::size_t>(id)]) fail(Err::BadInput, "certificate re-uses a node");
        seen[static_cast<std::size_t>(id)] = 1;
        const auto& nd = cert.nodes[static_cast<std::size_t>(id)];
        std::string tag = "node " + std::to_string(id);
        if (nd.leaf()) {
            Rat m = x.mag_at(nd.index);
            if (m == 0)
                fail(Err::LeafOutsideSupport,
                     tag + ": index " + std::to_string(nd.index) + " is not in the support");
            return {m, FinSet{nd.index}};
        }
        if (!space.theta(nd.character))
            fail(Err::UnknownCharacter,
                 tag + ": no weight listed for level " + std::to_string(nd.character));
        Rat sum(0);
        std::vector<FinSet> covered;
        for (int c : nd.children) {
            auto [v, s] = self(self, c);
            sum += v;
            covered.push_back(std::move(s));
        }
        bool adm = false;
        try {
            adm = is_admissible(covered, FamilyDescriptor::schreier(nd.character));
        } catch (const Error&) {
            adm = false;
        }
        if (!adm) fail(Err::BadAdmissibility, tag + ": children do not form an admissible sequence");
        std::vector<Idx> all;
        for (const auto& s : covered)
            for (Idx v : s.elements()) all.push_back(v);
        return {*space.theta(nd.character) * sum, FinSet(all)};
    };
    return walk(walk, cert.root).first;
}

Rat brute_norm_p(const C00Vector& x, const SpaceSpec& space, int depth) {
    check_compatible(x, space);
    if (depth < 0) fail(Err::BadInput, "depth must be nonnegative");
    std::vector<Idx> pts;
    try {
        pts = x.support_points(kBruteCap);
    } catch (const Error&) {
        fail(Err::WindowTooLarge, "oracle limited to 14 support points");
    }
    int k = static_cast<int>(pts.size());
    std::vector<Rat> mags;
    for (Idx p : pts) mags.push_back(x.mag_at(p));
    std::size_t total = std::size_t{1} << k;
    std::vector<Rat> suffix(static_cast<std::size_t>(k) + 1, Rat(0));
    for (int i = k - 1; i >= 0; --i)
        suffix[static_cast<std::size_t>(i)] =
            suffix[static_cast<std::size_t>(i) + 1] + mags[static_cast<std::size_t>(i)];

    // membership of every subset of the support, by exhaustive split search
    // on the definition (independent of the production acceptor)
    int maxn = 0;
    for (const auto& [n, th] : space.pairs()) maxn = std::max(maxn, n);
    std::vector<std::vector<char>> memb(static_cast<std::size_t>(maxn) + 1,
                                        std::vector<char>(total, 0));
    for (std::size_t mask = 0; mask < total; ++mask)
        memb[0][mask] = std::popcount(mask) <= 1 ? 1 : 0;
    for (int lev = 1; lev <= maxn; ++lev) {
        for (std::size_t mask = 0; mask < total; ++mask) {
            if (std::popcount(mask) <= 1) {
                memb[static_cast<std::size_t>(lev)][mask] = 1;
                continue;
            }
            std::vector<int> els;
            for (int b = 0; b < k; ++b)
                if (mask >> b & 1u) els.push_back(b);
            int kk = static_cast<int>(els.size());
            std::vector<int> best(static_cast<std::size_t>(kk) + 1, 1 << 20);
            best[0] = 0;
            for (int pos = 0; pos < kk; ++pos) {
                if (best[static_cast<std::size_t>(pos)] >= (1 << 20)) continue;
                std::size_t piece = 0;
                for (int end = pos + 1; end <= kk; ++end) {
                    piece |= std::size_t{1} << els[static_cast<std::size_t>(end - 1)];
                    if (memb[static_cast<std::size_t>(lev - 1)][piece] &&
                        best[static_cast<std::size_t>(pos)] + 1 < best[static_cast<std::size_t>(end)])
                        best[static_cast<std::size_t>(end)] = best[static_cast<std::size_t>(pos)] + 1;
                }
            }
            memb[static_cast<std::size_t>(lev)][mask] =
                static_cast<Idx>(best[static_cast<std::size_t>(kk)]) <=
                        pts[static_cast<std::size_t>(els[0])]
                    ? 1
                    : 0;
        }
    }

    Rat tstar = space.theta_star();
    std::vector<std::vector<Rat>> B(static_cast<std::size_t>(depth) + 1,
                                    std::vector<Rat>(total, Rat(0)));
    std::vector<std::vector<char>> done(static_cast<std::size_t>(depth) + 1,
                                        std::vector<char>(total, 0));

    auto eval = [&](auto&& self, std::size_t mask, int d) -> Rat {
        if (done[static_cast<std::size_t>(d)][mask]) return B[static_cast<std::size_t>(d)][mask];
        Rat best(0);
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1u)
                if (mags[static_cast<std::size_t>(i)] > best) best = mags[static_cast<std::size_t>(i)];
        if (d > 0 && std::popcount(mask) >= 2) {
            // successive piece sequences; every prefix with >= 2 pieces is a
            // complete functional
            auto extend = [&](auto&& ext, int from, std::size_t minima, const Rat& sum,
                              int count) -> void {
                if (count >= 2)
                    for (const auto& [n, th] : space.pairs())
                        if (memb[static_cast<std::size_t>(n)][minima]) {
                            Rat c = th * sum;
                            if (c > best) best = c;
                        }
                if (from >= k) return;
                if (tstar * (sum + suffix[static_cast<std::size_t>(from)]) <= best) return;
                for (int i = from; i < k; ++i) {
                    if (!(mask >> i & 1u)) continue;
                    auto pick = [&](auto&& pk, int j, std::size_t pm, int maxb) -> void {
                        if (j >= k) {
                            ext(ext, maxb + 1, minima | (std::size_t{1} << i),
                                sum + self(self, pm, d - 1), count + 1);
                            return;
                        }
                        pk(pk, j + 1, pm, maxb);
                        if (mask >> j & 1u) pk(pk, j + 1, pm | (std::size_t{1} << j), j);
                    };
                    pick(pick, i + 1, std::size_t{1} << i, i);
                }
            };
            extend(extend, 0, 0, Rat(0), 0);
        }
        done[static_cast<std::size_t>(d)][mask] = 1;
        B[static_cast<std::size_t>(d)][mask] = best;
        return best;
    };
    return eval(eval, total - 1, depth);
}

Rat restriction_max(const C00Vector& x, const FamilyDescriptor& family, const SpaceSpec& space) {
    if (x.empty()) return Rat(0);
    if (x.p() != space.p()) fail(Err::BadInput, "vector and space disagree on p");
    using Kind = FamilyDescriptor::Kind;
    if (family.kind() == Kind::Explicit) {
        Rat best(0);
        for (const auto& f : family.sets()) {
            auto y = x.restrict_to(f);
            if (y.empty()) continue;
            Rat v = norm_p(y, space);
            if (v > best) best = v;
        }
        return best;
    }
    if (family.kind() == Kind::Schreier && family.level() == 0) return x.max_mag();
    Idx lo = x.min_supp(), hi = x.max_supp();
    if (hi - lo + 1 <= kRestrictionWindow) {
        Rat best(0);
        for (const auto& f : maximal_sets(family, lo, hi)) {
            auto y = x.restrict_to(f);
            if (y.empty()) continue;
            Rat v = norm_p(y, space);
            if (v > best) best = v;
        }
        return best;
    }
    // wide support: close a squeeze or refuse. Every restriction is bounded
    // by its own max magnitude and by theta_star times its family mass.
    auto [mass, wit] = family_mass_witness(x, family);
    Rat upper = x.max_mag();
    Rat u2 = space.theta_star() * mass;
    if (u2 > upper) upper = u2;
    Rat lower = x.max_mag(); // singletons belong to every symbolic family
    if (!wit.empty()) {
        auto nb = norm_bounds(wit, space);
        if (nb.lower > lower) lower = nb.lower;
    }
    if (lower == upper) return lower;
    fail(Err::WindowTooLarge, "cannot certify the restriction maximum at this width");
}

std::vector<std::pair<int, Rat>> regularize(const std::vector<std::pair<int, Rat>>& pairs,
                                            int horizon) {
    if (pairs.empty()) fail(Err::BadInput, "no weight pairs given");
    if (horizon < 1 || horizon > 4096) fail(Err::BadInput, "horizon out of range");
    for (const auto& [n, th] : pairs) {
        if (n < 1) fail(Err::BadInput, "levels start at 1");
        if (th <= 0 || th >= 1) fail(Err::BadInput, "weights must lie strictly between 0 and 1");
    }
    std::vector<Rat> bar(static_cast<std::size_t>(horizon) + 1, Rat(0));
    for (int n = 1; n <= horizon; ++n) {
        Rat best(0);
        for (const auto& [m, th] : pairs) {
            if (m >= n) {
                if (th > best) best = th;
            } else {
                Rat c = th * bar[static_cast<std::size_t>(n - m)];
                if (c > best) best = c;
            }
        }
        bar[static_cast<std::size_t>(n)] = best;
    }
    std::vector<std::pair<int, Rat>> out;
    for (int n = 1; n <= horizon; ++n) out.push_back({n, bar[static_cast<std::size_t>(n)]});
    return out;
}

std::pair<Rat, Rat> theta_sup_bounds(const std::vector<std::pair<int, Rat>>& pairs, int horizon,
                                     const Rat& tol) {
    if (horizon < 1) fail(Err::BadInput, "horizon out of range");
    if (tol <= 0) fail(Err::ToleranceUnreachable, "tolerance must be positive");
    Rat lo(0), hi(0);
    bool any = false;
    for (const auto& [n, th] : pairs) {
        if (n < 1) fail(Err::BadInput, "levels start at 1");
        if (th <= 0 || th > 1) fail(Err::BadInput, "weights must lie in (0, 1]");
        if (n > horizon) continue;
        auto rb = nth_root_bounds(th, static_cast<unsigned>(n), tol);
        if (rb.lo > lo) lo = rb.lo;
        if (rb.hi > hi) hi = rb.hi;
        any = true;
    }
    if (!any) fail(Err::BadInput, "no pairs within the horizon");
    return {lo, hi};
}

} // namespace tsi
