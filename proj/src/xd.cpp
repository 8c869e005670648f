#include "tsi/xd.hpp"

#include "tsi/errors.hpp"
#include "tsi/norm.hpp"
#include "tsi/schreier.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

namespace tsi {
namespace {

constexpr Idx kSupportCap = 10;
constexpr int kDepthCap = 3;
constexpr int kArityCap = 4;
// hard failure thresholds
constexpr std::size_t kComboCap = 4096;
constexpr std::size_t kPoolCap = 200000;
// per-rule enumeration budgets; exceeding them truncates the rule instead of
// failing, so deep pools are inner approximations of the saturated set
constexpr std::size_t kRuleScanCap = 200000;
constexpr std::size_t kRuleNewCap = 1500;

std::string coeff_key(const std::vector<Rat>& coeffs) {
    std::string key;
    for (const auto& c : coeffs) {
        key += rat_str(c);
        key += ',';
    }
    return key;
}

void validate_params(const DSpaceParams& params) {
    if (params.p != 1)
        fail(Err::Unsupported, "the coding layer is implemented for p=1 only");
    if (params.n_pairs.empty()) fail(Err::BadInput, "no plain pairs listed");
    auto check_pairs = [](const std::vector<std::pair<int, Rat>>& pairs, const char* label) {
        int prev = 0;
        for (const auto& [idx, w] : pairs) {
            if (idx <= prev) fail(Err::BadInput, std::string(label) + " indices must increase");
            if (w <= 0 || w >= 1)
                fail(Err::DegenerateTheta, std::string(label) + " weights must lie in (0,1)");
            prev = idx;
        }
    };
    check_pairs(params.n_pairs, "plain");
    check_pairs(params.l_pairs, "special");
    int horizon = params.n_pairs.back().first;
    auto reg = regularize(params.n_pairs, horizon);
    for (const auto& [idx, w] : params.n_pairs)
        for (const auto& [ri, rv] : reg)
            if (ri == idx && rv != w)
                fail(Err::PreconditionFailed, "plain weights are not regular");
    if (params.sigma.levels.empty()) fail(Err::BadInput, "empty character list");
    int prev = 0;
    for (int lev : params.sigma.levels) {
        if (lev <= prev) fail(Err::BadInput, "character list must increase");
        bool listed = false;
        for (const auto& [idx, w] : params.n_pairs) listed = listed || idx == lev;
        if (!listed) fail(Err::BadInput, "coding characters must be listed plain levels");
        prev = lev;
    }
    if (params.gamma_grid.empty()) fail(Err::BadInput, "empty scalar grid");
    for (const auto& g : params.gamma_grid)
        if (g < -1 || g > 1) fail(Err::BadInput, "grid scalar outside the dual ball");
}

std::optional<Rat> pair_weight(const std::vector<std::pair<int, Rat>>& pairs, int idx) {
    for (const auto& [i, w] : pairs)
        if (i == idx) return w;
    return std::nullopt;
}

} // namespace

nlohmann::json SigmaCoding::to_json() const {
    return {{"levels", levels}, {"growth", growth}};
}

SigmaCoding SigmaCoding::from_json(const nlohmann::json& j) {
    SigmaCoding out;
    out.levels = j.at("levels").get<std::vector<int>>();
    out.growth = j.at("growth").get<bool>();
    return out;
}

Idx DFunctional::min_supp() const {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Idx idx = static_cast<Idx>(i) + 1;
        if (window && (idx < window->first || idx > window->second)) continue;
        if (coeffs[i] != 0) return idx;
    }
    return 0;
}

Idx DFunctional::max_supp() const {
    for (std::size_t i = coeffs.size(); i > 0; --i) {
        Idx idx = static_cast<Idx>(i);
        if (window && (idx < window->first || idx > window->second)) continue;
        if (coeffs[i - 1] != 0) return idx;
    }
    return 0;
}

Rat DFunctional::eval(const C00Vector& x) const {
    if (x.p() != 1) fail(Err::Unsupported, "functional evaluation requires p=1");
    Rat sum;
    for (const auto& r : x.runs()) {
        for (Idx k = 0; k < r.len; ++k) {
            Idx idx = r.start + k;
            if (idx > static_cast<Idx>(coeffs.size())) break;
            if (window && (idx < window->first || idx > window->second)) continue;
            if (r.sign > 0)
                sum += coeffs[idx - 1] * r.mag_p;
            else
                sum -= coeffs[idx - 1] * r.mag_p;
        }
    }
    return sum;
}

nlohmann::json DFunctional::to_json() const {
    nlohmann::json j;
    j["coeffs"] = nlohmann::json::array();
    for (const auto& c : coeffs) j["coeffs"].push_back(rat_str(c));
    j["kind"] = static_cast<int>(kind);
    j["character"] = character;
    j["children"] = children;
    j["gammas"] = nlohmann::json::array();
    for (const auto& g : gammas) j["gammas"].push_back(rat_str(g));
    j["chain_codes"] = chain_codes;
    j["negated"] = negated;
    if (window)
        j["window"] = {window->first, window->second};
    else
        j["window"] = nullptr;
    return j;
}

DFunctional DFunctional::from_json(const nlohmann::json& j) {
    DFunctional f;
    for (const auto& c : j.at("coeffs")) f.coeffs.push_back(rat_parse(c.get<std::string>()));
    f.kind = j.at("kind").get<int>();
    f.character = j.at("character").get<int>();
    f.children = j.at("children").get<std::vector<int>>();
    for (const auto& g : j.at("gammas")) f.gammas.push_back(rat_parse(g.get<std::string>()));
    f.chain_codes = j.at("chain_codes").get<std::vector<int>>();
    f.negated = j.at("negated").get<bool>();
    if (!j.at("window").is_null()) {
        auto w = j.at("window").get<std::vector<Idx>>();
        if (w.size() != 2) fail(Err::BadInput, "window wants two endpoints");
        f.window = {w[0], w[1]};
    }
    return f;
}

SigmaCoder::SigmaCoder(SigmaCoding coding) : coding_(std::move(coding)) {
    if (coding_.levels.empty()) fail(Err::BadInput, "empty character list");
}

int SigmaCoder::code(const std::vector<const DFunctional*>& word) {
    if (word.empty()) fail(Err::BadInput, "empty word");
    Idx maxsupp = 0;
    std::string key;
    for (const DFunctional* f : word) {
        Idx m = f->max_supp();
        if (m == 0) fail(Err::BadInput, "zero functional in word");
        maxsupp = std::max(maxsupp, m);
        key += coeff_key(f->coeffs);
        key += '|';
    }
    auto it = assigned_.find(key);
    int pos;
    if (it != assigned_.end()) {
        pos = it->second;
    } else {
        pos = coding_.growth ? std::max(static_cast<int>(maxsupp), last_ + 1) : last_ + 1;
        if (pos > static_cast<int>(coding_.levels.size()))
            fail(Err::NOutOfRange, "word runs past the listed characters");
        assigned_.emplace(std::move(key), pos);
        last_ = pos;
    }
    return coding_.levels[pos - 1];
}

int sigma_code(SigmaCoder& coder, const std::vector<const DFunctional*>& word) {
    return coder.code(word);
}

DSpaceParams DSpaceParams::preset() {
    DSpaceParams out;
    out.p = 1;
    out.n_pairs = {{1, Rat(1, 2)}, {2, Rat(1, 4)}, {3, Rat(1, 8)}, {4, Rat(1, 16)}};
    out.l_pairs = {{1, Rat(1, 8)}, {2, Rat(1, 64)}};
    out.sigma.levels = {1, 2, 3, 4};
    out.sigma.growth = true;
    out.gamma_grid = {Rat(0), Rat(1), Rat(-1), Rat(1, 2), Rat(-1, 2)};
    return out;
}

SpaceSpec DSpaceParams::z_space() const {
    validate_params(*this);
    return SpaceSpec::make(p, n_pairs);
}

SpaceSpec DSpaceParams::k_space() const {
    validate_params(*this);
    std::map<int, Rat> merged;
    for (const auto& [idx, w] : n_pairs) merged[idx] = w;
    for (const auto& [idx, w] : l_pairs) {
        auto it = merged.find(idx);
        if (it == merged.end())
            merged[idx] = w;
        else if (it->second < w)
            it->second = w;
    }
    std::vector<std::pair<int, Rat>> pairs(merged.begin(), merged.end());
    return SpaceSpec::make(p, std::move(pairs));
}

nlohmann::json DSpaceParams::to_json() const {
    nlohmann::json j;
    j["p"] = p;
    auto dump_pairs = [](const std::vector<std::pair<int, Rat>>& pairs) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [idx, w] : pairs) arr.push_back({idx, rat_str(w)});
        return arr;
    };
    j["n_pairs"] = dump_pairs(n_pairs);
    j["l_pairs"] = dump_pairs(l_pairs);
    j["sigma"] = sigma.to_json();
    j["grid"] = nlohmann::json::array();
    for (const auto& g : gamma_grid) j["grid"].push_back(rat_str(g));
    return j;
}

DSpaceParams DSpaceParams::from_json(const nlohmann::json& j) {
    DSpaceParams out;
    out.p = j.at("p").get<int>();
    auto load_pairs = [](const nlohmann::json& arr) {
        std::vector<std::pair<int, Rat>> pairs;
        for (const auto& e : arr)
            pairs.emplace_back(e.at(0).get<int>(), rat_parse(e.at(1).get<std::string>()));
        return pairs;
    };
    out.n_pairs = load_pairs(j.at("n_pairs"));
    out.l_pairs = load_pairs(j.at("l_pairs"));
    out.sigma = SigmaCoding::from_json(j.at("sigma"));
    for (const auto& g : j.at("grid")) out.gamma_grid.push_back(rat_parse(g.get<std::string>()));
    validate_params(out);
    return out;
}

std::vector<DFunctional> build_d(const DSpaceParams& params, Idx supportBound, int depthBound) {
    validate_params(params);
    if (supportBound < 1 || supportBound > kSupportCap)
        fail(Err::BadInput, "support bound must lie in [1,10]");
    if (depthBound < 0 || depthBound > kDepthCap)
        fail(Err::BadInput, "depth bound must lie in [0,3]");

    std::vector<DFunctional> pool;
    std::map<std::string, int> seen;
    auto push = [&](DFunctional f) {
        bool zero = true;
        for (const auto& c : f.coeffs) zero = zero && c == 0;
        if (zero) return;
        std::string key = coeff_key(f.coeffs);
        if (seen.count(key)) return;
        if (pool.size() >= kPoolCap)
            fail(Err::Explosion, "functional pool exceeded the configured cap");
        seen.emplace(std::move(key), static_cast<int>(pool.size()));
        pool.push_back(std::move(f));
    };

    for (Idx i = 1; i <= supportBound; ++i) {
        for (int sign : {1, -1}) {
            DFunctional f;
            f.coeffs.assign(supportBound, Rat(0));
            f.coeffs[i - 1] = Rat(sign);
            f.kind = DFunctional::Unit;
            push(std::move(f));
        }
    }

    std::vector<Rat> grid_nz;
    for (const auto& g : params.gamma_grid)
        if (g != 0 && std::find(grid_nz.begin(), grid_nz.end(), g) == grid_nz.end())
            grid_nz.push_back(g);
    std::sort(grid_nz.begin(), grid_nz.end());
    std::vector<Rat> grid_pm;
    for (const auto& g : grid_nz)
        if (g == 1 || g == -1) grid_pm.push_back(g);

    SigmaCoder coder(params.sigma);

    for (int depth = 1; depth <= depthBound; ++depth) {
        std::size_t layer_end = pool.size();

        // children drawn from earlier layers, scanned in support order
        std::vector<int> order(layer_end);
        for (std::size_t i = 0; i < layer_end; ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return pool[a].min_supp() < pool[b].min_supp();
        });
        std::vector<Idx> order_min(layer_end);
        for (std::size_t i = 0; i < layer_end; ++i) order_min[i] = pool[order[i]].min_supp();
        auto first_past = [&](Idx maxsupp) {
            return static_cast<std::size_t>(
                std::upper_bound(order_min.begin(), order_min.end(), maxsupp) -
                order_min.begin());
        };

        for (const auto& [n, theta] : params.n_pairs) {
            FamilyDescriptor fam = FamilyDescriptor::schreier(n);
            for (int arity = 1; arity <= kArityCap; ++arity) {
                const std::vector<Rat>& vals = arity <= 2 ? grid_nz : grid_pm;
                if (vals.empty()) continue;
                std::size_t combos = 1;
                for (int k = 0; k < arity; ++k) {
                    combos *= vals.size();
                    if (combos > kComboCap)
                        fail(Err::Explosion, "grid assignments per tuple exceed the cap");
                }
                std::size_t scans = 0;
                std::size_t added = 0;
                std::vector<int> chosen;
                std::vector<Idx> minima;
                std::function<void(Idx)> grow = [&](Idx maxsupp) {
                    if (scans > kRuleScanCap || added >= kRuleNewCap) return;
                    for (std::size_t at = first_past(maxsupp); at < layer_end; ++at) {
                        if (++scans > kRuleScanCap || added >= kRuleNewCap) return;
                        int ci = order[at];
                        minima.push_back(pool[ci].min_supp());
                        bool ok = member(FinSet(minima), fam);
                        if (!ok) {
                            // spreading family: shifting the appended minimum
                            // right cannot restore membership
                            minima.pop_back();
                            return;
                        }
                        chosen.push_back(ci);
                        if (static_cast<int>(chosen.size()) == arity) {
                            std::vector<std::size_t> pos(arity, 0);
                            while (true) {
                                DFunctional f;
                                f.coeffs.assign(supportBound, Rat(0));
                                f.kind = DFunctional::Plain;
                                f.character = n;
                                f.children = chosen;
                                for (int k = 0; k < arity; ++k) {
                                    const Rat& g = vals[pos[k]];
                                    f.gammas.push_back(g);
                                    const auto& cc = pool[chosen[k]].coeffs;
                                    for (Idx i = 0; i < supportBound; ++i)
                                        if (cc[i] != 0) f.coeffs[i] += theta * g * cc[i];
                                }
                                std::size_t before = pool.size();
                                push(std::move(f));
                                if (pool.size() > before) ++added;
                                int k = arity - 1;
                                while (k >= 0 && ++pos[k] == vals.size()) pos[k--] = 0;
                                if (k < 0 || added >= kRuleNewCap) break;
                            }
                        } else {
                            grow(pool[ci].max_supp());
                        }
                        chosen.pop_back();
                        minima.pop_back();
                    }
                };
                grow(0);
            }
        }

        for (const auto& [l, rho] : params.l_pairs) {
            FamilyDescriptor fam = FamilyDescriptor::schreier(l);
            std::size_t scans = 0;
            std::size_t added = 0;
            std::vector<int> chosen;
            std::vector<Idx> minima;
            std::vector<int> codes;
            auto emit = [&]() {
                DFunctional f;
                f.coeffs.assign(supportBound, Rat(0));
                f.kind = DFunctional::Special;
                f.character = l;
                f.children = chosen;
                f.chain_codes = codes;
                for (int ci : chosen) {
                    const auto& cc = pool[ci].coeffs;
                    for (Idx i = 0; i < supportBound; ++i)
                        if (cc[i] != 0) f.coeffs[i] += rho * cc[i];
                }
                std::size_t before = pool.size();
                push(std::move(f));
                if (pool.size() > before) ++added;
            };
            std::function<void()> grow = [&]() {
                if (scans > kRuleScanCap || added >= kRuleNewCap) return;
                if (static_cast<int>(chosen.size()) == kArityCap) return;
                Idx maxsupp = pool[chosen.back()].max_supp();
                // the prefix word is coded only once an admissible extension
                // exists, so dead-end prefixes never consume a position
                bool coded = false;
                int want = 0;
                for (std::size_t at = first_past(maxsupp); at < layer_end; ++at) {
                    if (++scans > kRuleScanCap || added >= kRuleNewCap) return;
                    int ci = order[at];
                    minima.push_back(pool[ci].min_supp());
                    if (!member(FinSet(minima), fam)) {
                        minima.pop_back();
                        return;
                    }
                    if (!coded) {
                        std::vector<const DFunctional*> word;
                        for (int w : chosen) word.push_back(&pool[w]);
                        try {
                            want = coder.code(word);
                        } catch (const Error& err) {
                            if (err.code() != Err::NOutOfRange) throw;
                            minima.pop_back();
                            return;
                        }
                        coded = true;
                    }
                    if (pool[ci].kind == DFunctional::Plain && pool[ci].character == want) {
                        chosen.push_back(ci);
                        codes.push_back(want);
                        emit();
                        grow();
                        codes.pop_back();
                        chosen.pop_back();
                    }
                    minima.pop_back();
                }
            };
            for (std::size_t at = 0; at < layer_end; ++at) {
                if (scans > kRuleScanCap || added >= kRuleNewCap) break;
                int ci = order[at];
                if (pool[ci].kind != DFunctional::Plain) continue;
                chosen.assign(1, ci);
                minima.assign(1, pool[ci].min_supp());
                codes.clear();
                grow();
            }
        }

        // symmetric closure of the layer
        std::size_t closed_end = pool.size();
        for (std::size_t i = layer_end; i < closed_end; ++i) {
            DFunctional f = pool[i];
            for (auto& c : f.coeffs) c = -c;
            if (f.kind == DFunctional::Plain)
                for (auto& g : f.gammas) g = -g;
            else
                f.negated = !f.negated;
            push(std::move(f));
        }
    }
    return pool;
}

bool check_dfunctionals(const std::vector<DFunctional>& pool, const DSpaceParams& params) {
    validate_params(params);
    for (std::size_t at = 0; at < pool.size(); ++at) {
        const DFunctional& f = pool[at];
        if (f.window && f.window->first > f.window->second)
            fail(Err::BadInput, "inverted window");
        if (f.max_supp() == 0) fail(Err::BadInput, "zero functional in pool");
        if (f.kind == DFunctional::Unit) {
            if (!f.children.empty() || !f.gammas.empty() || !f.chain_codes.empty())
                fail(Err::BadInput, "unit carries construction data");
            int nonzero = 0;
            for (const auto& c : f.coeffs) {
                if (c == 0) continue;
                ++nonzero;
                if (c != 1 && c != -1) fail(Err::BadInput, "unit coefficient is not a sign");
            }
            if (nonzero != 1) fail(Err::BadInput, "unit support is not a point");
            continue;
        }
        if (f.children.empty() || f.children.size() > kArityCap)
            fail(Err::BadInput, "arity out of range");
        std::vector<Idx> minima;
        Idx prev_max = 0;
        for (int ci : f.children) {
            if (ci < 0 || ci >= static_cast<int>(at))
                fail(Err::BadInput, "child index breaks build order");
            const DFunctional& c = pool[ci];
            if (c.min_supp() <= prev_max) fail(Err::BadInput, "children are not successive");
            minima.push_back(c.min_supp());
            prev_max = c.max_supp();
        }
        if (!member(FinSet(minima), FamilyDescriptor::schreier(f.character)))
            fail(Err::BadInput, "children minima are not admissible");
        std::vector<Rat> expect(f.coeffs.size(), Rat(0));
        if (f.kind == DFunctional::Plain) {
            auto theta = pair_weight(params.n_pairs, f.character);
            if (!theta) fail(Err::BadInput, "plain character is not listed");
            if (f.gammas.size() != f.children.size())
                fail(Err::BadInput, "one grid scalar per child is required");
            for (std::size_t k = 0; k < f.children.size(); ++k) {
                const Rat& g = f.gammas[k];
                bool on_grid = false;
                for (const auto& v : params.gamma_grid) on_grid = on_grid || v == g || v == -g;
                if (!on_grid) fail(Err::BadInput, "scalar off the grid");
                const auto& cc = pool[f.children[k]].coeffs;
                for (std::size_t i = 0; i < expect.size() && i < cc.size(); ++i)
                    expect[i] += *theta * g * cc[i];
            }
        } else if (f.kind == DFunctional::Special) {
            auto rho = pair_weight(params.l_pairs, f.character);
            if (!rho) fail(Err::BadInput, "special character is not listed");
            if (f.children.size() < 2) fail(Err::BadInput, "chain needs at least two links");
            if (f.chain_codes.size() + 1 != f.children.size())
                fail(Err::BadInput, "one code per proper prefix is required");
            for (std::size_t k = 0; k < f.children.size(); ++k) {
                const DFunctional& c = pool[f.children[k]];
                if (c.kind != DFunctional::Plain) fail(Err::BadInput, "chain link is not plain");
                if (k > 0 && c.character != f.chain_codes[k - 1])
                    fail(Err::BadInput, "chain link character differs from the code");
                for (std::size_t i = 0; i < expect.size() && i < c.coeffs.size(); ++i) {
                    if (f.negated)
                        expect[i] -= *rho * c.coeffs[i];
                    else
                        expect[i] += *rho * c.coeffs[i];
                }
            }
            for (int code : f.chain_codes)
                if (!pair_weight(params.n_pairs, code))
                    fail(Err::BadInput, "code is not a listed plain level");
        } else {
            fail(Err::BadInput, "unknown functional kind");
        }
        if (expect != f.coeffs) fail(Err::BadInput, "coefficients differ from the rule");
    }
    return true;
}

std::pair<Rat, Rat> norm_d_bounds(const C00Vector& x, const std::vector<DFunctional>& pool,
                                  const DSpaceParams& params) {
    if (x.empty()) fail(Err::EmptyVector, "empty vector");
    Rat lower(0);
    for (const auto& f : pool) {
        Rat v = f.eval(x);
        if (v > lower) lower = v;
    }
    return {lower, norm_p(x, params.k_space())};
}

namespace {

// exact int64 profile of a dyadic functional: coeffs[i] == nums[i] / 2^shift
struct DyadicProfile {
    std::array<std::int64_t, kSupportCap> nums;
    std::uint32_t mask = 0;
};

bool dyadic_shift(const Rat& value, unsigned cap, unsigned& shift) {
    mpz_class den = value.get_den();
    mp_bitcnt_t low = mpz_scan1(den.get_mpz_t(), 0);
    if (mpz_sizeinbase(den.get_mpz_t(), 2) != low + 1) return false;
    if (low > cap) return false;
    shift = static_cast<unsigned>(low);
    return true;
}

} // namespace

ClaimReport claim_scan(const DSpaceParams& params, int n, const Budget& budget,
                       const std::vector<DFunctional>& extra) {
    validate_params(params);
    auto theta = pair_weight(params.n_pairs, n);
    if (!theta) fail(Err::BadInput, "level is not listed");

    Rat bar = *theta / rat_pow(Rat(2), static_cast<unsigned>(params.p));
    int max_listed = params.n_pairs.back().first;
    if (!params.l_pairs.empty()) max_listed = std::max(max_listed, params.l_pairs.back().first);
    ClaimReport report;
    report.j_n = 0;
    for (int j = 1; j <= max_listed && report.j_n == 0; ++j) {
        bool ok = true;
        for (const auto& [idx, w] : params.n_pairs)
            if (idx >= j && w > bar) ok = false;
        for (const auto& [idx, w] : params.l_pairs)
            if (idx >= j && w > bar) ok = false;
        if (ok) report.j_n = j;
    }
    if (report.j_n == 0) fail(Err::BoundsTooTight, "vacuous at this scale");
    report.i_n = 0;
    for (std::size_t m = 0; m < params.sigma.levels.size() && report.i_n == 0; ++m)
        if (params.sigma.levels[m] > report.j_n) report.i_n = static_cast<int>(m) + 1;
    if (report.i_n == 0 || report.i_n > static_cast<int>(kSupportCap))
        fail(Err::BoundsTooTight, "vacuous at this scale");

    std::vector<DFunctional> pool = build_d(params, kSupportCap, kDepthCap);
    for (const auto& f : extra) {
        if (f.coeffs.size() > kSupportCap) fail(Err::BadInput, "extra functional too wide");
        DFunctional g = f;
        g.coeffs.resize(kSupportCap, Rat(0));
        pool.push_back(std::move(g));
    }

    // the pool is dyadic for the preset; profile it once so every sample is a
    // handful of int64 dot products instead of rational arithmetic
    unsigned pool_shift = 0;
    bool dyadic = true;
    for (const auto& f : pool) {
        for (const auto& c : f.coeffs) {
            unsigned s;
            if (!dyadic_shift(c, 40, s)) {
                dyadic = false;
                break;
            }
            pool_shift = std::max(pool_shift, s);
        }
        if (!dyadic) break;
    }
    std::vector<DyadicProfile> profiles;
    if (dyadic) {
        profiles.reserve(pool.size());
        for (const auto& f : pool) {
            DyadicProfile pr;
            pr.nums.fill(0);
            for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
                if (f.coeffs[i] == 0) continue;
                Rat scaled = f.coeffs[i] * rat_pow(Rat(2), pool_shift);
                pr.nums[i] = static_cast<std::int64_t>(scaled.get_num().get_si());
                pr.mask |= 1u << i;
            }
            profiles.push_back(pr);
        }
    }

    std::vector<FinSet> supports;
    for (const auto& s :
         enumerate_members(FamilyDescriptor::schreier(n), report.i_n, kSupportCap))
        if (!s.empty()) supports.push_back(s);
    if (supports.empty()) fail(Err::BoundsTooTight, "vacuous at this scale");

    SpaceSpec zspace = params.z_space();
    Rng rng(budget.seed);
    BudgetClock clock(budget);
    report.max_ratio = Rat(0);
    constexpr unsigned kMagShift = 3;
    while (clock.tick()) {
        const FinSet& supp = supports[report.samples % supports.size()];
        std::vector<std::int64_t> xnums(kSupportCap, 0);
        std::vector<std::tuple<Idx, Rat, int>> entries;
        for (Idx i = 0; i < supp.size(); ++i) {
            Idx idx = supp.at(i);
            std::int64_t num = 1 + static_cast<std::int64_t>(rng.below(8));
            unsigned e = static_cast<unsigned>(rng.below(kMagShift + 1));
            int sign = rng.flip() ? 1 : -1;
            entries.emplace_back(idx, Rat(static_cast<long>(num)) / rat_pow(Rat(2), e), sign);
            xnums[idx - 1] = sign * (num << (kMagShift - e));
        }
        C00Vector x = C00Vector::from_entries(params.p, entries);
        ++report.samples;

        Rat lower(0);
        if (dyadic) {
            std::uint32_t xmask = 0;
            for (Idx i = 0; i < kSupportCap; ++i)
                if (xnums[i] != 0) xmask |= 1u << i;
            std::int64_t best = 0;
            for (const auto& pr : profiles) {
                if ((pr.mask & xmask) == 0) continue;
                std::int64_t sum = 0;
                for (Idx i = 0; i < kSupportCap; ++i)
                    if (xnums[i] != 0) sum += pr.nums[i] * xnums[i];
                if (sum > best) best = sum;
            }
            lower = Rat(static_cast<long>(best)) / rat_pow(Rat(2), pool_shift + kMagShift);
        } else {
            for (const auto& f : pool) {
                Rat v = f.eval(x);
                if (v > lower) lower = v;
            }
        }

        Rat ratio = lower / norm_p(x, zspace);
        if (ratio > report.max_ratio) report.max_ratio = ratio;
        if (ratio > 4 && report.flagged.size() < 16) report.flagged.push_back(x);
    }
    return report;
}

} // namespace tsi
