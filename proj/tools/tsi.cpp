#include "tsi/asymptotics.hpp"
#include "tsi/blockops.hpp"
#include "tsi/budget.hpp"
#include "tsi/domination.hpp"
#include "tsi/errors.hpp"
#include "tsi/norm.hpp"
#include "tsi/schreier.hpp"
#include "tsi/specialvec.hpp"
#include "tsi/suite.hpp"
#include "tsi/vector.hpp"
#include "tsi/xd.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

using namespace tsi;

namespace {

// values print as exact fractions plus a 12-digit decimal rounded down, so
// tables stay exact and readable at a glance
void print_value(const std::string& label, const Rat& v) {
    std::cout << label << " = " << rat_str(v) << " ~ " << rat_decimal(v, 12, false) << "\n";
}

nlohmann::json load_json(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '['))
        return nlohmann::json::parse(arg);
    std::ifstream in(arg);
    if (!in) fail(Err::BadInput, "cannot open " + arg);
    nlohmann::json j;
    in >> j;
    return j;
}

void emit(const nlohmann::json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream of(out);
    if (!of) fail(Err::BadInput, "cannot write " + out);
    of << j.dump(2) << "\n";
    std::cout << "wrote " << out << "\n";
}

std::vector<Idx> parse_indices(const std::string& csv) {
    std::vector<Idx> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(static_cast<Idx>(std::stoll(item)));
    return out;
}

FinSet parse_set(const std::string& csv) { return FinSet(parse_indices(csv)); }

std::vector<FinSet> parse_set_list(const std::string& text) {
    std::vector<FinSet> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) out.push_back(parse_set(item));
    return out;
}

std::vector<std::pair<int, Rat>> parse_pairs(const nlohmann::json& arr) {
    std::vector<std::pair<int, Rat>> pairs;
    for (const auto& e : arr)
        pairs.emplace_back(e.at(0).get<int>(), rat_parse(e.at(1).get<std::string>()));
    return pairs;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

C00Vector draw_sample(Rng& rng, Idx lo, Idx hi, int max_points) {
    int count = 1 + static_cast<int>(rng.below(max_points));
    std::map<Idx, std::pair<Rat, int>> picked;
    for (int i = 0; i < count; ++i) {
        Idx at = rng.in(lo, hi);
        Rat mag = rat_of(1 + rng.below(8)) / rat_of(1 + rng.below(8));
        picked[at] = {mag, rng.flip() ? 1 : -1};
    }
    std::vector<std::tuple<Idx, Rat, int>> entries;
    for (const auto& [idx, e] : picked) entries.emplace_back(idx, e.first, e.second);
    return C00Vector::from_entries(1, entries);
}

struct Flags {
    std::string space, spaceX, spaceY, vec, cert, family, families, pairs, params, set, sets;
    std::string seq, probes, x, y, estimates, out, budget = "seed=0,max=10000", eps, theta, J;
    int n = 1, m = 0, depth = 2, beta = 1, horizon = 8, r = -1, brute_depth = 4;
    Idx lo = 1, hi = 8, start = 4, dim = 16, support = 6;
    std::uint64_t samples = 100, seed = 0;
};

int run(CLI::App& app, Flags& f) {
    int violation = 0;

    if (auto* g = app.get_subcommand("schreier"); g->parsed()) {
        if (auto* c = g->get_subcommand("member"); c->parsed()) {
            FamilyDescriptor fam = FamilyDescriptor::from_json(load_json(f.family));
            bool in = member(parse_set(f.set), fam);
            std::cout << "member = " << (in ? "true" : "false") << "\n";
        } else if (auto* c2 = g->get_subcommand("admissible"); c2->parsed()) {
            FamilyDescriptor fam = FamilyDescriptor::from_json(load_json(f.family));
            bool ok = is_admissible(parse_set_list(f.sets), fam);
            std::cout << "admissible = " << (ok ? "true" : "false") << "\n";
        } else if (auto* c3 = g->get_subcommand("maximal"); c3->parsed()) {
            FamilyDescriptor fam = FamilyDescriptor::from_json(load_json(f.family));
            for (const FinSet& s : maximal_sets(fam, f.lo, f.hi)) std::cout << s.str() << "\n";
        } else if (auto* c4 = g->get_subcommand("mass"); c4->parsed()) {
            FamilyDescriptor fam = FamilyDescriptor::from_json(load_json(f.family));
            C00Vector x = C00Vector::from_json(load_json(f.vec));
            print_value("mass", family_mass(x, fam));
        } else if (auto* c5 = g->get_subcommand("cb"); c5->parsed()) {
            FamilyDescriptor fam = FamilyDescriptor::from_json(load_json(f.family));
            if (fam.kind() == FamilyDescriptor::Kind::Explicit)
                std::cout << "cb = " << cb_explicit(fam) << "\n";
            else
                std::cout << "cb = " << cb_symbolic(fam).str() << "\n";
        }
        return 0;
    }

    if (auto* g = app.get_subcommand("norm"); g->parsed()) {
        if (auto* c = g->get_subcommand("eval"); c->parsed()) {
            SpaceSpec space = SpaceSpec::from_json(load_json(f.space));
            C00Vector x = C00Vector::from_json(load_json(f.vec));
            NormBounds nb = norm_bounds(x, space);
            if (nb.exact) {
                print_value("norm_p", nb.lower);
            } else {
                print_value("lower", nb.lower);
                print_value("upper", nb.upper);
            }
        } else if (auto* c2 = g->get_subcommand("cert"); c2->parsed()) {
            SpaceSpec space = SpaceSpec::from_json(load_json(f.space));
            C00Vector x = C00Vector::from_json(load_json(f.vec));
            NormCertificate cert = norm_certificate(x, space);
            print_value("norm_p", verify_certificate(cert, x, space));
            emit(cert.to_json(), f.out);
        } else if (auto* c3 = g->get_subcommand("verify"); c3->parsed()) {
            SpaceSpec space = SpaceSpec::from_json(load_json(f.space));
            C00Vector x = C00Vector::from_json(load_json(f.vec));
            NormCertificate cert = NormCertificate::from_json(load_json(f.cert));
            Rat got = verify_certificate(cert, x, space);
            Rat want = norm_p(x, space);
            print_value("certified", got);
            print_value("norm_p", want);
            if (got != want) {
                std::cout << "verify = mismatch\n";
                violation = 1;
            } else {
                std::cout << "verify = ok\n";
            }
        } else if (auto* c4 = g->get_subcommand("brute"); c4->parsed()) {
            SpaceSpec space = SpaceSpec::from_json(load_json(f.space));
            C00Vector x = C00Vector::from_json(load_json(f.vec));
            print_value("brute", brute_norm_p(x, space, f.brute_depth));
        } else if (auto* c5 = g->get_subcommand("rmax"); c5->parsed()) {
            SpaceSpec space = SpaceSpec::from_json(load_json(f.space));
            C00Vector x = C00Vector::from_json(load_json(f.vec));
            FamilyDescriptor fam = FamilyDescriptor::from_json(load_json(f.family));
            print_value("rmax", restriction_max(x, fam, space));
        } else if (auto* c6 = g->get_subcommand("regularize"); c6->parsed()) {
            SpaceSpec space = SpaceSpec::from_json(load_json(f.space));
            for (const auto& [n, v] : regularize(space.pairs(), f.horizon))
                print_value("theta_" + std::to_string(n), v);
        } else if (auto* c7 = g->get_subcommand("theta-sup"); c7->parsed()) {
            SpaceSpec space = SpaceSpec::from_json(load_json(f.space));
            auto [lo, hi] = theta_sup_bounds(space.pairs(), f.horizon);
            print_value("lower", lo);
            print_value("upper", hi);
        }
        return violation;
    }

    if (auto* g = app.get_subcommand("scc"); g->parsed()) {
        if (auto* c = g->get_subcommand("gen"); c->parsed()) {
            C00Vector z = repeated_averages(f.n, f.start);
            emit(z.to_json(), f.out);
        } else if (auto* c2 = g->get_subcommand("estbasis"); c2->parsed()) {
            SpaceSpec space = SpaceSpec::from_json(load_json(f.space));
            EstBasisResult r = est_basis_vector(space, f.n, f.start);
            print_value("delta", r.delta);
            print_value("bound", r.bound);
            if (!f.out.empty()) emit(r.x.to_json(), f.out);
        } else if (auto* c3 = g->get_subcommand("flatten"); c3->parsed()) {
            SpaceSpec space = SpaceSpec::from_json(load_json(f.space));
            FlattenResult r = flatten(space, f.beta, rat_parse(f.eps), Budget::parse(f.budget));
            print_value("restriction", r.restriction);
            print_value("norm_lower", r.norm_lower);
            print_value("ratio", r.ratio);
            std::cout << "candidates = " << r.candidates << "\n";
            if (!f.out.empty()) emit(r.w.to_json(), f.out);
        }
        return 0;
    }

    if (auto* g = app.get_subcommand("theta"); g->parsed()) {
        if (auto* c = g->get_subcommand("estimate"); c->parsed()) {
            SpaceSpec space = SpaceSpec::from_json(load_json(f.space));
            std::optional<int> r = f.r >= 0 ? std::optional<int>(f.r) : std::nullopt;
            ThetaEstimate est = theta_n_estimate(space, f.n, r, Budget::parse(f.budget));
            print_value("upper", est.upper);
            std::cout << "witness_blocks = " << est.witness.size() << "\n";
            std::cout << "exhausted = " << (est.exhausted ? "true" : "false") << "\n";
            if (!f.out.empty()) {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& w : est.witness) arr.push_back(w.to_json());
                emit(arr, f.out);
            }
        } else if (auto* c2 = g->get_subcommand("audit"); c2->parsed()) {
            std::map<int, Rat> estimates;
            for (const auto& [n, v] : parse_pairs(load_json(f.estimates))) estimates[n] = v;
            auto flags = submult_audit(estimates);
            for (const auto& fl : flags) {
                std::cout << "flag n=" << fl.n << " m=" << fl.m << " floor " << rat_str(fl.floor)
                          << " above estimate " << rat_str(fl.upper) << "\n";
            }
            std::cout << "flags = " << flags.size() << "\n";
            if (!flags.empty()) violation = 1;
        }
        return violation;
    }

    if (auto* g = app.get_subcommand("dom"); g->parsed()) {
        if (auto* c = g->get_subcommand("delta"); c->parsed()) {
            SpaceSpec sx = SpaceSpec::from_json(load_json(f.spaceX));
            SpaceSpec sy = SpaceSpec::from_json(load_json(f.spaceY));
            FamilyDescriptor fam = FamilyDescriptor::from_json(load_json(f.family));
            DeltaStarResult r =
                delta_star_estimate(sx, sy, fam, f.n, f.dim, Budget::parse(f.budget));
            print_value("lower", r.lower);
            if (!f.out.empty()) emit(r.witness.to_json(), f.out);
        } else if (auto* c2 = g->get_subcommand("triangle"); c2->parsed()) {
            SpaceSpec sx = SpaceSpec::from_json(load_json(f.spaceX));
            SpaceSpec sy = SpaceSpec::from_json(load_json(f.spaceY));
            C00Vector a = C00Vector::from_json(load_json(f.vec));
            std::vector<std::pair<int, FamilyDescriptor>> fams;
            for (const auto& e : load_json(f.families))
                fams.emplace_back(e.at(0).get<int>(), FamilyDescriptor::from_json(e.at(1)));
            TriangleReport r = triangle_holds(a, sx, sy, fams);
            print_value("lhs", r.lhs);
            print_value("rhs", r.rhs);
            std::cout << "holds = " << (r.holds ? "true" : "false") << "\n";
            if (!r.holds) violation = 1;
        } else if (auto* c3 = g->get_subcommand("tsistar"); c3->parsed()) {
            auto pairs = parse_pairs(load_json(f.pairs));
            Rng rng(f.seed);
            std::vector<C00Vector> sample;
            for (std::uint64_t i = 0; i < f.samples; ++i)
                sample.push_back(draw_sample(rng, 1, 20, 8));
            TsiStarReport r = tsistar_check(pairs, rat_parse(f.theta), f.n, sample);
            std::cout << "checked = " << r.checked << "\n";
            std::cout << "violations = " << r.violations << "\n";
            std::cout << "inconclusive = " << r.inconclusive << "\n";
            print_value("gap", r.gap);
            if (r.violations > 0) violation = 1;
        }
        return violation;
    }

    if (auto* g = app.get_subcommand("op"); g->parsed()) {
        if (auto* c = g->get_subcommand("theta3"); c->parsed()) {
            SpaceSpec space = SpaceSpec::from_json(load_json(f.space));
            BlockSeq seq = BlockSeq::from_json(load_json(f.seq), space);
            Theta3Result r =
                theta3_min_ratio(seq, f.m, rat_parse(f.theta), space, Budget::parse(f.budget));
            print_value("minratio", r.minratio);
            std::cout << "argmin_set = " << r.argmin_set.str() << "\n";
            std::cout << "exhausted = " << (r.exhausted ? "true" : "false") << "\n";
        } else if (auto* c2 = g->get_subcommand("build-y"); c2->parsed()) {
            SpaceSpec space = SpaceSpec::from_json(load_json(f.space));
            std::vector<BlockSeq> fams;
            for (const auto& e : load_json(f.families))
                fams.push_back(BlockSeq::from_json(e, space));
            BlockSeq y = build_y(fams, parse_indices(f.J), space);
            emit(y.to_json(), f.out);
        } else if (auto* c3 = g->get_subcommand("ratios"); c3->parsed()) {
            SpaceSpec sx = SpaceSpec::from_json(load_json(f.spaceX));
            SpaceSpec sy = SpaceSpec::from_json(load_json(f.spaceY));
            BlockSeq bx = BlockSeq::from_json(load_json(f.x), sx);
            BlockSeq by = BlockSeq::from_json(load_json(f.y), sy);
            std::vector<C00Vector> probes;
            for (const auto& e : load_json(f.probes)) probes.push_back(C00Vector::from_json(e));
            auto rs = operator_ratios(by, sy, bx, sx, probes);
            for (std::size_t i = 0; i < rs.size(); ++i) {
                print_value("image_" + std::to_string(i), rs[i].first);
                print_value("preimage_" + std::to_string(i), rs[i].second);
            }
        }
        return 0;
    }

    if (auto* g = app.get_subcommand("xd"); g->parsed()) {
        DSpaceParams params =
            f.params.empty() ? DSpaceParams::preset() : DSpaceParams::from_json(load_json(f.params));
        if (auto* c = g->get_subcommand("build"); c->parsed()) {
            auto pool = build_d(params, f.support, f.depth);
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& fn : pool) arr.push_back(fn.to_json());
            nlohmann::json out = {{"params", params.to_json()},
                                  {"support", f.support},
                                  {"depth", f.depth},
                                  {"functionals", arr}};
            std::cout << "functionals = " << pool.size() << "\n";
            emit(out, f.out);
        } else if (auto* c2 = g->get_subcommand("eval"); c2->parsed()) {
            nlohmann::json built = load_json(f.set);
            DSpaceParams bp = DSpaceParams::from_json(built.at("params"));
            std::vector<DFunctional> pool;
            for (const auto& e : built.at("functionals"))
                pool.push_back(DFunctional::from_json(e));
            C00Vector x = C00Vector::from_json(load_json(f.vec));
            auto [lo, hi] = norm_d_bounds(x, pool, bp);
            print_value("lower", lo);
            print_value("upper", hi);
        } else if (auto* c3 = g->get_subcommand("claim"); c3->parsed()) {
            ClaimReport r = claim_scan(params, f.n, Budget::parse(f.budget));
            std::cout << "j_n = " << r.j_n << "\n";
            std::cout << "i_n = " << r.i_n << "\n";
            std::cout << "samples = " << r.samples << "\n";
            print_value("max_ratio", r.max_ratio);
            std::cout << "flagged = " << r.flagged.size() << "\n";
            for (const auto& x : r.flagged) std::cout << x.to_json().dump() << "\n";
            if (!r.flagged.empty()) violation = 1;
        }
        return violation;
    }

    if (auto* g = app.get_subcommand("suite"); g->parsed()) {
        std::ostringstream csv;
        csv << "id,name,pass,detail\n";
        bool all = true;
        for (const auto& r : run_suite()) {
            csv << r.id << "," << csv_quote(r.name) << "," << (r.pass ? "pass" : "fail") << ","
                << csv_quote(r.detail) << "\n";
            std::cerr << (r.pass ? "PASS" : "FAIL") << " " << r.id << " " << r.name << " ("
                      << r.seconds << "s)\n";
            all = all && r.pass;
        }
        if (f.out.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream of(f.out);
            if (!of) fail(Err::BadInput, "cannot write " + f.out);
            of << csv.str();
            std::cout << "wrote " << f.out << "\n";
        }
        return all ? 0 : 1;
    }

    std::cerr << "no subcommand given; try --help\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    Flags f;
    CLI::App app{"exact computation in Schreier-family and mixed Tsirelson combinatorics"};
    app.require_subcommand(0, 1);
    app.footer("Scalar inputs and outputs are p-th powers of the underlying norms.\n"
               "Values print as exact fractions with 12-digit rounded-down decimals.");

    auto add_common = [&](CLI::App* c) {
        c->add_option("--out", f.out, "write the result to this file");
    };

    auto* sch = app.add_subcommand("schreier", "family membership, admissibility, mass, ranks");
    sch->require_subcommand(1);
    auto* sm = sch->add_subcommand("member", "set membership in a family");
    sm->add_option("--set", f.set, "comma-separated indices")->required();
    sm->add_option("--family", f.family, "family JSON (file or inline)")->required();
    auto* sa = sch->add_subcommand("admissible", "successive sets with admissible minima");
    sa->add_option("--sets", f.sets, "semicolon-separated index lists")->required();
    sa->add_option("--family", f.family, "family JSON")->required();
    auto* sx = sch->add_subcommand("maximal", "inclusion-maximal members in a window");
    sx->add_option("--family", f.family, "family JSON")->required();
    sx->add_option("--lo", f.lo, "window start")->required();
    sx->add_option("--hi", f.hi, "window end")->required();
    auto* sg = sch->add_subcommand("mass", "max member sum of magnitudes");
    sg->add_option("--vec", f.vec, "vector JSON")->required();
    sg->add_option("--family", f.family, "family JSON")->required();
    auto* sc = sch->add_subcommand("cb", "derivation rank of a family");
    sc->add_option("--family", f.family, "family JSON")->required();

    auto* nr = app.add_subcommand("norm", "norm evaluation, certificates, restriction maxima");
    nr->require_subcommand(1);
    for (const char* name : {"eval", "cert", "verify", "brute", "rmax"}) {
        auto* c = nr->add_subcommand(name);
        c->add_option("--space", f.space, "space JSON")->required();
        c->add_option("--vec", f.vec, "vector JSON")->required();
    }
    nr->get_subcommand("eval")->description("two-sided bounds, exact when they close");
    add_common(nr->get_subcommand("cert"));
    nr->get_subcommand("cert")->description("emit a partition-tree witness");
    nr->get_subcommand("verify")->description("replay a certificate against the engine");
    nr->get_subcommand("verify")->add_option("--cert", f.cert, "certificate JSON")->required();
    nr->get_subcommand("brute")->description("definitional depth-limited value");
    nr->get_subcommand("brute")->add_option("--depth", f.brute_depth, "recursion depth");
    nr->get_subcommand("rmax")->description("max norm over member restrictions");
    nr->get_subcommand("rmax")->add_option("--family", f.family, "family JSON")->required();
    auto* nreg = nr->add_subcommand("regularize", "largest weight products per level");
    nreg->add_option("--space", f.space, "space JSON")->required();
    nreg->add_option("--horizon", f.horizon, "table horizon");
    auto* nsup = nr->add_subcommand("theta-sup", "bounds on the weight growth rate");
    nsup->add_option("--space", f.space, "space JSON")->required();
    nsup->add_option("--horizon", f.horizon, "table horizon");

    auto* scc = app.add_subcommand("scc", "structured vectors: averages, flat vectors");
    scc->require_subcommand(1);
    auto* sgen = scc->add_subcommand("gen", "hierarchical uniform average");
    sgen->add_option("--n", f.n, "level")->required();
    sgen->add_option("--start", f.start, "first support point")->required();
    add_common(sgen);
    auto* sest = scc->add_subcommand("estbasis", "average vector with certified bound");
    sest->add_option("--space", f.space, "space JSON")->required();
    sest->add_option("--n", f.n, "level")->required();
    sest->add_option("--start", f.start, "first support point")->required();
    add_common(sest);
    auto* sfl = scc->add_subcommand("flatten", "search for a small restriction ratio");
    sfl->add_option("--space", f.space, "space JSON")->required();
    sfl->add_option("--beta", f.beta, "restriction level")->required();
    sfl->add_option("--eps", f.eps, "ratio target, rational")->required();
    sfl->add_option("--budget", f.budget, "seed=S,max=N[,time=T]");
    add_common(sfl);

    auto* th = app.add_subcommand("theta", "asymptotic weight estimates");
    th->require_subcommand(1);
    auto* the = th->add_subcommand("estimate", "upper estimate with block witness");
    the->add_option("--space", f.space, "space JSON")->required();
    the->add_option("--n", f.n, "level")->required();
    the->add_option("--r", f.r, "restrict block supports to this family level");
    the->add_option("--budget", f.budget, "seed=S,max=N[,time=T]");
    add_common(the);
    auto* tha = th->add_subcommand("audit", "flag submultiplicativity dips");
    tha->add_option("--estimates", f.estimates, "JSON array of [n, value] pairs")->required();

    auto* dm = app.add_subcommand("dom", "domination and tail comparisons");
    dm->require_subcommand(1);
    auto* dd = dm->add_subcommand("delta", "lower bound on the domination constant");
    dd->add_option("--spaceX", f.spaceX, "numerator space JSON")->required();
    dd->add_option("--spaceY", f.spaceY, "constraint space JSON")->required();
    dd->add_option("--family", f.family, "restriction family JSON")->required();
    dd->add_option("--n", f.n, "tail weight level")->required();
    dd->add_option("--dim", f.dim, "support cap")->required();
    dd->add_option("--budget", f.budget, "seed=S,max=N[,time=T]");
    add_common(dd);
    auto* dt = dm->add_subcommand("triangle", "tail-restriction comparison for one vector");
    dt->add_option("--vec", f.vec, "vector JSON")->required();
    dt->add_option("--spaceX", f.spaceX, "left space JSON")->required();
    dt->add_option("--spaceY", f.spaceY, "right space JSON")->required();
    dt->add_option("--families", f.families, "JSON array of [n, family] pairs")->required();
    auto* ds = dm->add_subcommand("tsistar", "two-term bound over sampled vectors");
    ds->add_option("--pairs", f.pairs, "JSON array of [l, weight] pairs")->required();
    ds->add_option("--theta", f.theta, "reference weight, rational")->required();
    ds->add_option("--n", f.n, "level")->required();
    ds->add_option("--samples", f.samples, "number of sampled vectors");
    ds->add_option("--seed", f.seed, "sample stream seed");

    auto* op = app.add_subcommand("op", "block sequences and section ratios");
    op->require_subcommand(1);
    auto* ot = op->add_subcommand("theta3", "minimum split ratio over members");
    ot->add_option("--seq", f.seq, "block sequence JSON")->required();
    ot->add_option("--M", f.m, "member family level")->required();
    ot->add_option("--theta", f.theta, "reference weight, rational")->required();
    ot->add_option("--space", f.space, "space JSON")->required();
    ot->add_option("--budget", f.budget, "seed=S,max=N[,time=T]");
    auto* ob = op->add_subcommand("build-y", "interleave weighted families");
    ob->add_option("--families", f.families, "JSON array of block sequences")->required();
    ob->add_option("--J", f.J, "comma-separated index set")->required();
    ob->add_option("--space", f.space, "space JSON")->required();
    add_common(ob);
    auto* orr = op->add_subcommand("ratios", "norm pairs of matched sections");
    orr->add_option("--x", f.x, "preimage block sequence JSON")->required();
    orr->add_option("--y", f.y, "image block sequence JSON")->required();
    orr->add_option("--spaceX", f.spaceX, "preimage space JSON")->required();
    orr->add_option("--spaceY", f.spaceY, "image space JSON")->required();
    orr->add_option("--probes", f.probes, "JSON array of coefficient vectors")->required();

    auto* xd = app.add_subcommand("xd", "coded norming sets");
    xd->require_subcommand(1);
    auto* xb = xd->add_subcommand("build", "saturate the functional pool");
    xb->add_option("--params", f.params, "parameter JSON; defaults to the preset");
    xb->add_option("--support", f.support, "support bound, at most 10");
    xb->add_option("--depth", f.depth, "rule depth, at most 3");
    add_common(xb);
    auto* xe = xd->add_subcommand("eval", "bracket a vector against a built pool");
    xe->add_option("--set", f.set, "built pool JSON from xd build")->required();
    xe->add_option("--vec", f.vec, "vector JSON")->required();
    auto* xc = xd->add_subcommand("claim", "scan for ratios above the 4 bound");
    xc->add_option("--params", f.params, "parameter JSON; defaults to the preset");
    xc->add_option("--n", f.n, "member family level")->required();
    xc->add_option("--budget", f.budget, "seed=S,max=N[,time=T]");

    auto* su = app.add_subcommand("suite", "run the release checks, emit CSV");
    su->add_option("--out", f.out, "write the CSV to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        app.exit(e);
        return 2;
    }

    try {
        return run(app, f);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}
