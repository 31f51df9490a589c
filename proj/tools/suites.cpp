#include "suites.hpp"

#include "qosc/chars.hpp"
#include "qosc/drinfeld.hpp"
#include "qosc/rmat.hpp"
#include "qosc/structure.hpp"
#include "qosc/trunc.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <thread>

namespace qosc::cli {

namespace {

using Job = std::function<Json()>;

// Runs independent jobs on up to `threads` workers; results keep job order.
std::vector<Json> run_jobs(const std::vector<Job>& jobs, int threads) {
    std::vector<Json> out(jobs.size());
    auto guarded = [&](std::size_t i) {
        try {
            out[i] = jobs[i]();
        } catch (const std::exception& ex) {
            out[i] = Json{{"name", "job " + std::to_string(i)}, {"pass", false}, {"witness", {{"error", ex.what()}}}};
        }
    };
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), jobs.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) guarded(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < jobs.size(); i = next++) guarded(i);
        });
    for (auto& t : pool) t.join();
    return out;
}

Json witness(const RelationFailure& f) { return {{"relation", f.relation}, {"input", f.input}, {"residue", f.residue}}; }

Json check(const std::string& name, const std::optional<RelationFailure>& f) {
    Json j{{"name", name}, {"pass", !f}};
    if (f) j["witness"] = witness(*f);
    return j;
}

Json check(const std::string& name, bool ok, const Json& wit = Json::object()) {
    Json j{{"name", name}, {"pass", ok}};
    if (!ok) j["witness"] = wit;
    return j;
}

// Errors raised by the computation itself become a failing check.
Json guarded_check(const std::string& name, const std::function<Json()>& body) {
    try {
        Json j = body();
        if (j.contains("name")) return j;
        Json named{{"name", name}};
        named.update(j);
        return named;
    } catch (const Error& ex) {
        return Json{{"name", name}, {"pass", false}, {"witness", {{"error", ex.what()}}}};
    }
}

Json report(const std::string& suite, Json params, std::vector<Json> checks, Json data = Json::object()) {
    bool pass = std::all_of(checks.begin(), checks.end(), [](const Json& c) { return c.at("pass").get<bool>(); });
    Json j{{"schema", kSchema}, {"suite", suite}, {"params", std::move(params)}, {"pass", pass}, {"checks", std::move(checks)}};
    if (!data.empty()) j["data"] = std::move(data);
    return j;
}

Eps parse_eps(const Params& p) {
    try {
        return Eps::parse(p.eps, p.r);
    } catch (const Error& ex) {
        throw UsageError(ex.what());
    }
}

Eps standard_eps(const Params& p, const std::string& suite) {
    Eps e = parse_eps(p);
    if (std::any_of(e.bits.begin(), e.bits.end(), [](int b) { return b != 0; }))
        throw UsageError(suite + " needs the all-even parity (--eps of zeros)");
    return e;
}

Scalar parse_value(const std::string& text) {
    try {
        return parse_scalar(text);
    } catch (const Error& ex) {
        throw UsageError("cannot parse scalar '" + text + "': " + ex.what());
    }
}

int pick(int v, int fallback) { return v < 0 ? fallback : v; }

std::string occ_str(const Occ& m) {
    std::string s;
    for (int x : m) s += (s.empty() ? "" : ",") + std::to_string(x);
    return "(" + s + ")";
}

std::string poly_str(const ZScalar::Poly& p) { return ZScalar::from_poly(p).str(); }

Json zscalar_json(const ZScalar& x) { return {{"num", poly_str(x.num())}, {"den", poly_str(x.den())}}; }

Json weight_json(const Weight& w) { return {{"level", w.level}, {"d", w.d}, {"k", w.k}}; }

Json char_json(const CharPoly& c) {
    Json terms = Json::array();
    for (const auto& [mono, coeff] : c.terms()) terms.push_back({{"mono", mono}, {"coeff", coeff.get_str()}});
    return {{"shape", {c.nx(), c.ny()}}, {"degree", c.degree()}, {"terms", terms}};
}

bool vec_proportional(const Vec& a, const Vec& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    Scalar ratio = b.begin()->second / a.at(b.begin()->first);
    return vec_is_zero(vec_sub(vec_scale(a, ratio), b));
}

// ---- suites ----

Json relations(const Params& p) {
    Eps e = parse_eps(p);
    int degree = pick(p.degree, 6), depth = pick(p.depth, 3);
    bool even = std::all_of(e.bits.begin(), e.bits.end(), [](int b) { return b == 0; });
    std::vector<Job> jobs{
        [=] {
            auto in = relation_inputs(e, degree, -1, -1);
            Json j = check("relations on single states", check_relations(e, relation_suite(e), in, Spectral::classical()));
            j["inputs"] = in.size();
            return j;
        },
        [=] {
            auto in = relation_inputs(e, -1, depth, depth);
            Json j = check("relations on 2- and 3-fold tensors, symbolic z",
                           check_relations(e, relation_suite(e), in, Spectral::affine()));
            j["inputs"] = in.size();
            return j;
        },
        [=] { return check("antipode axiom", check_antipode(e, std::min(degree, 3))); },
        [=] { return check("polarization", polarization_check(e, std::min(degree, 4))); },
    };
    if (even) jobs.push_back([=] { return check("commutation relations at q = 1", check_classical_limit(e.n(), e.r, std::min(degree, 5))); });
    Json params{{"eps", e.str()}, {"r", e.r}, {"degree", degree}, {"depth", depth}};
    return report("relations", params, run_jobs(jobs, p.threads), {{"relations", relation_suite(e).size()}});
}

Json singular(const Params& p) {
    Eps e = standard_eps(p, "singular");
    int l = p.l.value_or(1), m = p.m.value_or(0);
    int N = N_of(l, m), T = N + p.components;
    int bound = pick(p.depth, 3);
    std::vector<Job> jobs;
    for (int t = 0; t <= T; ++t)
        jobs.push_back([=] {
            return guarded_check("singular vector t=" + std::to_string(t), [&] {
                Vec u = singular_formula(e, l, m, t);
                Json j{{"name", "singular vector t=" + std::to_string(t)}};
                if (u.empty()) throw Error("closed form is empty");
                for (int k = 1; k < e.n(); ++k)
                    if (!vec_is_zero(apply(e, GenLabel::e(k), u))) {
                        j["pass"] = false;
                        j["witness"] = {{"error", "e_" + std::to_string(k) + " does not kill u"}, {"t", t}};
                        return j;
                    }
                Occ M = total_occ(u.begin()->first);
                auto ker = singular_kernel(e, {l, m}, M);
                bool ok = ker.size() == 1 && vec_proportional(u, ker[0]);
                j["pass"] = ok;
                j["label"] = component_label(l, m, t);
                j["occupation"] = occ_str(M);
                j["terms"] = u.size();
                j["kernel_dim"] = ker.size();
                if (!ok) j["witness"] = {{"error", "kernel differs from the closed form"}, {"t", t}, {"kernel_dim", ker.size()}};
                return j;
            });
        });
    jobs.push_back([=] { return check("ladder formulas", ladder_check(e, l, m, bound)); });
    Json params{{"eps", e.str()}, {"r", e.r}, {"l", l}, {"m", m}, {"components", p.components}, {"depth", bound}};
    return report("singular", params, run_jobs(jobs, p.threads), {{"N", N}});
}

Json rmatrix(const Params& p) {
    Eps e = parse_eps(p);
    int l = p.l.value_or(1), m = p.m.value_or(0), T = p.components, depth = pick(p.depth, std::max(T, 1));
    std::optional<Scalar> z;
    if (p.z) z = parse_value(*p.z);
    RMatrix R(e, l, m);
    std::vector<Json> checks;
    Json data;
    checks.push_back(guarded_check("solve", [&] {
        const auto& c = R.solve_upto(T, depth);
        Json rho = Json::array(), ratios = Json::array(), kappa = Json::array();
        for (const auto& [t, x] : c.rho) rho.push_back({{"t", t}, {"value", zscalar_json(x)}, {"text", x.str()}});
        for (const auto& [t, k] : c.kappa) kappa.push_back({{"t", t}, {"value", k.str()}});
        bool ok = c.undetermined.empty() || *std::min_element(c.undetermined.begin(), c.undetermined.end()) > T;
        Json bad = Json::array();
        for (int t = 1; t <= T; ++t) {
            if (!c.rho.count(t) || !c.rho.count(t - 1)) continue;
            ZScalar ratio = c.rho.at(t) / c.rho.at(t - 1);
            ZScalar rel = ratio / closed_form_factor(l, m, t);
            Json row{{"t", t}, {"ratio", ratio.str()}, {"closed_form", closed_form_factor(l, m, t).str()},
                     {"z_independent", rel.is_constant()}};
            if (rel.is_constant()) row["constant"] = rel.constant_value().str();
            else bad.push_back(t);
            ratios.push_back(row);
        }
        for (int t = 0; t <= T; ++t)
            if (!c.rho.count(t) && R.decomposition().has_component(t)) ok = false;
        data = {{"rho", rho}, {"ratios", ratios}, {"kappa", kappa}, {"undetermined", c.undetermined},
                {"sources", c.sources}, {"rank", c.rank}};
        Json j{{"name", "solve"}, {"pass", ok && bad.empty()}};
        if (!ok) j["witness"] = {{"error", "depth too small"}, {"undetermined", c.undetermined}};
        else if (!bad.empty()) j["witness"] = {{"error", "ratio depends on z"}, {"components", bad}};
        return j;
    }));
    if (z) {
        checks.push_back(guarded_check("specialization", [&] {
            Json vals = Json::array();
            for (const auto& [t, x] : R.coeffs().rho) vals.push_back({{"t", t}, {"value", R.rho_at(t, *z).str()}});
            data["specialized"] = vals;
            return Json{{"name", "specialization"}, {"pass", true}};
        }));
    }
    Json params{{"eps", e.str()}, {"r", e.r}, {"l", l}, {"m", m}, {"components", T}, {"depth", depth}};
    if (p.z) params["z"] = *p.z;
    return report("rmatrix", params, std::move(checks), data);
}

Json yangbaxter(const Params& p) {
    Eps e = parse_eps(p);
    int l = p.l.value_or(1), m = p.m.value_or(0), k = p.k.value_or(0), depth = pick(p.depth, 2);
    Json params{{"eps", e.str()}, {"r", e.r}, {"l", l}, {"m", m}, {"k", k}, {"depth", depth}};
    Json data;
    auto c = guarded_check("braid relation", [&] {
        auto rep = yang_baxter_check(e, l, m, k, depth);
        data = {{"states", rep.states}, {"weights", rep.weights}};
        return check("braid relation", rep.failure);
    });
    return report("yangbaxter", params, {c}, data);
}

Json fusion_json(const FusionImage& f) {
    Json ranks = Json::array();
    for (const auto& [M, rd] : f.ranks) ranks.push_back({{"occupation", occ_str(M)}, {"rank", rd.first}, {"dim", rd.second}});
    Json params = Json::array();
    for (const auto& c : f.params) params.push_back(c.str());
    return {{"charges", f.charges}, {"params", params}, {"ranks", ranks}, {"zero", f.zero()}, {"character", char_json(f.character)}};
}

Json fusion(const Params& p) {
    Eps e = parse_eps(p);
    std::vector<int> charges = p.charges.empty() ? std::vector<int>{1, 0} : p.charges;
    std::vector<std::string> texts = p.params;
    if (texts.empty())
        for (std::size_t i = 0; i < charges.size(); ++i) texts.push_back(std::to_string(charges.size() - i));
    if (texts.size() != charges.size()) throw UsageError("--params needs one value per charge");
    std::vector<Scalar> vals;
    for (const auto& t : texts) vals.push_back(parse_value(t));
    int degree = pick(p.degree, 4);
    Json data;
    auto c = guarded_check("fusion image", [&] {
        data = fusion_json(fusion_image(e, charges, vals, degree));
        return Json{{"name", "fusion image"}, {"pass", true}};
    });
    Json params{{"eps", e.str()}, {"r", e.r}, {"charges", charges}, {"params", texts}, {"degree", degree}};
    return report("fusion", params, {c}, data);
}

Json kr(const Params& p) {
    Eps e = parse_eps(p);
    int l = p.l.value_or(1), s = p.s, degree = pick(p.degree, 4);
    Scalar c = parse_value(p.c);
    bool predicted = kr_nonzero(e, l, s);
    Json data{{"predicted_nonzero", predicted}};
    std::vector<Json> checks;
    checks.push_back(guarded_check("image", [&] {
        FusionImage f = kr_module(e, l, s, c, degree);
        data["image"] = fusion_json(f);
        Json j = check("image vanishes exactly when the label is out of range", f.zero() != predicted,
                       {{"error", "image zero = " + std::string(f.zero() ? "true" : "false")}});
        bool even = std::all_of(e.bits.begin(), e.bits.end(), [](int b) { return b == 0; });
        if (j["pass"].get<bool>() && predicted && even) {
            CharPoly expect = osc_character(Partition(static_cast<std::size_t>(s), l), e.r, e.n(), degree);
            if (expect != f.character) {
                j["pass"] = false;
                j["witness"] = {{"error", "character differs from the irreducible label"}, {"expected", expect.str()}};
            }
        }
        return j;
    }));
    Json params{{"eps", e.str()}, {"r", e.r}, {"l", l}, {"s", s}, {"c", p.c}, {"degree", degree}};
    return report("kr", params, std::move(checks), data);
}

Json chars(const Params& p) {
    Eps e = standard_eps(p, "chars");
    int n = e.n(), r = e.r, D = pick(p.degree, 6);
    std::vector<int> ls;
    if (p.l) ls = {*p.l};
    else ls = {-2, -1, 0, 1, 2};
    std::vector<Job> jobs;
    std::vector<std::pair<int, CharPoly>> tables(ls.size(), {0, CharPoly(0, 0, 0)});
    for (std::size_t idx = 0; idx < ls.size(); ++idx)
        jobs.push_back([=, &tables] {
            int l = ls[idx];
            CharPoly census = module_census(e, l, D);
            tables[idx] = {l, census};
            CharPoly a = osc_character_lr({l}, r, n, D), b = osc_character_skew({l}, r, n, D, skew_offset({l}, D));
            Json j = check("two character formulas and census, l=" + std::to_string(l), a == census && b == census,
                           {{"l", l}, {"lr_matches", a == census}, {"skew_matches", b == census}});
            j["states"] = census.terms().size();
            return j;
        });
    for (int len : {n, n + 1})
        jobs.push_back([=] {
            CharPoly c = osc_character(Partition(static_cast<std::size_t>(len), 0), r, n, D).shifted_t(-len);
            return check("normalized character stabilizes, length " + std::to_string(len), c == cauchy_kernel(n - r, r, D),
                         {{"length", len}});
        });
    jobs.push_back([] {
        auto w = eps_highest_weight({4, 2, 2, 0, 0, -1, -3}, Eps::standard(8, 3));
        bool ok = w && to_classical_weight(*w) == Weight(-7, {0, -1, -3, 4, 2, 2, 0, 0});
        Json j = check("filling rule worked example", ok);
        if (w) j["weight"] = weight_json(to_classical_weight(*w));
        return j;
    });
    auto checks = run_jobs(jobs, p.threads);
    if (!p.csv.empty()) {
        std::ofstream out(p.csv);
        if (!out) throw UsageError("cannot write " + p.csv);
        out << "l,t,x,y,coeff\n";
        for (const auto& [l, c] : tables)
            for (const auto& [mono, coeff] : c.terms()) {
                std::string xs, ys;
                for (int i = 0; i < c.nx(); ++i) xs += (i ? " " : "") + std::to_string(mono[1 + static_cast<std::size_t>(i)]);
                for (int i = 0; i < c.ny(); ++i) ys += (i ? " " : "") + std::to_string(mono[1 + static_cast<std::size_t>(c.nx() + i)]);
                out << l << ',' << mono[0] << ',' << xs << ',' << ys << ',' << coeff.get_str() << '\n';
            }
    }
    Json params{{"eps", e.str()}, {"r", r}, {"degree", D}, {"l", ls}};
    return report("chars", params, checks);
}

Json truncate(const Params& p) {
    std::vector<EpsEmbedding> embs;
    try {
        if (p.remove.empty()) embs = {eps_ab_zeros(2, 2), eps_ab_ones(2, 2)};
        else embs = {EpsEmbedding(parse_eps(p), p.remove)};
    } catch (const Error& ex) {
        throw UsageError(ex.what());
    }
    int degree = pick(p.degree, 4), depth = pick(p.depth, 3), T = p.components;
    std::vector<std::pair<int, int>> pairs;
    if (p.l || p.m) pairs = {{p.l.value_or(0), p.m.value_or(0)}};
    else pairs = {{1, 0}, {0, 0}};
    std::vector<Job> jobs;
    for (const auto& emb : embs) {
        std::string tag = " [" + emb.str() + "]";
        jobs.push_back([=] {
            for (int l = -2; l <= 2; ++l) {
                auto r = compare_actions(emb, {l}, degree);
                if (r.failure) return check("hatted actions on single modules" + tag, r.failure);
            }
            for (auto ch : std::vector<std::vector<int>>{{1, 0}, {0, 0}, {-1, 1}}) {
                auto r = compare_actions(emb, ch, std::min(degree, 3));
                if (r.failure) return check("hatted actions on single modules" + tag, r.failure);
            }
            return check("hatted actions agree with the child" + tag, std::optional<RelationFailure>{});
        });
        jobs.push_back([=] { return check("child relations for hatted generators" + tag, check_reduced_relations(emb, 3, 2)); });
        jobs.push_back([=] {
            for (int l = -1; l <= 1; ++l)
                for (int m = -1; m <= 1; ++m)
                    if (auto f = check_monoidal(emb, l, m, degree)) return check("monoidal counts" + tag, f);
            return check("monoidal counts" + tag, std::optional<RelationFailure>{});
        });
        for (auto [l, m] : pairs)
            jobs.push_back([=] {
                std::string name = "spectral ratios l=" + std::to_string(l) + " m=" + std::to_string(m) + tag;
                return guarded_check(name, [&] {
                    auto rep = compare_spectral(emb, l, m, T, depth, depth);
                    Json rows = Json::array();
                    for (const auto& row : rep.rows) {
                        Json jr{{"t", row.t}, {"survives", row.survives}, {"compared", row.compared}, {"equal", row.equal}};
                        if (row.compared) {
                            jr["parent_ratio"] = row.parent_ratio.str();
                            jr["child_ratio"] = row.child_ratio.str();
                        }
                        rows.push_back(jr);
                    }
                    Json j{{"name", name}, {"pass", rep.ok()}, {"rows", rows}};
                    if (!rep.ok()) j["witness"] = rep.square ? witness(*rep.square) : Json{{"error", "ratios differ"}};
                    return j;
                });
            });
        jobs.push_back([=] {
            Json bad = Json::array();
            for (auto [l, m] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {1, 1}, {-1, 0}}) {
                Decomposition d(emb.parent(), l, m);
                for (int t = 0; t <= 2; ++t) {
                    bool hw = eps_highest_weight(component_label(l, m, t), emb.child()).has_value();
                    if (component_survives(d, emb, t, 5) != hw) bad.push_back({{"l", l}, {"m", m}, {"t", t}});
                }
            }
            return check("surviving components match child highest weights" + tag, bad.empty(), {{"mismatches", bad}});
        });
    }
    Json emb_list = Json::array();
    for (const auto& emb : embs) emb_list.push_back(emb.str());
    Json params{{"embeddings", emb_list}, {"degree", degree}, {"depth", depth}, {"components", T}};
    return report("truncate", params, run_jobs(jobs, p.threads));
}

Json drinfeld(const Params& p) {
    Eps e = standard_eps(p, "drinfeld");
    int n = e.n(), r = e.r, K = p.order;
    std::vector<int> ls;
    if (p.l) ls = {*p.l};
    else ls = {-2, -1, 0, 1, 2};
    std::vector<Job> jobs;
    for (int l : ls)
        jobs.push_back([=] {
            Json nodes = Json::array(), bad = Json::array();
            for (int i = 1; i < n; ++i) {
                auto s = psi_closed_form(n, r, l, i, K);
                Scalar a0 = psi0_from_algebra(l, i, n, r), a1 = psi1_from_algebra(l, i, n, r);
                Json coeffs = Json::array();
                for (const auto& c : s.coeffs) coeffs.push_back(c.str());
                bool ok = a0 == s.coeffs[0] && (K < 1 || a1 == s.coeffs[1]);
                nodes.push_back({{"i", i}, {"o", s.o_sign}, {"series", coeffs}, {"psi1_algebra", a1.str()}, {"match", ok}});
                if (!ok) bad.push_back(i);
            }
            Json j = check("first order from the algebra, l=" + std::to_string(l), bad.empty(), {{"l", l}, {"nodes", bad}});
            j["nodes"] = nodes;
            return j;
        });
    for (int l : ls)
        jobs.push_back([=] {
            auto rep = check_annihilation(l, n, r);
            Json j = check("highest vector annihilation, l=" + std::to_string(l), rep.failure);
            j["shapes"] = rep.shapes;
            return j;
        });
    Json params{{"eps", e.str()}, {"r", r}, {"l", ls}, {"order", K}, {"convention", "o(i) = (-1)^i"}};
    return report("drinfeld", params, run_jobs(jobs, p.threads));
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"relations", "singular", "rmatrix", "yangbaxter", "fusion",
                                                "kr",        "chars",    "truncate", "drinfeld",  "all"};
    return names;
}

Json run_suite(const std::string& name, const Params& p) {
    if (name == "relations") return relations(p);
    if (name == "singular") return singular(p);
    if (name == "rmatrix") return rmatrix(p);
    if (name == "yangbaxter") return yangbaxter(p);
    if (name == "fusion") return fusion(p);
    if (name == "kr") return kr(p);
    if (name == "chars") return chars(p);
    if (name == "truncate") return truncate(p);
    if (name == "drinfeld") return drinfeld(p);
    if (name == "all") {
        Json reports = Json::array();
        bool pass = true;
        for (const auto& s : suite_names()) {
            if (s == "all") continue;
            Json rep;
            try {
                rep = run_suite(s, p);
            } catch (const UsageError& ex) {
                reports.push_back({{"suite", s}, {"skipped", ex.what()}});
                continue;
            }
            pass = pass && rep["pass"].get<bool>();
            reports.push_back(std::move(rep));
        }
        return Json{{"schema", kSchema}, {"suite", "all"}, {"pass", pass}, {"reports", reports}};
    }
    throw UsageError("unknown subcommand " + name);
}

}  // namespace qosc::cli
